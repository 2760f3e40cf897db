//! Study configuration: a single JSON document, validated against the
//! subcommand it was given to.

use std::fmt;

use clap::ValueEnum;
use l1delay_core::studies::default_coefficients;
use serde::{Deserialize, Serialize};

/// Steps per delay and mesh sizes of the full spatial reproduction run.
pub const FULL_SPATIAL_STEPS: usize = 30_000;
pub const FULL_SPATIAL_ELEMENTS: [usize; 4] = [8, 16, 32, 64];

pub const DEFAULT_SPATIAL_STEPS: usize = 10_000;
pub const DEFAULT_SPATIAL_ELEMENTS: [usize; 3] = [8, 16, 32];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Solve,
    StudyTime,
    StudySpace,
    StudyDelayNodes,
    CheckKernel,
    CheckTruncation,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Solve => "solve",
            Kind::StudyTime => "study-time",
            Kind::StudySpace => "study-space",
            Kind::StudyDelayNodes => "study-delay-nodes",
            Kind::CheckKernel => "check-kernel",
            Kind::CheckTruncation => "check-truncation",
        }
    }

    /// Keys accepted besides `kind`, `alpha`, `output` and `format`.
    fn allowed(self) -> &'static [&'static str] {
        match self {
            Kind::Solve => &["p", "b", "tau", "K", "a", "N", "M", "h", "data"],
            Kind::StudyTime | Kind::StudyDelayNodes => &["p", "b", "tau", "K", "a", "N", "h"],
            Kind::StudySpace => &["p", "b", "tau", "K", "a", "N", "M", "full_reproduction"],
            Kind::CheckKernel => &["N", "tau"],
            // Only the time factor enters the truncation error.
            Kind::CheckTruncation => &["b", "tau", "K", "N"],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Reaction coefficient `a(x) = -scale * x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ReactionSpec {
    LinearScaled { scale: f64 },
}

impl ReactionSpec {
    pub fn eval(self, x: f64) -> f64 {
        match self {
            ReactionSpec::LinearScaled { scale } => -scale * x,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DataKind {
    /// `u = g(t) sin(πx)` with the matching source and history.
    Manufactured,
    /// Zero history and zero source.
    Zero,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Params {
    Solve { steps: usize, elements: usize, data: DataKind },
    Temporal { h: f64, steps: Vec<usize> },
    DelayNodes { h: f64, steps: Vec<usize> },
    Spatial { steps: usize, elements: Vec<usize> },
    Kernel { steps: usize, tau: f64 },
    Truncation { steps: usize },
}

/// Model coefficients shared by the solver-backed kinds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Model {
    pub p: f64,
    pub b: f64,
    pub tau: f64,
    pub intervals: usize,
    pub reaction: ReactionSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig {
    pub kind: Kind,
    pub alpha: f64,
    /// Absent for `check-kernel`.
    pub model: Option<Model>,
    pub params: Params,
    pub output: Option<String>,
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(usize),
    Many(Vec<usize>),
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<Kind>,
    alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tau: Option<f64>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    intervals: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<ReactionSpec>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    steps: Option<OneOrMany>,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    elements: Option<OneOrMany>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    data: Option<DataKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    full_reproduction: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    output: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    format: Option<Format>,
}

impl RawConfig {
    fn present(&self) -> Vec<&'static str> {
        let mut keys = Vec::new();
        let mut mark = |set: bool, key| {
            if set {
                keys.push(key)
            }
        };
        mark(self.p.is_some(), "p");
        mark(self.b.is_some(), "b");
        mark(self.tau.is_some(), "tau");
        mark(self.intervals.is_some(), "K");
        mark(self.a.is_some(), "a");
        mark(self.steps.is_some(), "N");
        mark(self.elements.is_some(), "M");
        mark(self.h.is_some(), "h");
        mark(self.data.is_some(), "data");
        mark(self.full_reproduction.is_some(), "full_reproduction");
        keys
    }
}

/// A rejected configuration, with the line it points at when known.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "config line {line}: {}", self.message),
            None => write!(f, "config: {}", self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

struct Validator<'a> {
    text: &'a str,
}

impl Validator<'_> {
    /// Line of the first occurrence of `"key"`, else line 1.
    fn line_of(&self, key: &str) -> usize {
        let quoted = format!("\"{key}\"");
        self.text
            .lines()
            .position(|l| l.contains(&quoted))
            .map_or(1, |i| i + 1)
    }

    fn fail<T>(&self, key: &str, message: impl Into<String>) -> Result<T, ConfigError> {
        Err(ConfigError {
            line: Some(self.line_of(key)),
            message: message.into(),
        })
    }

    fn positive(&self, key: &str, v: f64) -> Result<f64, ConfigError> {
        if v > 0.0 && v.is_finite() {
            Ok(v)
        } else {
            self.fail(key, format!("`{key}` must be positive and finite, got {v}"))
        }
    }

    fn single(&self, key: &str, v: Option<OneOrMany>) -> Result<Option<usize>, ConfigError> {
        match v {
            None => Ok(None),
            Some(OneOrMany::One(0)) => self.fail(key, format!("`{key}` must be at least 1")),
            Some(OneOrMany::One(n)) => Ok(Some(n)),
            Some(OneOrMany::Many(_)) => self.fail(key, format!("`{key}` must be a single integer here")),
        }
    }

    fn list(&self, key: &str, v: Option<OneOrMany>) -> Result<Option<Vec<usize>>, ConfigError> {
        let list = match v {
            None => return Ok(None),
            Some(OneOrMany::One(n)) => vec![n],
            Some(OneOrMany::Many(list)) => list,
        };
        if list.is_empty() {
            return self.fail(key, format!("`{key}` list is empty"));
        }
        if list[0] == 0 || list.windows(2).any(|w| w[1] != 2 * w[0]) {
            return self.fail(
                key,
                format!("`{key}` entries must be positive and each must double the previous one"),
            );
        }
        Ok(Some(list))
    }

    fn required<T>(&self, key: &str, v: Option<T>, kind: Kind) -> Result<T, ConfigError> {
        match v {
            Some(v) => Ok(v),
            None => Err(ConfigError {
                line: Some(1),
                message: format!("`{key}` is required for {kind}"),
            }),
        }
    }

    fn mesh_elements(&self, h: f64) -> Result<usize, ConfigError> {
        let m = (1.0 / h).round();
        if !(m >= 2.0) || (m * h - 1.0).abs() > 1e-9 {
            return self.fail("h", format!("`h` = {h} must divide the unit interval into at least 2 elements"));
        }
        Ok(m as usize)
    }
}

fn syntax_error(e: serde_json::Error) -> ConfigError {
    let text = e.to_string();
    let message = match text.rsplit_once(" at line ") {
        Some((head, _)) => head.to_string(),
        None => text,
    };
    ConfigError {
        line: (e.line() > 0).then_some(e.line()),
        message,
    }
}

/// Parse and validate `text` for the subcommand `expected`. The document's own
/// `kind` is optional but must agree when present.
pub fn parse_config(text: &str, expected: Kind) -> Result<StudyConfig, ConfigError> {
    let raw: RawConfig = serde_json::from_str(text).map_err(syntax_error)?;
    let v = Validator { text };
    let kind = expected;
    if let Some(k) = raw.kind {
        if k != expected {
            return v.fail("kind", format!("document kind `{k}` does not match subcommand `{expected}`"));
        }
    }
    for key in raw.present() {
        if !kind.allowed().contains(&key) {
            return v.fail(key, format!("`{key}` does not apply to {kind}"));
        }
    }

    let alpha = raw.alpha;
    if !(alpha > 0.0 && alpha < 1.0) {
        return v.fail("alpha", format!("`alpha` = {alpha} must lie strictly between 0 and 1"));
    }

    let (default_p, default_scale) = default_coefficients(alpha);
    let b = raw.b.unwrap_or(-1.0);
    if !b.is_finite() {
        return v.fail("b", "`b` must be finite");
    }
    let tau = v.positive("tau", raw.tau.unwrap_or(1.0))?;
    let intervals = raw.intervals.unwrap_or(3);
    if intervals == 0 {
        return v.fail("K", "`K` must be at least 1");
    }
    let reaction = raw.a.unwrap_or(ReactionSpec::LinearScaled { scale: default_scale });
    let ReactionSpec::LinearScaled { scale } = reaction;
    if !scale.is_finite() {
        return v.fail("a", "`a.scale` must be finite");
    }
    let model = Model {
        p: v.positive("p", raw.p.unwrap_or(default_p))?,
        b,
        tau,
        intervals,
        reaction,
    };

    let (params, model) = match kind {
        Kind::Solve => {
            let steps = v.required("N", v.single("N", raw.steps)?, kind)?;
            let elements = match (v.single("M", raw.elements)?, raw.h) {
                (Some(_), Some(_)) => return v.fail("h", "give either `M` or `h`, not both"),
                (Some(m), None) if m < 2 => return v.fail("M", "`M` must be at least 2"),
                (Some(m), None) => m,
                (None, Some(h)) => v.mesh_elements(v.positive("h", h)?)?,
                (None, None) => return v.required("M", None, kind),
            };
            let data = raw.data.unwrap_or(DataKind::Manufactured);
            (Params::Solve { steps, elements, data }, Some(model))
        }
        Kind::StudyTime | Kind::StudyDelayNodes => {
            let h = v.positive("h", v.required("h", raw.h, kind)?)?;
            v.mesh_elements(h)?;
            let steps = v.required("N", v.list("N", raw.steps)?, kind)?;
            let params = if kind == Kind::StudyTime {
                Params::Temporal { h, steps }
            } else {
                Params::DelayNodes { h, steps }
            };
            (params, Some(model))
        }
        Kind::StudySpace => {
            let steps = v.single("N", raw.steps)?;
            let elements = v.list("M", raw.elements)?;
            if let Some(elements) = &elements {
                if elements[0] < 2 {
                    return v.fail("M", "`M` entries must be at least 2");
                }
            }
            let params = if raw.full_reproduction == Some(true) {
                if steps.is_some() || elements.is_some() {
                    return v.fail("full_reproduction", "`full_reproduction` fixes `N` and `M`; drop them");
                }
                Params::Spatial {
                    steps: FULL_SPATIAL_STEPS,
                    elements: FULL_SPATIAL_ELEMENTS.to_vec(),
                }
            } else {
                Params::Spatial {
                    steps: steps.unwrap_or(DEFAULT_SPATIAL_STEPS),
                    elements: elements.unwrap_or_else(|| DEFAULT_SPATIAL_ELEMENTS.to_vec()),
                }
            };
            (params, Some(model))
        }
        Kind::CheckKernel => {
            let steps = v.required("N", v.single("N", raw.steps)?, kind)?;
            (Params::Kernel { steps, tau }, None)
        }
        Kind::CheckTruncation => {
            let steps = v.required("N", v.single("N", raw.steps)?, kind)?;
            (Params::Truncation { steps }, Some(model))
        }
    };

    Ok(StudyConfig {
        kind,
        alpha,
        model,
        params,
        output: raw.output,
        format: raw.format,
    })
}

/// Serialize with every default spelled out; `parse_config` reads it back unchanged.
pub fn emit(config: &StudyConfig) -> String {
    serde_json::to_string_pretty(&to_raw(config)).expect("config serializes")
}

pub fn to_json(config: &StudyConfig) -> serde_json::Value {
    serde_json::to_value(to_raw(config)).expect("config serializes")
}

fn to_raw(config: &StudyConfig) -> RawConfig {
    let mut raw = RawConfig {
        kind: Some(config.kind),
        alpha: config.alpha,
        output: config.output.clone(),
        format: config.format,
        ..RawConfig::default()
    };
    if let Some(m) = config.model {
        let allowed = config.kind.allowed();
        let keep = |key: &str| allowed.contains(&key);
        raw.p = keep("p").then_some(m.p);
        raw.b = Some(m.b);
        raw.tau = Some(m.tau);
        raw.intervals = Some(m.intervals);
        raw.a = keep("a").then_some(m.reaction);
    }
    match &config.params {
        Params::Solve { steps, elements, data } => {
            raw.steps = Some(OneOrMany::One(*steps));
            raw.elements = Some(OneOrMany::One(*elements));
            raw.data = Some(*data);
        }
        Params::Temporal { h, steps } | Params::DelayNodes { h, steps } => {
            raw.h = Some(*h);
            raw.steps = Some(OneOrMany::Many(steps.clone()));
        }
        Params::Spatial { steps, elements } => {
            raw.steps = Some(OneOrMany::One(*steps));
            raw.elements = Some(OneOrMany::Many(elements.clone()));
        }
        Params::Kernel { steps, tau } => {
            raw.steps = Some(OneOrMany::One(*steps));
            raw.tau = Some(*tau);
        }
        Params::Truncation { steps } => raw.steps = Some(OneOrMany::One(*steps)),
    }
    raw
}
