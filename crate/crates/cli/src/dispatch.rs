use std::fmt;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use l1delay_core::fem::{assemble, l2_error, SpatialMesh};
use l1delay_core::kernel::{ComplementaryKernel, FractionalOrder, L1Weights, TimeGrid};
use l1delay_core::solver::{ProblemSpec, SolverState};
use l1delay_core::studies::{error_trace, truncation_error_profile, ConvergenceTable, ErrorTrace, ManufacturedCase};
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::config::{self, ConfigError, DataKind, Format, Model, Params, StudyConfig};
use crate::output::{self, Cell, Summary, Table};

/// Largest identity residual a kernel check accepts.
pub const KERNEL_TOLERANCE: f64 = 1e-10;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or invalid configuration.
    Config(String),
    /// Solver failure, non-finite values, failed checks or unwritable output.
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<l1delay_core::Error> for CliError {
    fn from(e: l1delay_core::Error) -> Self {
        CliError::Numerical(e.to_string())
    }
}

#[derive(Debug)]
pub struct RunReport {
    pub config: StudyConfig,
    pub wall_time: Duration,
    pub output: PathBuf,
    pub summary: Summary,
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "config: {}", config::emit(&self.config))?;
        writeln!(f, "wall time: {:.3} s", self.wall_time.as_secs_f64())?;
        writeln!(f, "output: {}", self.output.display())?;
        write!(f, "summary: {}", self.summary.line())
    }
}

fn order(alpha: f64) -> Result<FractionalOrder, CliError> {
    Ok(FractionalOrder::new(alpha)?)
}

fn manufactured(alpha: f64, m: &Model) -> Result<ManufacturedCase, CliError> {
    let reaction = m.reaction;
    Ok(ManufacturedCase::with_parameters(
        order(alpha)?,
        m.p,
        move |x| reaction.eval(x),
        m.b,
        m.tau,
        m.intervals,
    )?)
}

fn warn_if_positive(m: &Model, elements: usize) -> Result<(), CliError> {
    let mesh = SpatialMesh::uniform(1.0, elements)?;
    let reaction = m.reaction;
    if let Some(a) = assemble(&mesh, m.p, |x| reaction.eval(x))?.positive_reaction {
        eprintln!("warning: reaction coefficient reaches {} > 0; the bilinear form may not be coercive", output::sci(a));
    }
    Ok(())
}

/// Run the study `config` describes and write its table to `output`.
pub fn dispatch(config: &StudyConfig, output: &Path, format: Format, pool: &ThreadPool) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let (table, summary, check) = match (&config.params, &config.model) {
        (Params::Solve { steps, elements, data }, Some(m)) => solve(config.alpha, m, *steps, *elements, *data)?,
        (Params::Temporal { h, steps }, Some(m)) => {
            let elements = (1.0 / h).round() as usize;
            let traces = traces(pool, config.alpha, m, steps.iter().map(|&n| (n, elements)))?;
            table_output(&ConvergenceTable::temporal(config.alpha, *h, &traces), "N", "E")
        }
        (Params::DelayNodes { h, steps }, Some(m)) => {
            let elements = (1.0 / h).round() as usize;
            let traces = traces(pool, config.alpha, m, steps.iter().map(|&n| (n, elements)))?;
            table_output(&ConvergenceTable::delay_nodes(config.alpha, *h, &traces), "N", "E_node")
        }
        (Params::Spatial { steps, elements }, Some(m)) => {
            let traces = traces(pool, config.alpha, m, elements.iter().map(|&e| (*steps, e)))?;
            table_output(&ConvergenceTable::spatial(config.alpha, *steps, &traces), "M", "E")
        }
        (Params::Kernel { steps, tau }, _) => kernel_check(config.alpha, *steps, *tau)?,
        (Params::Truncation { steps }, Some(m)) => truncation(config.alpha, m, *steps)?,
        (_, None) => unreachable!("validated configs carry a model for solver kinds"),
    };

    let text = output::render(format, config::to_json(config), &table, &summary);
    std::fs::write(output, text)
        .map_err(|e| CliError::Numerical(format!("cannot write {}: {e}", output.display())))?;
    let report = RunReport {
        config: config.clone(),
        wall_time: start.elapsed(),
        output: output.to_path_buf(),
        summary,
    };
    match check {
        Some(failure) => Err(CliError::Numerical(format!("{failure} ({})", report.summary.line()))),
        None => Ok(report),
    }
}

type Outcome = (Table, Summary, Option<String>);

fn traces(
    pool: &ThreadPool,
    alpha: f64,
    m: &Model,
    runs: impl Iterator<Item = (usize, usize)>,
) -> Result<Vec<ErrorTrace>, CliError> {
    let runs: Vec<(usize, usize)> = runs.collect();
    if let Some(&(_, elements)) = runs.first() {
        warn_if_positive(m, elements)?;
    }
    let case = manufactured(alpha, m)?;
    // Rows are independent; collecting keeps them in input order.
    let traces = pool.install(|| {
        runs.par_iter()
            .map(|&(n, elements)| error_trace(&case, n, elements))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(traces)
}

fn table_output(t: &ConvergenceTable, resolution: &str, error: &str) -> Outcome {
    let mut columns = vec![resolution.to_string()];
    for i in &t.columns {
        columns.push(format!("{error}_{i}"));
        columns.push(format!("rate_{i}"));
    }
    let rows = t
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![Cell::Int(r.resolution as i64)];
            for (e, rate) in r.errors.iter().zip(&r.rates) {
                row.push(Cell::Real(*e));
                row.push(rate.map_or(Cell::Missing, Cell::Real));
            }
            row
        })
        .collect();
    let summary = Summary {
        max_error: Some(t.max_error()),
        final_rate: t.rows.last().and_then(|r| r.rates.last().copied().flatten()),
        extra: Vec::new(),
    };
    (Table { columns, rows }, summary, None)
}

fn solve(alpha: f64, m: &Model, steps: usize, elements: usize, data: DataKind) -> Result<Outcome, CliError> {
    let case = manufactured(alpha, m)?;
    let problem = match data {
        DataKind::Manufactured => case.problem().clone(),
        DataKind::Zero => {
            let reaction = m.reaction;
            ProblemSpec::new(1.0, m.p, m.b, m.tau, m.intervals)?.with_reaction(move |x| reaction.eval(x))
        }
    };
    let mesh = SpatialMesh::uniform(1.0, elements)?;
    let grid = TimeGrid::new(m.tau, steps, m.intervals)?;
    let mut state = SolverState::new(order(alpha)?, problem, mesh, grid)?;
    if let Some(a) = state.assembly().positive_reaction {
        eprintln!("warning: reaction coefficient reaches {} > 0; the bilinear form may not be coercive", output::sci(a));
    }

    let mut rows = Vec::with_capacity(grid.final_step());
    let mut max_error: f64 = 0.0;
    while !state.is_finished() {
        let n = state.next_step();
        let frame = state.advance()?;
        let t = grid.time(n as i64);
        let err = match data {
            DataKind::Manufactured => l2_error(&frame, |x| case.exact(x, t), state.mesh()),
            DataKind::Zero => l2_error(&frame, |_| 0.0, state.mesh()),
        };
        max_error = max_error.max(err);
        rows.push(vec![Cell::Int(n as i64), Cell::Real(t), Cell::Real(frame.max_abs()), Cell::Real(err)]);
    }
    let columns = ["n", "t", "max_abs", "l2_error"].map(String::from).to_vec();
    let summary = Summary {
        max_error: Some(max_error),
        ..Summary::default()
    };
    Ok((Table { columns, rows }, summary, None))
}

fn kernel_check(alpha: f64, steps: usize, tau: f64) -> Result<Outcome, CliError> {
    let weights = L1Weights::new(order(alpha)?, tau / steps as f64, steps)?;
    let kernel = ComplementaryKernel::new(&weights, steps)?;
    let check = kernel.check(&weights);

    let mut partial = 0.0;
    let rows = (0..steps)
        .map(|l| {
            partial += kernel.get(l);
            vec![
                Cell::Int(l as i64),
                Cell::Real(kernel.get(l)),
                Cell::Real(kernel.identity_residual(&weights, l)),
                Cell::Real(kernel.decay_bound(l)),
                Cell::Real(partial),
                Cell::Real(kernel.sum_bound(l + 1)),
            ]
        })
        .collect();
    let columns = ["l", "P_l", "identity_residual", "decay_bound", "partial_sum", "sum_bound"]
        .map(String::from)
        .to_vec();
    let summary = Summary {
        extra: vec![
            ("max_identity_residual".into(), Cell::Real(check.max_identity_residual)),
            ("decay_violations".into(), Cell::Int(check.decay_violations as i64)),
            ("sum_violations".into(), Cell::Int(check.sum_violations as i64)),
        ],
        ..Summary::default()
    };
    let failed = !(check.max_identity_residual <= KERNEL_TOLERANCE)
        || check.decay_violations > 0
        || check.sum_violations > 0;
    let failure = failed.then(|| "kernel check failed".to_string());
    Ok((Table { columns, rows }, summary, failure))
}

fn truncation(alpha: f64, m: &Model, steps: usize) -> Result<Outcome, CliError> {
    let case = manufactured(alpha, m)?;
    let grid = TimeGrid::new(m.tau, steps, m.intervals)?;
    let profile = truncation_error_profile(&case, grid)?;
    let rows = profile
        .entries
        .iter()
        .map(|e| {
            vec![
                Cell::Int(e.n as i64),
                Cell::Int(e.interval as i64),
                Cell::Real(e.time),
                Cell::Real(e.residual),
                Cell::Real(e.bound),
                Cell::Real(e.ratio),
            ]
        })
        .collect();
    let columns = ["n", "interval", "t", "residual", "bound", "ratio"].map(String::from).to_vec();
    let mut extra = vec![("fitted_constant".to_string(), Cell::Real(profile.fitted_constant))];
    for (i, c) in profile.interval_constants.iter().enumerate() {
        extra.push((format!("constant_{}", i + 1), Cell::Real(*c)));
    }
    if steps >= 20 {
        extra.push(("slope_1".into(), Cell::Real(profile.decay_slope(10, steps))));
    }
    let summary = Summary {
        extra,
        ..Summary::default()
    };
    Ok((Table { columns, rows }, summary, None))
}
