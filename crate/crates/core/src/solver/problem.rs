use alloc::sync::Arc;
use core::fmt;

use crate::{Error, Result};

pub type SpaceFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type SpaceTimeFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Coefficients and data of the delay subdiffusion problem on `(0, L)`.
///
/// New problems start with `a ≡ 0`, `φ ≡ 0` and `f ≡ 0`.
#[derive(Clone)]
pub struct ProblemSpec {
    pub length: f64,
    pub p: f64,
    pub b: f64,
    pub tau: f64,
    /// K, the horizon in delay intervals.
    pub intervals: usize,
    /// Reaction coefficient `a(x)`, expected `<= 0`.
    pub reaction: SpaceFn,
    /// History `φ(x, t)` on `[-τ, 0]`.
    pub history: SpaceTimeFn,
    /// Source `f(x, t)`.
    pub source: SpaceTimeFn,
}

impl ProblemSpec {
    pub fn new(length: f64, p: f64, b: f64, tau: f64, intervals: usize) -> Result<Self> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidProblem("domain length must be positive"));
        }
        if !(p > 0.0) || !p.is_finite() {
            return Err(Error::InvalidProblem("diffusivity p must be positive"));
        }
        if !b.is_finite() {
            return Err(Error::InvalidProblem("delay coupling b must be finite"));
        }
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(Error::InvalidProblem("delay must be positive"));
        }
        if intervals == 0 {
            return Err(Error::InvalidProblem("horizon needs at least one delay interval"));
        }
        Ok(Self {
            length,
            p,
            b,
            tau,
            intervals,
            reaction: Arc::new(|_| 0.0),
            history: Arc::new(|_, _| 0.0),
            source: Arc::new(|_, _| 0.0),
        })
    }

    pub fn with_reaction(mut self, a: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.reaction = Arc::new(a);
        self
    }

    pub fn with_history(mut self, phi: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.history = Arc::new(phi);
        self
    }

    pub fn with_source(mut self, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.source = Arc::new(f);
        self
    }
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("length", &self.length)
            .field("p", &self.p)
            .field("b", &self.b)
            .field("tau", &self.tau)
            .field("intervals", &self.intervals)
            .finish_non_exhaustive()
    }
}
