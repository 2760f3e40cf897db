use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::kernel::{gamma, FractionalOrder};
use crate::solver::{ProblemSpec, SpaceFn};
use crate::Result;

/// Diffusivity `p` and reaction slope `s` (with `a(x) = -s x`) used for order `α`:
/// `1/500` for α above 0.7, `1/100` otherwise.
pub fn default_coefficients(alpha: f64) -> (f64, f64) {
    if alpha > 0.7 {
        (1.0 / 500.0, 1.0 / 500.0)
    } else {
        (1.0 / 100.0, 1.0 / 100.0)
    }
}

#[derive(Debug, Clone, Copy)]
struct Term {
    coef: f64,
    order: f64,
    shift: f64,
    inv_gamma: f64,
    caputo_order: f64,
    caputo_inv_gamma: f64,
}

/// Time factor `g(t) = 1 + Σ_{l=1}^{K} b^l ω_{lα+1}(t - (l-1)τ)`, each term
/// switched on at its own delay multiple, with `g = 1` on `[-τ, 0]`.
///
/// It solves `D^α g(t) = b g(t - τ)`, so `u = g(t) sin(πx)` solves the delay
/// equation with source `f = (pπ² - a(x)) g(t) sin(πx)`.
#[derive(Debug, Clone)]
pub struct TimeFactor {
    alpha: f64,
    terms: Vec<Term>,
}

impl TimeFactor {
    pub fn new(alpha: FractionalOrder, b: f64, tau: f64, intervals: usize) -> Result<Self> {
        let alpha = alpha.get();
        let terms = (1..=intervals)
            .map(|l| {
                let order = l as f64 * alpha + 1.0;
                let caputo_order = (l - 1) as f64 * alpha + 1.0;
                Ok(Term {
                    coef: libm::pow(b, l as f64),
                    order,
                    shift: (l - 1) as f64 * tau,
                    inv_gamma: 1.0 / gamma(order)?,
                    caputo_order,
                    caputo_inv_gamma: 1.0 / gamma(caputo_order)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { alpha, terms })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn value(&self, t: f64) -> f64 {
        let mut g = 1.0;
        for term in &self.terms {
            let s = t - term.shift;
            if s > 0.0 {
                g += term.coef * libm::pow(s, term.order - 1.0) * term.inv_gamma;
            }
        }
        g
    }

    /// Caputo derivative of `g` at `t > 0`, using `D^α ω_{β+1} = ω_{β-α+1}`.
    pub fn caputo(&self, t: f64) -> f64 {
        let mut d = 0.0;
        for term in &self.terms {
            let s = t - term.shift;
            if s > 0.0 {
                d += term.coef * libm::pow(s, term.caputo_order - 1.0) * term.caputo_inv_gamma;
            }
        }
        d
    }
}

/// The manufactured problem with exact solution `u(x, t) = g(t) sin(πx)` on `(0, 1)`.
#[derive(Clone)]
pub struct ManufacturedCase {
    alpha: FractionalOrder,
    factor: Arc<TimeFactor>,
    reaction: SpaceFn,
    problem: ProblemSpec,
}

impl ManufacturedCase {
    /// `b = -1`, `τ = 1`, `K = 3`, `L = 1`.
    pub fn new(
        alpha: FractionalOrder,
        p: f64,
        a: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        Self::with_parameters(alpha, p, a, -1.0, 1.0, 3)
    }

    /// Defaults for `p` and `a` from [`default_coefficients`].
    pub fn with_default_coefficients(alpha: FractionalOrder) -> Result<Self> {
        let (p, slope) = default_coefficients(alpha.get());
        Self::new(alpha, p, move |x| -slope * x)
    }

    /// General coupling `b`, delay `τ` and horizon `K`.
    pub fn with_parameters(
        alpha: FractionalOrder,
        p: f64,
        a: impl Fn(f64) -> f64 + Send + Sync + 'static,
        b: f64,
        tau: f64,
        intervals: usize,
    ) -> Result<Self> {
        let factor = Arc::new(TimeFactor::new(alpha, b, tau, intervals)?);
        let reaction: SpaceFn = Arc::new(a);
        let source = {
            let factor = Arc::clone(&factor);
            let a = Arc::clone(&reaction);
            move |x: f64, t: f64| (p * PI * PI - a(x)) * factor.value(t) * libm::sin(PI * x)
        };
        let a = Arc::clone(&reaction);
        let problem = ProblemSpec::new(1.0, p, b, tau, intervals)?
            .with_reaction(move |x| a(x))
            .with_history(|x, _| libm::sin(PI * x))
            .with_source(source);
        Ok(Self {
            alpha,
            factor,
            reaction,
            problem,
        })
    }

    pub fn alpha(&self) -> FractionalOrder {
        self.alpha
    }

    pub fn problem(&self) -> &ProblemSpec {
        &self.problem
    }

    pub fn time_factor(&self) -> &TimeFactor {
        &self.factor
    }

    /// `u(x, t) = g(t) sin(πx)`.
    pub fn exact(&self, x: f64, t: f64) -> f64 {
        self.factor.value(t) * libm::sin(PI * x)
    }

    /// Caputo derivative in time of the time factor.
    pub fn exact_caputo_time_factor(&self, t: f64) -> f64 {
        self.factor.caputo(t)
    }

    /// `D^α u - p u_xx - a u - b u(·, t-τ) - f` at `(x, t)`, `t > 0`.
    pub fn pde_residual(&self, x: f64, t: f64) -> f64 {
        let pr = &self.problem;
        let s = libm::sin(PI * x);
        let u = self.exact(x, t);
        let caputo = self.factor.caputo(t) * s;
        let u_xx = -PI * PI * u;
        let delayed = self.exact(x, t - pr.tau);
        caputo - pr.p * u_xx - (self.reaction)(x) * u - pr.b * delayed - (pr.source)(x, t)
    }
}

impl fmt::Debug for ManufacturedCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ManufacturedCase")
            .field("alpha", &self.alpha)
            .field("problem", &self.problem)
            .finish_non_exhaustive()
    }
}
