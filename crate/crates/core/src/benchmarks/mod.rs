//! Benchmark problems with closed-form values and subgradient selections,
//! their reference configurations and published results of this method.
//!
//! Where several subgradients are possible, selections are deterministic:
//! `sign(0) = +1` at every kink, and max-type functions use the smallest
//! index attaining the maximum (ties between `h` and `-h` go to `+h`).

mod chebyshev;
mod nesterov;
mod qmax;
mod smooth;
mod wolfe;

pub use chebyshev::{cheb_grid, make_cheb_exp, ChebExp, ChebMode, CHEB_GRID_SIZE};
pub use nesterov::{make_nesterov, Nesterov, NesterovKind};
pub use qmax::{make_qmax, QMax};
pub use smooth::{make_hilbert, make_regression, make_rosenbrock, Hilbert, Regression, Rosenbrock, REGRESSION_ETA};
pub use wolfe::{make_wolfe, Wolfe};

use nalgebra::DMatrix;

use crate::{solve, Config, Error, LineSearchPolicy, Oracle, Point, Result, Trace, ValidConfig, Variant};

/// Golden-section steps used by every reference configuration.
pub const REFERENCE_REFINE_STEPS: usize = 40;

/// Variant A defaults with the refined first-non-decrease line search.
pub fn reference_config(eps0: f64) -> Config {
    let mut cfg = Config::new(Variant::A, eps0);
    cfg.params.line_search = LineSearchPolicy::FirstNonDecrease;
    cfg.params.refine_steps = REFERENCE_REFINE_STEPS;
    cfg
}

/// Known (or best reported) optimum of a benchmark.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    pub minimizer: Option<Point>,
    pub value: f64,
    /// `false` when `value` and `minimizer` are rounded published figures.
    pub exact: bool,
}

/// One published result row for this method.
#[derive(Debug, Clone, PartialEq)]
pub struct PublishedRow {
    pub label: &'static str,
    pub variant: Variant,
    pub iterations: Option<u64>,
    pub gradients: Option<u64>,
    pub value: f64,
}

pub struct Benchmark {
    pub name: String,
    pub dim: usize,
    pub oracle: Box<dyn Oracle>,
    /// Labelled starting points; the first is the default.
    pub starts: Vec<(String, Point)>,
    /// Reference configuration for variant A.
    pub config: Config,
    pub optimum: Option<Optimum>,
    pub published: Vec<PublishedRow>,
}

impl Benchmark {
    pub fn has_hessian(&self) -> bool {
        self.oracle.hessian(&self.starts[0].1).is_some()
    }

    pub fn start(&self, label: &str) -> Option<&Point> {
        self.starts.iter().find(|(l, _)| l == label).map(|(_, p)| p)
    }

    /// Runs the solver from the named start. Variant B uses the exact Hessian
    /// as metric candidate, or the identity where none is defined.
    pub fn solve(&self, start: &str, config: &ValidConfig) -> Result<Trace> {
        let x0 = self.start(start).ok_or_else(|| Error::Domain(format!("unknown start {start:?}")))?;
        let oracle = self.oracle.as_ref();
        let n = self.dim;
        let hessian = |x: &Point| oracle.hessian(x).unwrap_or_else(|| DMatrix::identity(n, n));
        let provider: Option<crate::solver::MetricProvider<'_>> = match config.params().variant {
            Variant::A => None,
            Variant::B => Some(&hessian),
        };
        solve(oracle, x0, config, provider)
    }

    /// Reference configuration for `variant`. Variant B keeps the initial
    /// radius and line-search policy of variant A and switches to the
    /// variable-metric control defaults.
    pub fn config_for(&self, variant: Variant) -> Config {
        match variant {
            Variant::A => self.config.clone(),
            Variant::B => {
                let mut cfg = Config::new(Variant::B, self.config.params.eps0);
                cfg.params.line_search = self.config.params.line_search;
                cfg.params.refine_steps = self.config.params.refine_steps;
                cfg
            }
        }
    }
}

/// `+1` for non-negative arguments, `-1` otherwise.
pub(crate) fn sign(v: f64) -> f64 {
    if v >= 0.0 {
        1.0
    } else {
        -1.0
    }
}
