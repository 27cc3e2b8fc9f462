//! Minimization of locally Lipschitz functions by descent on ε-ball gradients.
//!
//! At each iterate `x_k` the solver approximates the norm-minimal element of
//! the convex hull of all subgradients over a ball of radius `ε` around `x_k`.
//! The approximation is grown from single subgradients supplied by an
//! [`Oracle`]: cutting subgradients are located by bisection along the trial
//! segment ([`segsearch`]), the bundle is reduced to its min-norm point
//! ([`minnorm`]), and the loop stops once either the norm falls below a
//! radius-dependent threshold (a *null step*, which shrinks `ε`) or an
//! Armijo-type sufficient-descent test passes ([`bundle`]). The outer loop
//! ([`solver`]) then takes a step of length at least `ε` along the direction.
//!
//! Norms may change per iteration through a symmetric positive-definite
//! [`Metric`]; the identity metric gives the plain Euclidean method.
//!
//! ```
//! use epsdescent::{benchmarks, solve, Status};
//!
//! let bench = benchmarks::make_wolfe();
//! let (_, x0) = &bench.starts[0];
//! let mut config = bench.config.clone();
//! config.params.f_target = Some(-8.0);
//! config.params.gap_tol = 1e-8;
//! let trace = solve(bench.oracle.as_ref(), x0, &config.validate().unwrap(), None).unwrap();
//! assert_eq!(trace.status, Status::ConvergedTarget);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod benchmarks;
pub mod bundle;
pub mod control;
mod error;
pub mod metric;
pub mod minnorm;
pub mod oracle;
pub mod params;
pub mod segsearch;
pub mod solver;
pub mod trace;

pub use control::{Controls, GFamily, T1Family, T2Family};
pub use error::{Error, Result};
pub use metric::Metric;
pub use oracle::{FnOracle, Oracle, Point};
pub use params::{Config, LineSearchPolicy, Params, RetentionPolicy, ValidConfig, Variant};
pub use solver::solve;
pub use trace::{Branch, Diagnostics, IterationRecord, Status, Trace};
