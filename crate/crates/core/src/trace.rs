use serde::Serialize;

use crate::bundle::InnerChecks;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    ConvergedRadius,
    ConvergedTarget,
    BudgetExhausted,
    SegmentSearchFailed,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::ConvergedRadius => "converged-radius",
            Status::ConvergedTarget => "converged-target",
            Status::BudgetExhausted => "budget-exhausted",
            Status::SegmentSearchFailed => "segment-search-failed",
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one inner approximation at radius `eps_{k,i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Null,
    Descent,
}

/// One outer iteration. The last record of a run may end without a step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationRecord {
    pub k: u64,
    pub x: Vec<f64>,
    pub f: f64,
    /// Radius carried into this iteration.
    pub eps_k: f64,
    /// Radii tried in this iteration, in order.
    pub eps_ki: Vec<f64>,
    pub branches: Vec<Branch>,
    /// `||a_{k,i}||_k` for each radius.
    pub a_norms: Vec<f64>,
    pub inner_steps: Vec<usize>,
    pub sigma: Option<f64>,
    /// Cumulative counters at the end of the iteration.
    pub grad_evals: u64,
    pub value_evals: u64,
    /// Largest distance from `x_k` at which a cutting subgradient was taken.
    /// Can reach twice the radius.
    pub max_excursion: f64,
    pub condition_number: f64,
}

/// Post-hoc checks of the method's guarantees; every counter is zero on a
/// run that behaved as the theory says.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub inner: InnerChecks,
    /// Accepted steps with `f(x_{k+1}) >= f(x_k)`.
    pub descent_violations: u64,
    /// Accepted steps failing the Armijo test at the chosen step length.
    pub armijo_violations: u64,
    /// Null steps whose norm was not below the threshold.
    pub null_step_violations: u64,
    pub null_steps: u64,
    pub descent_steps: u64,
}

impl Diagnostics {
    pub fn total_violations(&self) -> u64 {
        self.inner.total_violations() + self.descent_violations + self.armijo_violations + self.null_step_violations
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trace {
    pub records: Vec<IterationRecord>,
    pub status: Status,
    pub final_x: Vec<f64>,
    pub final_f: f64,
    /// Number of accepted descent steps.
    pub iterations: u64,
    pub gradient_evals: u64,
    pub value_evals: u64,
    pub diagnostics: Diagnostics,
    /// Human-readable reason for an abnormal stop.
    pub failure: Option<String>,
}
