use serde::{Deserialize, Serialize};

use crate::{Controls, Error, Result};

/// Fixed Euclidean norm (`A`) or a per-iteration SPD metric (`B`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineSearchPolicy {
    /// Expand the step geometrically while the Armijo test keeps passing.
    ArmijoExpand,
    /// Expand the step until the function value stops decreasing.
    FirstNonDecrease,
}

/// Which elements of the inner history are kept in the bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RetentionPolicy {
    /// `{a'_0, a'_j} ∪ {b'_l : j-m <= l <= j}`
    KeepCuts,
    /// `{a'_0} ∪ {a'_l : j-m <= l <= j} ∪ {b'_j}`
    KeepMinNorms,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Params {
    /// Armijo factor.
    pub delta: f64,
    /// Cutting factor, strictly between `delta` and 1.
    pub delta_prime: f64,
    /// Initial radius.
    pub eps0: f64,
    pub bundle_m: usize,
    pub retention: RetentionPolicy,
    pub max_iterations: u64,
    pub max_gradient_evals: u64,
    pub max_bisections: usize,
    pub max_inner_steps: usize,
    /// Stop once a null step happens at a radius at or below this value.
    pub eps_tol: f64,
    pub f_target: Option<f64>,
    pub gap_tol: f64,
    pub line_search: LineSearchPolicy,
    pub sigma_growth: f64,
    pub max_expansions: usize,
    /// Golden-section steps that refine the bracket found by
    /// [`LineSearchPolicy::FirstNonDecrease`]; zero keeps the raw candidate.
    pub refine_steps: usize,
    pub variant: Variant,
    /// Use the norm of the previous iteration's subgradient as the first
    /// argument of `G` instead of the current one.
    pub lagged_radius: bool,
    /// Relative eigenvalue floor for variant B metrics:
    /// eigenvalues are clamped to `metric_floor * (1 + ||H||_inf)`.
    pub metric_floor: f64,
    /// Tolerance passed to the min-norm solver.
    pub minnorm_tol: f64,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            delta: 0.3,
            delta_prime: 0.35,
            eps0: 1.0,
            bundle_m: 10,
            retention: RetentionPolicy::KeepCuts,
            max_iterations: 1_000_000,
            max_gradient_evals: 10_000_000,
            max_bisections: 60,
            max_inner_steps: 500,
            eps_tol: 1e-12,
            f_target: None,
            gap_tol: 1e-8,
            line_search: LineSearchPolicy::ArmijoExpand,
            sigma_growth: 2.0,
            max_expansions: 60,
            refine_steps: 0,
            variant: Variant::A,
            lagged_radius: false,
            metric_floor: 1e-8,
            minnorm_tol: 1e-12,
        }
    }
}

/// Parameters together with control functions, as read from a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub params: Params,
    pub controls: Controls,
}

impl Config {
    /// Defaults for `variant` with initial radius `eps0`.
    pub fn new(variant: Variant, eps0: f64) -> Self {
        let params = Params { eps0, variant, ..Params::default() };
        let controls = match variant {
            Variant::A => Controls::standard(eps0),
            Variant::B => Controls::variable_metric(),
        };
        Config { params, controls }
    }

    /// Check every constraint and collect all violations.
    pub fn validate(&self) -> Result<ValidConfig> {
        let p = &self.params;
        let mut bad = Vec::new();
        if !(p.delta > 0.0 && p.delta < 1.0) {
            bad.push("delta in (0, 1)".to_string());
        }
        if !(p.delta_prime > 0.0 && p.delta_prime < 1.0) {
            bad.push("delta_prime in (0, 1)".to_string());
        }
        if !(p.delta < p.delta_prime) {
            bad.push("delta < delta_prime".to_string());
        }
        let positive = [
            ("eps0", p.eps0),
            ("eps_tol", p.eps_tol),
            ("gap_tol", p.gap_tol),
            ("metric_floor", p.metric_floor),
            ("minnorm_tol", p.minnorm_tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                bad.push(format!("{name} must be positive"));
            }
        }
        let counts = [
            ("bundle_m", p.bundle_m as u64),
            ("max_iterations", p.max_iterations),
            ("max_gradient_evals", p.max_gradient_evals),
            ("max_bisections", p.max_bisections as u64),
            ("max_inner_steps", p.max_inner_steps as u64),
        ];
        for (name, v) in counts {
            if v == 0 {
                bad.push(format!("{name} must be positive"));
            }
        }
        if !(p.sigma_growth > 1.0 && p.sigma_growth.is_finite()) {
            bad.push("sigma_growth must exceed 1".to_string());
        }
        if let Some(t) = p.f_target {
            if !t.is_finite() {
                bad.push("f_target must be finite".to_string());
            }
        }
        self.controls.violations(&mut bad);
        if bad.is_empty() {
            Ok(ValidConfig(self.clone()))
        } else {
            Err(Error::InvalidConfig(bad))
        }
    }
}

/// A [`Config`] that passed [`Config::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct ValidConfig(Config);

impl ValidConfig {
    pub fn params(&self) -> &Params {
        &self.0.params
    }

    pub fn controls(&self) -> &Controls {
        &self.0.controls
    }

    pub fn config(&self) -> &Config {
        &self.0
    }
}
