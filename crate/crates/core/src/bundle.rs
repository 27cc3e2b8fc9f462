//! Inner approximation of the ε-ball gradient at a fixed iterate.
//!
//! Starting from one subgradient, the loop alternates between testing the
//! current min-norm point `a'_j` (null step, then sufficient descent) and
//! enlarging the bundle with a cutting subgradient from [`segsearch`]. The
//! new min-norm point is taken over the retained bundle.
//!
//! [`segsearch`]: crate::segsearch

use serde::Serialize;

use crate::minnorm::min_norm_point;
use crate::oracle::Evaluator;
use crate::segsearch::{find_cutting_gradient, SegmentChecks, SegmentProblem};
use crate::{Controls, Error, Metric, Params, Point, Result, RetentionPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OutcomeKind {
    NullStep,
    Descent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectionOutcome {
    pub kind: OutcomeKind,
    /// `a_{k,i}`
    pub a: Point,
    pub a_norm: f64,
    /// `a / ||a||_k`, present for descent outcomes.
    pub h: Option<Point>,
    /// `f(x - eps h)` for descent outcomes.
    pub f_trial: Option<f64>,
    pub inner_steps: usize,
    pub gradient_evals: u64,
    /// Largest `||y_j - x||_k` over all cutting subgradients used.
    pub max_excursion: f64,
}

/// Inner-loop invariant checks, accumulated over a whole solve.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct InnerChecks {
    pub inner_steps: u64,
    pub bisection_levels: u64,
    /// `||a'_{j+1}|| > ||a'_j||`
    pub monotonicity_violations: u64,
    /// Per-step contraction bound failed.
    pub contraction_violations: u64,
    pub segment_invariant_violations: u64,
    pub halving_violations: u64,
    /// A returned outcome failed its own acceptance test on recomputation.
    pub certificate_violations: u64,
}

impl InnerChecks {
    fn absorb(&mut self, s: &SegmentChecks) {
        self.bisection_levels += s.levels;
        self.segment_invariant_violations += s.invariant_violations;
        self.halving_violations += s.halving_violations;
    }

    pub fn total_violations(&self) -> u64 {
        self.monotonicity_violations
            + self.contraction_violations
            + self.segment_invariant_violations
            + self.halving_violations
            + self.certificate_violations
    }
}

/// History of one inner run: min-norm points `a'_0..a'_j` and cuts `b'_0..b'_j`.
#[derive(Debug, Clone, Default)]
pub struct BundleState {
    pub minnorms: Vec<Point>,
    pub cuts: Vec<Point>,
    pub cut_points: Vec<Point>,
}

impl BundleState {
    pub fn new(a0: Point) -> Self {
        BundleState { minnorms: vec![a0], cuts: Vec::new(), cut_points: Vec::new() }
    }

    /// Index `j` of the current step; requires `b'_j` to have been pushed.
    fn step(&self) -> usize {
        self.cuts.len() - 1
    }
}

/// Retained bundle `B'_j` for the most recent cut `b'_j`.
pub fn update_bundle(state: &BundleState, policy: RetentionPolicy, m: usize) -> Vec<Point> {
    let j = state.step();
    let lo = j.saturating_sub(m);
    let mut out: Vec<Point> = Vec::with_capacity(m + 3);
    let mut push = |p: &Point| {
        if !out.iter().any(|q| q == p) {
            out.push(p.clone());
        }
    };
    push(&state.minnorms[0]);
    match policy {
        RetentionPolicy::KeepCuts => {
            push(&state.minnorms[j]);
            state.cuts[lo..=j].iter().for_each(&mut push);
        }
        RetentionPolicy::KeepMinNorms => {
            state.minnorms[lo..=j].iter().for_each(&mut push);
            push(&state.cuts[j]);
        }
    }
    out
}

/// Squared-norm bound on the min-norm point of the segment `[a, b]` given
/// `<a, b> <= gamma ||a||^2` and `max(||a||, ||b||) <= lip`.
pub fn contraction_bound(a_norm: f64, lip: f64, gamma: f64) -> f64 {
    let a2 = a_norm * a_norm;
    let l2 = lip * lip;
    l2 * a2 / ((1.0 - gamma).powi(2) * a2 + l2)
}

/// Everything fixed for one call of [`approximate_direction`].
pub struct InnerProblem<'a> {
    pub x: &'a Point,
    pub fx: f64,
    pub eps: f64,
    pub metric: &'a Metric,
    pub controls: &'a Controls,
    pub params: &'a Params,
}

pub fn approximate_direction(
    prob: &InnerProblem<'_>,
    a0: Point,
    eval: &Evaluator<'_>,
    checks: &mut InnerChecks,
) -> Result<DirectionOutcome> {
    let p = prob.params;
    let start_grads = eval.gradient_evals();
    let threshold = prob.controls.t1.eval(prob.eps)?;
    let mut state = BundleState::new(a0);
    let mut a = state.minnorms[0].clone();
    let mut a_norm = prob.metric.norm(&a)?;
    let mut max_excursion: f64 = 0.0;

    for j in 0.. {
        let outcome = |kind, h: Option<Point>, f_trial| DirectionOutcome {
            kind,
            a: a.clone(),
            a_norm,
            h,
            f_trial,
            inner_steps: j,
            gradient_evals: eval.gradient_evals() - start_grads,
            max_excursion,
        };
        if a_norm < threshold {
            return Ok(outcome(OutcomeKind::NullStep, None, None));
        }
        let h = &a / a_norm;
        let trial = prob.x - &h * prob.eps;
        let f_trial = eval.value(&trial)?;
        if f_trial - prob.fx <= -p.delta * a_norm * prob.eps {
            return Ok(outcome(OutcomeKind::Descent, Some(h), Some(f_trial)));
        }
        if j >= p.max_inner_steps {
            return Err(Error::InnerBudgetExhausted { steps: j });
        }

        let seg = SegmentProblem {
            x: prob.x,
            fx: prob.fx,
            eps: prob.eps,
            a: &a,
            a_norm,
            f_trial,
            metric: prob.metric,
            delta: p.delta,
            delta_prime: p.delta_prime,
            max_bisections: p.max_bisections,
        };
        let mut seg_checks = SegmentChecks::default();
        let cut = find_cutting_gradient(&seg, eval, &mut seg_checks);
        checks.absorb(&seg_checks);
        let cut = cut?;
        max_excursion = max_excursion.max(cut.t);
        let b_norm = prob.metric.norm(&cut.b)?;
        state.cuts.push(cut.b);
        state.cut_points.push(cut.y);

        let retained = update_bundle(&state, p.retention, p.bundle_m);
        let sol = min_norm_point(&retained, prob.metric, p.minnorm_tol)?;
        checks.inner_steps += 1;

        let slack = 1e-12 * (1.0 + a_norm);
        if sol.norm > a_norm + slack {
            checks.monotonicity_violations += 1;
        }
        let lip = a_norm.max(b_norm) + 1e-12;
        if sol.norm * sol.norm > contraction_bound(a_norm, lip, p.delta_prime) + 1e-10 {
            checks.contraction_violations += 1;
        }

        a = sol.point;
        a_norm = sol.norm;
        state.minnorms.push(a.clone());
    }
    unreachable!()
}
