//! Bisection along the trial segment for a *cutting* subgradient `b` with
//! `<a, b>_k <= delta' ||a||_k^2`.
//!
//! The segment is parametrized as `x - t h` with `h = a / ||a||_k`, so
//! `||h||_k = 1` and metric lengths are differences of `t`. It starts as
//! `t in [0, 2 eps]`, whose midpoint is the trial point `x - eps h` of the
//! failed sufficient-descent test. Each level probes the midpoint; if the
//! subgradient there does not cut, a half on which sufficient descent is
//! still violated is kept.

use crate::oracle::Evaluator;
use crate::{Error, Metric, Point, Result};

/// Inputs shared by every bisection level.
pub struct SegmentProblem<'a> {
    pub x: &'a Point,
    pub fx: f64,
    pub eps: f64,
    /// Current min-norm point `a'_j` (metric representer).
    pub a: &'a Point,
    pub a_norm: f64,
    /// `f(x - eps h)`, already known from the failed descent test.
    pub f_trial: f64,
    pub metric: &'a Metric,
    pub delta: f64,
    pub delta_prime: f64,
    pub max_bisections: usize,
}

/// Bisection segment `[t_left, t_right]` with function values at both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentState {
    pub level: usize,
    pub t_left: f64,
    pub t_right: f64,
    pub f_left: f64,
    pub f_right: f64,
}

impl SegmentState {
    pub fn length(&self) -> f64 {
        self.t_right - self.t_left
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cut {
    /// Cutting subgradient, as a metric representer.
    pub b: Point,
    /// Where it was evaluated.
    pub y: Point,
    /// Step parameter of `y`, i.e. `||y - x||_k`.
    pub t: f64,
    pub level: usize,
}

/// Invariant checks made along the way; all counters stay zero on a correct run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SegmentChecks {
    pub levels: u64,
    /// A kept half violated the "descent fails on the segment" invariant, or
    /// neither half satisfied it.
    pub invariant_violations: u64,
    /// Segment length did not halve exactly.
    pub halving_violations: u64,
}

pub fn find_cutting_gradient(
    prob: &SegmentProblem<'_>,
    eval: &Evaluator<'_>,
    checks: &mut SegmentChecks,
) -> Result<Cut> {
    let h = prob.a / prob.a_norm;
    let point_at = |t: f64| prob.x - &h * t;
    let violated = |f_lo: f64, f_hi: f64, len: f64| f_hi - f_lo > -prob.delta * prob.a_norm * len;
    let threshold = prob.delta_prime * prob.a_norm * prob.a_norm;

    let mut seg = SegmentState { level: 0, t_left: 0.0, t_right: 2.0 * prob.eps, f_left: prob.fx, f_right: f64::NAN };
    loop {
        let t_mid = 0.5 * (seg.t_left + seg.t_right);
        let y = point_at(t_mid);
        let g = eval.subgradient(&y)?;
        let b = prob.metric.representer(&g)?;
        if prob.metric.inner(prob.a, &b)? <= threshold {
            return Ok(Cut { b, y, t: t_mid, level: seg.level });
        }
        if seg.level >= prob.max_bisections {
            return Err(Error::NonTermination { levels: seg.level });
        }
        let old_len = seg.length();
        let next = if seg.level == 0 {
            // left half forced: descent fails between x and the trial point
            SegmentState { level: 1, t_left: seg.t_left, t_right: t_mid, f_left: seg.f_left, f_right: prob.f_trial }
        } else {
            let f_mid = eval.value(&y)?;
            let half = 0.5 * old_len;
            let left_ok = violated(seg.f_left, f_mid, half);
            let right_ok = violated(f_mid, seg.f_right, half);
            if !left_ok && !right_ok {
                checks.invariant_violations += 1;
            }
            if left_ok || !right_ok {
                SegmentState { level: seg.level + 1, t_right: t_mid, f_right: f_mid, ..seg }
            } else {
                SegmentState { level: seg.level + 1, t_left: t_mid, f_left: f_mid, ..seg }
            }
        };
        checks.levels += 1;
        if next.length() != 0.5 * old_len {
            checks.halving_violations += 1;
        }
        if !violated(next.f_left, next.f_right, next.length()) {
            checks.invariant_violations += 1;
        }
        seg = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{FnOracle, Oracle};

    fn pt1(v: f64) -> Point {
        Point::from_element(1, v)
    }

    fn sign(v: f64) -> f64 {
        if v >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    #[test]
    fn abs_cuts_at_level_zero() {
        let o = FnOracle::new(1, |x: &Point| x[0].abs(), |x: &Point| pt1(sign(x[0])));
        let ev = Evaluator::unlimited(&o);
        let metric = Metric::identity(1);
        let (x, a) = (pt1(0.1), pt1(1.0));
        // f(-0.4) - f(0.1) = 0.3 > -0.15: descent fails
        let prob = SegmentProblem {
            x: &x,
            fx: 0.1,
            eps: 0.5,
            a: &a,
            a_norm: 1.0,
            f_trial: 0.4,
            metric: &metric,
            delta: 0.3,
            delta_prime: 0.35,
            max_bisections: 60,
        };
        let mut checks = SegmentChecks::default();
        let cut = find_cutting_gradient(&prob, &ev, &mut checks).unwrap();
        assert_eq!(cut.level, 0);
        assert_eq!(cut.b, pt1(-1.0));
        assert!((cut.y[0] + 0.4).abs() < 1e-15);
        assert_eq!(ev.gradient_evals(), 1);
        assert_eq!(ev.value_evals(), 0);
    }

    /// `f(t) = -t^2 sin(2 pi / t)`, with the angle reduced modulo one turn so
    /// that dyadic probe points are evaluated exactly.
    fn wiggle() -> impl crate::Oracle {
        fn turn(t: f64) -> f64 {
            2.0 * std::f64::consts::PI * (1.0 / t).rem_euclid(1.0)
        }
        FnOracle::new(
            1,
            |x: &Point| {
                let t = x[0];
                if t == 0.0 {
                    0.0
                } else {
                    -t * t * turn(t).sin()
                }
            },
            |x: &Point| {
                let t = x[0];
                if t == 0.0 {
                    pt1(0.0)
                } else {
                    let w = turn(t);
                    pt1(-2.0 * t * w.sin() + 2.0 * std::f64::consts::PI * w.cos())
                }
            },
        )
    }

    #[test]
    fn oscillating_function_never_cuts() {
        let o = wiggle();
        let metric = Metric::identity(1);
        let (x, a) = (pt1(0.0), pt1(1.0));
        for budget in [5, 20, 45, 60] {
            let ev = Evaluator::unlimited(&o);
            let f_trial = o.value(&pt1(-1.0));
            let prob = SegmentProblem {
                x: &x,
                fx: 0.0,
                eps: 1.0,
                a: &a,
                a_norm: 1.0,
                f_trial,
                metric: &metric,
                delta: 0.3,
                delta_prime: 0.35,
                max_bisections: budget,
            };
            let mut checks = SegmentChecks::default();
            let res = find_cutting_gradient(&prob, &ev, &mut checks);
            assert_eq!(res, Err(Error::NonTermination { levels: budget }));
            assert_eq!(ev.gradient_evals(), budget as u64 + 1);
            assert_eq!(checks.levels, budget as u64);
            assert_eq!(checks.invariant_violations, 0);
            assert_eq!(checks.halving_violations, 0);
        }
    }

    #[test]
    fn convex_functions_cut_immediately() {
        // f(x) = max(x, -2x) + x^2 is convex with a kink at 0
        let o = FnOracle::new(
            1,
            |x: &Point| x[0].max(-2.0 * x[0]) + x[0] * x[0],
            |x: &Point| pt1(if x[0] >= 0.0 { 1.0 } else { -2.0 } + 2.0 * x[0]),
        );
        let metric = Metric::identity(1);
        for &x0 in &[0.05, 0.2, 0.01] {
            let x = pt1(x0);
            let fx = o.value(&x);
            let g = o.subgradient(&x);
            for &eps in &[0.1, 0.3, 1.0] {
                let trial = pt1(x0 - eps * sign(g[0]));
                let f_trial = o.value(&trial);
                if f_trial - fx <= -0.3 * g[0].abs() * eps {
                    continue;
                }
                let ev = Evaluator::unlimited(&o);
                let prob = SegmentProblem {
                    x: &x,
                    fx,
                    eps,
                    a: &g,
                    a_norm: g[0].abs(),
                    f_trial,
                    metric: &metric,
                    delta: 0.3,
                    delta_prime: 0.35,
                    max_bisections: 60,
                };
                let mut checks = SegmentChecks::default();
                let cut = find_cutting_gradient(&prob, &ev, &mut checks).unwrap();
                assert_eq!(cut.level, 0, "x0 = {x0}, eps = {eps}");
            }
        }
    }
}
