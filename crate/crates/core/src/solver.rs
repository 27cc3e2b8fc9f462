//! Outer descent loop.
//!
//! Each outer iteration picks a metric, takes one subgradient `a_k` at the
//! iterate and a starting radius `eps_{k,0}`. The inner approximation is then
//! run on shrinking radii (`eps_{k,i+1} = T2(eps_{k,i})` after every null step)
//! until it reports sufficient descent, at which point a step of length
//! `sigma_k >= eps_{k,i}` is taken and `eps_{k+1} = eps_{k,i}`.

use nalgebra::DMatrix;

use crate::bundle::{approximate_direction, DirectionOutcome, InnerChecks, InnerProblem, OutcomeKind};
use crate::oracle::Evaluator;
use crate::{
    Branch, Diagnostics, Error, GFamily, IterationRecord, LineSearchPolicy, Metric, Oracle, Point, Result, Status,
    Trace, ValidConfig, Variant,
};

/// Produces the (unregularized) metric candidate at an iterate, typically the
/// Hessian.
pub type MetricProvider<'a> = &'a (dyn Fn(&Point) -> DMatrix<f64> + Sync);

/// Starting radius of an outer iteration: `G(||a_k||, eps_k)`, or `||a_k||`
/// for variant B.
pub fn next_radius(a_norm: f64, eps_k: f64, g: &GFamily, variant: Variant) -> Result<f64> {
    match variant {
        Variant::A => g.eval(a_norm, eps_k),
        Variant::B => {
            if a_norm > 0.0 && a_norm.is_finite() {
                Ok(a_norm)
            } else {
                Err(Error::Domain(format!("radius from subgradient norm {a_norm}")))
            }
        }
    }
}

/// Line-search inputs; the sufficient-descent test must already hold at `eps`.
pub struct LineSearch<'a> {
    pub x: &'a Point,
    pub fx: f64,
    pub h: &'a Point,
    pub eps: f64,
    pub f_eps: f64,
    pub a_norm: f64,
    pub delta: f64,
    pub policy: LineSearchPolicy,
    pub growth: f64,
    pub max_expansions: usize,
    pub refine_steps: usize,
}

/// Step length `sigma >= eps` satisfying the Armijo test, with `f(x - sigma h)`.
pub fn line_search(ls: &LineSearch<'_>, eval: &Evaluator<'_>) -> Result<(f64, f64)> {
    let armijo = |s: f64, fs: f64| fs - ls.fx <= -ls.delta * ls.a_norm * s;
    let at = |s: f64| eval.value(&(ls.x - ls.h * s));
    let mut feasible = (ls.eps, ls.f_eps);
    let mut before = ls.eps;
    let mut prev = (ls.eps, ls.f_eps);
    let mut sigma = ls.eps;
    let mut bracket = None;
    for _ in 0..ls.max_expansions {
        sigma *= ls.growth;
        let fs = at(sigma)?;
        match ls.policy {
            LineSearchPolicy::ArmijoExpand => {
                if !armijo(sigma, fs) {
                    break;
                }
                feasible = (sigma, fs);
            }
            LineSearchPolicy::FirstNonDecrease => {
                if !(fs < prev.1) {
                    bracket = Some((before, sigma));
                    break;
                }
                if armijo(sigma, fs) {
                    feasible = (sigma, fs);
                }
                before = prev.0;
                prev = (sigma, fs);
            }
        }
    }
    if ls.policy == LineSearchPolicy::ArmijoExpand {
        return Ok(feasible);
    }
    if let Some((lo, hi)) = bracket {
        if ls.refine_steps > 0 {
            let best = golden_section(lo, hi, prev, ls.refine_steps, &at)?;
            if best.0 != prev.0 && best.1 <= prev.1 && armijo(best.0, best.1) {
                return Ok(best);
            }
        }
    }
    if armijo(prev.0, prev.1) {
        return Ok(prev);
    }
    Ok(feasible)
}

/// Golden-section search for a local minimizer of `f` on `[lo, hi]`, seeded
/// with a known interior point. Returns the best point evaluated, preferring
/// the smaller step on ties so that flat stretches resolve to their left end.
fn golden_section(
    mut lo: f64,
    mut hi: f64,
    seed: (f64, f64),
    steps: usize,
    f: &impl Fn(f64) -> Result<f64>,
) -> Result<(f64, f64)> {
    const R: f64 = 0.618_033_988_749_894_9;
    let mut best = seed;
    let mut c = hi - R * (hi - lo);
    let mut d = lo + R * (hi - lo);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..steps {
        for (s, fs) in [(c, fc), (d, fd)] {
            if fs < best.1 || (fs == best.1 && s < best.0) {
                best = (s, fs);
            }
        }
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - R * (hi - lo);
            fc = f(c)?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + R * (hi - lo);
            fd = f(d)?;
        }
    }
    for (s, fs) in [(c, fc), (d, fd)] {
        if fs < best.1 {
            best = (s, fs);
        }
    }
    Ok(best)
}

fn check_point(x: &Point, n: usize) -> Result<()> {
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: x.len() });
    }
    if n == 0 {
        return Err(Error::InvalidDimension("dimension must be at least 1".into()));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("starting point"));
    }
    Ok(())
}

/// Minimize `oracle` from `x0`.
///
/// `metric_provider` is required for variant B and ignored for variant A.
/// Budget exhaustion and a non-terminating segment search end the run with the
/// corresponding [`Status`]; other failures (invalid oracle output, bad
/// metric) are returned as errors.
pub fn solve(
    oracle: &dyn Oracle,
    x0: &Point,
    config: &ValidConfig,
    metric_provider: Option<MetricProvider<'_>>,
) -> Result<Trace> {
    let p = config.params();
    let controls = config.controls();
    let n = oracle.dim();
    check_point(x0, n)?;
    if p.variant == Variant::B && metric_provider.is_none() {
        return Err(Error::MissingMetricProvider);
    }

    let eval = Evaluator::new(oracle, p.max_gradient_evals);
    let mut x = x0.clone();
    let mut fx = eval.value(&x)?;
    if !fx.is_finite() {
        return Err(Error::NonFinite("value at starting point"));
    }
    let mut eps_k = p.eps0;
    let mut prev_a_norm: Option<f64> = None;
    let mut records: Vec<IterationRecord> = Vec::new();
    let mut diag = Diagnostics::default();
    let mut inner = InnerChecks::default();
    let mut failure = None;
    let mut k: u64 = 0;

    let status = 'outer: loop {
        if let Some(target) = p.f_target {
            if fx - target < p.gap_tol {
                break Status::ConvergedTarget;
            }
        }
        if k >= p.max_iterations {
            break Status::BudgetExhausted;
        }

        let metric = match p.variant {
            Variant::A => Metric::identity(n),
            Variant::B => {
                let candidate = (metric_provider.unwrap())(&x);
                Metric::from_hessian(&candidate, p.metric_floor)?
            }
        };
        let g = match eval.subgradient(&x) {
            Ok(g) => g,
            Err(Error::GradientBudgetExhausted(_)) => break Status::BudgetExhausted,
            Err(e) => return Err(e),
        };
        let a_k = metric.representer(&g)?;
        let a_k_norm = metric.norm(&a_k)?;

        let mut rec = IterationRecord {
            k,
            x: x.iter().copied().collect(),
            f: fx,
            eps_k,
            eps_ki: Vec::new(),
            branches: Vec::new(),
            a_norms: Vec::new(),
            inner_steps: Vec::new(),
            sigma: None,
            grad_evals: 0,
            value_evals: 0,
            max_excursion: 0.0,
            condition_number: metric.condition_number(),
        };
        let finish = |rec: &mut IterationRecord| {
            rec.grad_evals = eval.gradient_evals();
            rec.value_evals = eval.value_evals();
        };

        if a_k_norm == 0.0 {
            // zero subgradient: x is Clarke-critical
            finish(&mut rec);
            records.push(rec);
            break Status::ConvergedRadius;
        }
        let g_arg = if p.lagged_radius { prev_a_norm.unwrap_or(a_k_norm) } else { a_k_norm };
        let mut eps = next_radius(g_arg, eps_k, &controls.g, p.variant)?;
        let threshold_of = |e: f64| controls.t1.eval(e);

        loop {
            let prob = InnerProblem { x: &x, fx, eps, metric: &metric, controls, params: p };
            let outcome: DirectionOutcome = match approximate_direction(&prob, a_k.clone(), &eval, &mut inner) {
                Ok(o) => o,
                Err(e @ (Error::GradientBudgetExhausted(_) | Error::InnerBudgetExhausted { .. })) => {
                    if matches!(e, Error::InnerBudgetExhausted { .. }) {
                        failure = Some(format!("{e} at x = {:?}, eps = {eps}", x.as_slice()));
                    }
                    finish(&mut rec);
                    records.push(rec);
                    break 'outer Status::BudgetExhausted;
                }
                Err(Error::NonTermination { levels }) => {
                    failure = Some(format!(
                        "segment search did not terminate after {levels} bisections at x = {:?}, eps = {eps}",
                        x.as_slice()
                    ));
                    finish(&mut rec);
                    records.push(rec);
                    break 'outer Status::SegmentSearchFailed;
                }
                Err(e) => return Err(e),
            };
            rec.eps_ki.push(eps);
            rec.a_norms.push(outcome.a_norm);
            rec.inner_steps.push(outcome.inner_steps);
            rec.max_excursion = rec.max_excursion.max(outcome.max_excursion);

            match outcome.kind {
                OutcomeKind::NullStep => {
                    rec.branches.push(Branch::Null);
                    diag.null_steps += 1;
                    if !(outcome.a_norm < threshold_of(eps)?) {
                        diag.null_step_violations += 1;
                    }
                    if eps <= p.eps_tol {
                        finish(&mut rec);
                        records.push(rec);
                        break 'outer Status::ConvergedRadius;
                    }
                    let next = controls.t2.eval(eps)?;
                    if !(next < eps) {
                        return Err(Error::Domain(format!("t2 did not shrink radius {eps}")));
                    }
                    eps = next;
                }
                OutcomeKind::Descent => {
                    rec.branches.push(Branch::Descent);
                    diag.descent_steps += 1;
                    let h = outcome.h.expect("descent outcome carries a direction");
                    let ls = LineSearch {
                        x: &x,
                        fx,
                        h: &h,
                        eps,
                        f_eps: outcome.f_trial.expect("descent outcome carries f_trial"),
                        a_norm: outcome.a_norm,
                        delta: p.delta,
                        policy: p.line_search,
                        growth: p.sigma_growth,
                        max_expansions: p.max_expansions,
                        refine_steps: p.refine_steps,
                    };
                    let (sigma, f_new) = line_search(&ls, &eval)?;
                    let x_new = &x - &h * sigma;
                    if !(f_new - fx <= -p.delta * outcome.a_norm * sigma) || sigma < eps {
                        diag.armijo_violations += 1;
                    }
                    if !(f_new < fx) {
                        diag.descent_violations += 1;
                    }
                    rec.sigma = Some(sigma);
                    finish(&mut rec);
                    records.push(rec);
                    x = x_new;
                    fx = f_new;
                    eps_k = eps;
                    prev_a_norm = Some(a_k_norm);
                    k += 1;
                    continue 'outer;
                }
            }
        }
    };

    diag.inner = inner;
    Ok(Trace {
        records,
        status,
        final_x: x.iter().copied().collect(),
        final_f: fx,
        iterations: k,
        gradient_evals: eval.gradient_evals(),
        value_evals: eval.value_evals(),
        diagnostics: diag,
        failure,
    })
}
