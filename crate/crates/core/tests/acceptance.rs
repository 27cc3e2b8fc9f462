//! Acceptance criteria for the benchmark suite. Prints one PASS/FAIL line per
//! criterion and fails if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use epsdescent::benchmarks::{
    make_cheb_exp, make_hilbert, make_nesterov, make_qmax, make_regression, make_rosenbrock, make_wolfe, Benchmark,
    ChebMode, NesterovKind,
};
use epsdescent::minnorm::{brute_force_min_norm, min_norm_point};
use epsdescent::oracle::{Evaluator, FnOracle};
use epsdescent::segsearch::{find_cutting_gradient, SegmentChecks, SegmentProblem};
use epsdescent::{Config, Diagnostics, Error, Metric, Oracle, Point, Status, Trace, Variant};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Report {
    lines: Vec<(bool, String)>,
    diagnostics: Diagnostics,
    runs: usize,
}

impl Report {
    fn check(&mut self, name: &str, pass: bool, detail: String) {
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
        self.lines.push((pass, name.to_string()));
    }

    fn run(&mut self, b: &Benchmark, start: &str, cfg: &Config) -> (Trace, Duration) {
        let t = Instant::now();
        let trace = b.solve(start, &cfg.validate().unwrap()).unwrap();
        let elapsed = t.elapsed();
        let d = &trace.diagnostics;
        let acc = &mut self.diagnostics;
        acc.descent_violations += d.descent_violations;
        acc.armijo_violations += d.armijo_violations;
        acc.null_step_violations += d.null_step_violations;
        acc.null_steps += d.null_steps;
        acc.descent_steps += d.descent_steps;
        acc.inner.inner_steps += d.inner.inner_steps;
        acc.inner.bisection_levels += d.inner.bisection_levels;
        acc.inner.monotonicity_violations += d.inner.monotonicity_violations;
        acc.inner.contraction_violations += d.inner.contraction_violations;
        acc.inner.segment_invariant_violations += d.inner.segment_invariant_violations;
        acc.inner.halving_violations += d.inner.halving_violations;
        acc.inner.certificate_violations += d.inner.certificate_violations;
        self.runs += 1;
        (trace, elapsed)
    }
}

fn summary(t: &Trace, elapsed: Duration) -> String {
    format!(
        "f = {:.6e}, {} iterations, {} gradients, status {}, {:.3} s",
        t.final_f,
        t.iterations,
        t.gradient_evals,
        t.status,
        elapsed.as_secs_f64()
    )
}

fn wolfe(r: &mut Report) {
    let b = make_wolfe();
    let mut cfg = b.config.clone();
    cfg.params.f_target = Some(-8.0);
    cfg.params.gap_tol = 1e-8;
    cfg.params.max_gradient_evals = 60;
    cfg.params.max_iterations = 40;
    let (t, el) = r.run(&b, "default", &cfg);
    let pass = t.status == Status::ConvergedTarget
        && t.final_f + 8.0 < 1e-8
        && t.gradient_evals <= 60
        && t.iterations <= 40
        && el < Duration::from_secs(1);
    r.check("1 wolfe", pass, format!("gap = {:.2e}, {}", t.final_f + 8.0, summary(&t, el)));
}

fn rosenbrock(r: &mut Report) {
    let b = make_rosenbrock();
    let mut a = b.config_for(Variant::A);
    a.params.max_gradient_evals = 120;
    let (t, el) = r.run(&b, "default", &a);
    let pass = t.final_f < 2e-6 && t.gradient_evals <= 120 && el < Duration::from_secs(1);
    r.check("2a rosenbrock variant A", pass, summary(&t, el));

    let mut bb = b.config_for(Variant::B);
    bb.params.max_gradient_evals = 60;
    let (t, el) = r.run(&b, "default", &bb);
    let pass = t.final_f < 1e-12 && t.gradient_evals <= 60 && el < Duration::from_secs(1);
    r.check("2b rosenbrock variant B", pass, summary(&t, el));
}

fn qmax(r: &mut Report) {
    let b = make_qmax(20).unwrap();
    let t0 = Instant::now();
    let mut cfg = b.config.clone();
    cfg.params.max_gradient_evals = 600;
    let (u, el) = r.run(&b, "u+", &cfg);
    let mut scaled = cfg.clone();
    scaled.params.eps0 *= 0.1;
    let (v, _) = r.run(&b, "v", &scaled);
    let total = t0.elapsed();
    let pass = u.final_f < 1e-6 && u.gradient_evals <= 600 && total < Duration::from_secs(5);
    r.check("3a q-max n = 20 from u+", pass, summary(&u, el));
    let ratio = v.final_f / u.final_f;
    let pass = (ratio / 0.01 - 1.0).abs() < 1e-6 && u.iterations == v.iterations;
    r.check(
        "3b q-max v/u+ scaling",
        pass,
        format!(
            "f(v) / f(u+) = {ratio:.9e}, iterations {} vs {}, {:.3} s for both runs",
            v.iterations,
            u.iterations,
            total.as_secs_f64()
        ),
    );
}

fn hilbert(r: &mut Report) {
    let b = make_hilbert(10).unwrap();
    let mut cfg = b.config.clone();
    cfg.params.f_target = Some(0.0);
    cfg.params.gap_tol = 1e-8;
    cfg.params.max_iterations = 100;
    cfg.params.max_gradient_evals = 250;
    let (t, el) = r.run(&b, "default", &cfg);
    let pass = t.final_f < 1e-8 && t.iterations <= 100 && t.gradient_evals <= 250 && el < Duration::from_secs(5);
    r.check("4 hilbert n = 10", pass, summary(&t, el));
}

/// Agreement to `digits` significant digits after rounding both values.
fn same_digits(a: f64, b: f64, digits: usize) -> bool {
    format!("{:.*e}", digits - 1, a) == format!("{:.*e}", digits - 1, b)
}

fn chebyshev(r: &mut Report) {
    let t0 = Instant::now();
    let cases = [(1, 200, 8.55641e-2, 5), (2, 600, 8.75226e-3, 4)];
    let mut all = true;
    for (m, budget, reference, digits) in cases {
        let b = make_cheb_exp(m, ChebMode::PerturbedStart).unwrap();
        let mut cfg = b.config.clone();
        cfg.params.max_gradient_evals = budget;
        let (t, el) = r.run(&b, "perturbed", &cfg);
        let pass = same_digits(t.final_f, reference, digits) && t.gradient_evals <= budget;
        all &= pass;
        r.check(&format!("5 chebyshev n = {}", 2 * m), pass, summary(&t, el));
    }
    let total = t0.elapsed();
    r.check(
        "5 chebyshev combined runtime",
        all && total < Duration::from_secs(60),
        format!("{:.3} s", total.as_secs_f64()),
    );
}

fn regression(r: &mut Report) {
    let b = make_regression();
    let target = Point::from_column_slice(&[0.270, 0.269, 0.592]);
    for variant in [Variant::A, Variant::B] {
        for start in ["zeros", "ones"] {
            let mut cfg = b.config_for(variant);
            cfg.params.max_gradient_evals = 600;
            let (t, el) = r.run(&b, start, &cfg);
            let x = Point::from_column_slice(&t.final_x);
            let dist = (&x - &target).amax();
            let pass = (t.final_f - 0.0861942).abs() < 1e-4
                && dist < 1e-2
                && t.gradient_evals <= 600
                && el < Duration::from_secs(5);
            r.check(
                &format!("6 regression variant {variant:?} from {start}"),
                pass,
                format!("|x - x*|_inf = {dist:.2e}, {}", summary(&t, el)),
            );
        }
    }
}

fn nesterov(r: &mut Report) {
    let b = make_nesterov(NesterovKind::Nonsmooth, 3).unwrap();
    let mut cfg = b.config.clone();
    cfg.params.f_target = Some(0.0);
    cfg.params.gap_tol = 1e-6;
    cfg.params.max_gradient_evals = 1_000_000;
    let (t, el) = r.run(&b, "default", &cfg);
    let pass = t.final_f < 1e-6 && t.gradient_evals <= 1_000_000 && el < Duration::from_secs(600);
    r.check("7 nesterov nonsmooth n = 3", pass, summary(&t, el));

    let b = make_nesterov(NesterovKind::AbsVariant, 2).unwrap();
    let (t, el) = r.run(&b, "default", &b.config);
    let x = Point::from_column_slice(&t.final_x);
    let near = |p: [f64; 2]| (&x - Point::from_column_slice(&p)).amax();
    let d = near([0.0, -1.0]).min(near([1.0, 1.0]));
    r.check(
        "8 nesterov abs variant n = 2",
        d < 1e-6,
        format!("x = {:?}, distance {d:.2e}, {}", t.final_x, summary(&t, el)),
    );
}

fn random_spd(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let m = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    &m * m.transpose() + DMatrix::identity(n, n) * 0.5
}

fn min_norm_equivalence() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for case in 0..200 {
        let dim = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=5);
        let bundle: Vec<Point> = (0..k).map(|_| Point::from_fn(dim, |_, _| rng.gen_range(-2.0..2.0))).collect();
        let metric = if case % 2 == 0 {
            Metric::identity(dim)
        } else {
            Metric::from_hessian(&random_spd(&mut rng, dim), 1e-8).unwrap()
        };
        let fast = min_norm_point(&bundle, &metric, 1e-12).unwrap();
        let slow = brute_force_min_norm(&bundle, &metric, 600).unwrap();
        worst = worst.max((fast.norm - metric.norm(&slow).unwrap()).abs());
    }
    (worst <= 5e-3, format!("200 bundles, largest norm difference {worst:.2e}"))
}

fn finite_differences() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let benches = vec![
        make_wolfe(),
        make_rosenbrock(),
        make_qmax(6).unwrap(),
        make_hilbert(5).unwrap(),
        make_regression(),
        make_cheb_exp(2, ChebMode::PerturbedStart).unwrap(),
        make_cheb_exp(2, ChebMode::PerturbedFunction).unwrap(),
        make_nesterov(NesterovKind::Smooth, 4).unwrap(),
        make_nesterov(NesterovKind::Nonsmooth, 4).unwrap(),
        make_nesterov(NesterovKind::AbsVariant, 4).unwrap(),
    ];
    let mut failures = Vec::new();
    let mut checked = 0;
    for b in &benches {
        let o = b.oracle.as_ref();
        let x0 = &b.starts[0].1;
        for _ in 0..40 {
            let x = x0 + Point::from_fn(b.dim, |_, _| rng.gen_range(-0.5..0.5));
            let g = o.subgradient(&x);
            let mut h = Point::from_fn(b.dim, |_, _| rng.gen_range(-1.0..1.0));
            h /= h.norm();
            let t = 1e-7 * (1.0 + x.norm());
            let fd = (o.value(&(&x + &h * t)) - o.value(&(&x - &h * t))) / (2.0 * t);
            checked += 1;
            if (fd - g.dot(&h)).abs() > 1e-4 * g.norm().max(1.0) {
                failures.push(b.name.clone());
            }
        }
    }
    failures.dedup();
    (failures.is_empty(), format!("{checked} directional derivatives, mismatches in {failures:?}"))
}

/// `f(t) = -t^2 sin(2 pi / t)` oscillates on every scale near zero, so no
/// bisection level ever finds a cutting subgradient.
fn non_termination() -> (bool, String) {
    fn turn(t: f64) -> f64 {
        2.0 * std::f64::consts::PI * (1.0 / t).rem_euclid(1.0)
    }
    let o = FnOracle::new(
        1,
        |x: &Point| if x[0] == 0.0 { 0.0 } else { -x[0] * x[0] * turn(x[0]).sin() },
        |x: &Point| {
            let t = x[0];
            let g = if t == 0.0 { 0.0 } else { -2.0 * t * turn(t).sin() + 2.0 * std::f64::consts::PI * turn(t).cos() };
            Point::from_element(1, g)
        },
    );
    let ev = Evaluator::unlimited(&o);
    let metric = Metric::identity(1);
    let (x, a) = (Point::zeros(1), Point::from_element(1, 1.0));
    let prob = SegmentProblem {
        x: &x,
        fx: 0.0,
        eps: 1.0,
        a: &a,
        a_norm: 1.0,
        f_trial: o.value(&Point::from_element(1, -1.0)),
        metric: &metric,
        delta: 0.3,
        delta_prime: 0.35,
        max_bisections: 60,
    };
    let mut checks = SegmentChecks::default();
    let res = find_cutting_gradient(&prob, &ev, &mut checks);
    let pass = res == Err(Error::NonTermination { levels: 60 })
        && checks.invariant_violations == 0
        && checks.halving_violations == 0;
    (pass, format!("{res:?} after {} levels", checks.levels))
}

fn main() -> ExitCode {
    let mut r = Report { lines: Vec::new(), diagnostics: Diagnostics::default(), runs: 0 };
    wolfe(&mut r);
    rosenbrock(&mut r);
    qmax(&mut r);
    hilbert(&mut r);
    chebyshev(&mut r);
    regression(&mut r);
    nesterov(&mut r);

    let t0 = Instant::now();
    let (pass, detail) = min_norm_equivalence();
    r.check("9a min-norm point vs brute force", pass, detail);
    let d = r.diagnostics;
    r.check(
        "9b contraction bound on every inner step",
        d.inner.contraction_violations == 0 && d.inner.monotonicity_violations == 0,
        format!("{} inner steps over {} runs, {:?}", d.inner.inner_steps, r.runs, d.inner),
    );
    r.check(
        "9c strict descent and Armijo on every step",
        d.descent_violations == 0 && d.armijo_violations == 0,
        format!("{} descent steps", d.descent_steps),
    );
    r.check(
        "9d null-step certificate",
        d.null_step_violations == 0 && d.inner.certificate_violations == 0,
        format!("{} null steps", d.null_steps),
    );
    r.check(
        "9e segment invariant and exact halving",
        d.inner.segment_invariant_violations == 0 && d.inner.halving_violations == 0,
        format!("{} bisection levels", d.inner.bisection_levels),
    );
    let (pass, detail) = finite_differences();
    r.check("9f finite-difference subgradients", pass, detail);
    let (pass, detail) = non_termination();
    r.check("9g non-terminating segment search", pass, detail);
    let el = t0.elapsed();
    r.check("9 property suite runtime", el < Duration::from_secs(120), format!("{:.3} s", el.as_secs_f64()));

    let failed = r.lines.iter().filter(|(p, _)| !p).count();
    println!("{} of {} criteria passed", r.lines.len() - failed, r.lines.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
