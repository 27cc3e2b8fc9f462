//! Problem names understood by the command line and the suite's row list.

use epsdescent::benchmarks::{
    make_cheb_exp, make_hilbert, make_nesterov, make_qmax, make_regression, make_rosenbrock, make_wolfe, Benchmark,
    ChebMode, NesterovKind,
};
use epsdescent::Variant;

pub const PROBLEMS: [&str; 10] = [
    "wolfe",
    "rosenbrock",
    "qmax",
    "hilbert",
    "regression",
    "cheb_exp",
    "cheb_exp_scaled",
    "nesterov_smooth",
    "nesterov_nonsmooth",
    "nesterov_abs",
];

#[derive(Debug)]
pub enum LookupError {
    UnknownProblem(String),
    Invalid(String),
}

impl std::fmt::Display for LookupError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LookupError::UnknownProblem(name) => {
                write!(f, "unknown problem {name:?} (known: {})", PROBLEMS.join(", "))
            }
            LookupError::Invalid(msg) => f.write_str(msg),
        }
    }
}

/// Dimension used when `--n` is absent.
pub fn default_n(problem: &str) -> Option<usize> {
    Some(match problem {
        "wolfe" | "rosenbrock" | "cheb_exp" | "cheb_exp_scaled" | "nesterov_abs" => 2,
        "regression" | "nesterov_smooth" | "nesterov_nonsmooth" => 3,
        "qmax" => 20,
        "hilbert" => 10,
        _ => return None,
    })
}

/// Builds `problem` in dimension `n`. The exponential-sum problems take the
/// total dimension `n = 2m`.
pub fn build(problem: &str, n: Option<usize>) -> Result<Benchmark, LookupError> {
    let n = n.or_else(|| default_n(problem)).ok_or_else(|| LookupError::UnknownProblem(problem.into()))?;
    let fixed = |dim: usize, b: fn() -> Benchmark| {
        if n == dim {
            Ok(b())
        } else {
            Err(LookupError::Invalid(format!("{problem} has fixed dimension {dim}")))
        }
    };
    let terms = || {
        if n.is_multiple_of(2) {
            Ok(n / 2)
        } else {
            Err(LookupError::Invalid(format!("{problem} needs an even dimension, got {n}")))
        }
    };
    let built = match problem {
        "wolfe" => return fixed(2, make_wolfe),
        "rosenbrock" => return fixed(2, make_rosenbrock),
        "regression" => return fixed(3, make_regression),
        "qmax" => make_qmax(n),
        "hilbert" => make_hilbert(n),
        "cheb_exp" => make_cheb_exp(terms()?, ChebMode::PerturbedStart),
        "cheb_exp_scaled" => make_cheb_exp(terms()?, ChebMode::PerturbedFunction),
        "nesterov_smooth" => make_nesterov(NesterovKind::Smooth, n),
        "nesterov_nonsmooth" => make_nesterov(NesterovKind::Nonsmooth, n),
        "nesterov_abs" => make_nesterov(NesterovKind::AbsVariant, n),
        _ => return Err(LookupError::UnknownProblem(problem.into())),
    };
    built.map_err(|e| LookupError::Invalid(e.to_string()))
}

/// One suite row before it is run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteEntry {
    pub problem: &'static str,
    pub n: usize,
    pub variant: Variant,
    pub x0: String,
}

/// Every (problem, n, variant, start) combination of the suite, in output
/// order. Variant B rows exist only where the problem defines a Hessian.
pub fn suite_entries(nesterov_nonsmooth_max_n: usize) -> Vec<SuiteEntry> {
    let mut sizes: Vec<(&'static str, Vec<usize>)> = vec![
        ("wolfe", vec![2]),
        ("rosenbrock", vec![2]),
        ("qmax", vec![20, 50]),
        ("hilbert", vec![10, 40, 80]),
        ("regression", vec![3]),
        ("cheb_exp", vec![2, 4, 6, 8]),
        ("cheb_exp_scaled", vec![2, 4, 6, 8]),
        ("nesterov_smooth", vec![3, 4, 8]),
        ("nesterov_nonsmooth", (2..=nesterov_nonsmooth_max_n).collect()),
        ("nesterov_abs", vec![2, 3]),
    ];
    sizes.retain(|(_, ns)| !ns.is_empty());
    let mut out = Vec::new();
    for (problem, ns) in sizes {
        for n in ns {
            let b = build(problem, Some(n)).expect("suite problems are valid");
            let variants: &[Variant] = if b.has_hessian() { &[Variant::A, Variant::B] } else { &[Variant::A] };
            for &variant in variants {
                for (label, _) in &b.starts {
                    out.push(SuiteEntry { problem, n, variant, x0: label.clone() });
                }
            }
        }
    }
    out
}

/// `filter` entries select a problem by exact name or by the prefix before an
/// underscore, so `cheb_exp` matches both exponential-sum problems.
pub fn matches_filter(problem: &str, filter: &[String]) -> bool {
    filter.is_empty()
        || filter
            .iter()
            .any(|f| problem == f || problem.strip_prefix(f.as_str()).is_some_and(|rest| rest.starts_with('_')))
}
