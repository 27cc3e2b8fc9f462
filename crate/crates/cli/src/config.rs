//! Solver configuration from the benchmark defaults, an optional JSON file
//! and command-line overrides, applied in that order.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use epsdescent::benchmarks::Benchmark;
use epsdescent::{Config, GFamily, LineSearchPolicy, T1Family, T2Family, Variant};

/// Gradient budget when neither the file nor `--max-grads` sets one.
pub const DEFAULT_MAX_GRADS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    A,
    B,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::A => Variant::A,
            VariantArg::B => Variant::B,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LineSearchArg {
    ArmijoExpand,
    FirstNonDecrease,
}

impl From<LineSearchArg> for LineSearchPolicy {
    fn from(v: LineSearchArg) -> Self {
        match v {
            LineSearchArg::ArmijoExpand => LineSearchPolicy::ArmijoExpand,
            LineSearchArg::FirstNonDecrease => LineSearchPolicy::FirstNonDecrease,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// JSON file with `params` and `controls` objects.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub eps0: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub delta_prime: Option<f64>,
    /// `T1(x) = scale * x`
    #[arg(long)]
    pub t1_scale: Option<f64>,
    /// `T2(x) = factor * x`
    #[arg(long)]
    pub t2_factor: Option<f64>,
    /// `radius`, `norm`, or `scaled-radius`, `max-const`, `min-const`,
    /// `constant` followed by `:alpha`.
    #[arg(long, value_parser = parse_g_family)]
    pub g_family: Option<GFamily>,
    #[arg(long, value_enum)]
    pub line_search: Option<LineSearchArg>,
    #[arg(long)]
    pub max_grads: Option<u64>,
    #[arg(long)]
    pub f_target: Option<f64>,
    #[arg(long)]
    pub gap_tol: Option<f64>,
}

pub fn parse_g_family(s: &str) -> Result<GFamily, String> {
    let (name, alpha) = match s.split_once(':') {
        Some((name, a)) => (name, Some(a.parse::<f64>().map_err(|e| format!("bad alpha {a:?}: {e}"))?)),
        None => (s, None),
    };
    let need = |alpha: Option<f64>| alpha.ok_or_else(|| format!("{name} needs `{name}:alpha`"));
    Ok(match name {
        "radius" => GFamily::Radius,
        "norm" => GFamily::Norm,
        "scaled-radius" => GFamily::ScaledRadius { alpha: need(alpha)? },
        "max-const" => GFamily::MaxConst { alpha: need(alpha)? },
        "min-const" => GFamily::MinConst { alpha: need(alpha)? },
        "constant" => GFamily::Constant { alpha: need(alpha)? },
        _ => return Err(format!("unknown G family {name:?}")),
    })
}

/// Final configuration for one run. Without an explicit target, runs on
/// problems with an exactly known optimum stop once within `gap_tol` of it.
pub fn resolve(bench: &Benchmark, variant: Variant, o: &Overrides) -> Result<Config, String> {
    let mut cfg = bench.config_for(variant);
    cfg.params.max_gradient_evals = DEFAULT_MAX_GRADS;
    if let Some(opt) = bench.optimum.as_ref().filter(|o| o.exact) {
        cfg.params.f_target = Some(opt.value);
    }
    if let Some(path) = &o.config {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        cfg = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        cfg.params.variant = variant;
    }
    let p = &mut cfg.params;
    if let Some(v) = o.eps0 {
        p.eps0 = v;
    }
    if let Some(v) = o.delta {
        p.delta = v;
    }
    if let Some(v) = o.delta_prime {
        p.delta_prime = v;
    }
    if let Some(v) = o.line_search {
        p.line_search = v.into();
    }
    if let Some(v) = o.max_grads {
        p.max_gradient_evals = v;
    }
    if let Some(v) = o.f_target {
        p.f_target = Some(v);
    }
    if let Some(v) = o.gap_tol {
        p.gap_tol = v;
    }
    if let Some(scale) = o.t1_scale {
        cfg.controls.t1 = T1Family::Linear { scale };
    }
    if let Some(alpha) = o.t2_factor {
        cfg.controls.t2 = T2Family::Geometric { alpha };
    }
    if let Some(g) = o.g_family {
        cfg.controls.g = g;
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use epsdescent::benchmarks::{make_regression, make_wolfe};

    #[test]
    fn g_family_names() {
        assert_eq!(parse_g_family("radius"), Ok(GFamily::Radius));
        assert_eq!(parse_g_family("max-const:0.5"), Ok(GFamily::MaxConst { alpha: 0.5 }));
        assert!(parse_g_family("constant").is_err());
        assert!(parse_g_family("other").is_err());
    }

    #[test]
    fn targets_and_overrides() {
        let wolfe = make_wolfe();
        let cfg = resolve(&wolfe, Variant::A, &Overrides::default()).unwrap();
        assert_eq!(cfg.params.f_target, Some(-8.0));
        assert_eq!(cfg.params.max_gradient_evals, DEFAULT_MAX_GRADS);

        let reg = resolve(&make_regression(), Variant::A, &Overrides::default()).unwrap();
        assert_eq!(reg.params.f_target, None);

        let o = Overrides { eps0: Some(2.0), t2_factor: Some(0.5), max_grads: Some(9), ..Overrides::default() };
        let cfg = resolve(&wolfe, Variant::A, &o).unwrap();
        assert_eq!(cfg.params.eps0, 2.0);
        assert_eq!(cfg.params.max_gradient_evals, 9);
        assert_eq!(cfg.controls.t2, T2Family::Geometric { alpha: 0.5 });

        let bad = Overrides { delta: Some(0.5), delta_prime: Some(0.4), ..Overrides::default() };
        assert!(resolve(&wolfe, Variant::A, &bad).unwrap_err().contains("delta < delta_prime"));
    }

    #[test]
    fn file_then_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.json");
        let mut base = make_wolfe().config.clone();
        base.params.eps0 = 0.25;
        base.params.gap_tol = 1e-3;
        std::fs::write(&path, serde_json::to_string(&base).unwrap()).unwrap();
        let o = Overrides { config: Some(path), gap_tol: Some(1e-6), ..Overrides::default() };
        let cfg = resolve(&make_wolfe(), Variant::A, &o).unwrap();
        assert_eq!(cfg.params.eps0, 0.25);
        assert_eq!(cfg.params.gap_tol, 1e-6);
    }
}
