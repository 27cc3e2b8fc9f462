//! Control functions steering the null-step threshold (`T1`), the radius
//! shrink on null steps (`T2`), and the fresh radius chosen at the start of
//! every outer iteration (`G`).
//!
//! Only named families are offered, so the structural requirements (both
//! `T1` and `T2` non-decreasing and positive, `T1(t) -> 0` as `t -> 0`,
//! iterates of `T2` vanishing, and `G` having property (a) or (b) below) can be
//! checked from the family parameters alone.
//!
//! Property (a): `G(x_k, y_k) -> 0` forces `x_k -> 0`.
//! Property (b): for every `x0 > 0` there is `y0` with `G(x, y) >= y` whenever
//! `x > x0` and `y < y0`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Null-step threshold family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum T1Family {
    /// `T1(x) = scale * x`
    Linear { scale: f64 },
    /// `T1(x) = scale * sqrt(x)`
    Sqrt { scale: f64 },
}

/// Radius shrink family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum T2Family {
    /// `T2(x) = alpha * x` with `alpha` in `(0, 1)`
    Geometric { alpha: f64 },
    /// `T2(x) = x / (1 + x)`
    Rational,
}

/// Fresh-radius family `G(x, y)` where `x` is the norm of the current
/// subgradient and `y` the radius carried over from the previous iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GFamily {
    /// `G(x, y) = y`
    Radius,
    /// `G(x, y) = alpha * y`, `alpha >= 1`
    ScaledRadius { alpha: f64 },
    /// `G(x, y) = x`
    Norm,
    /// `G(x, y) = max(alpha, y)`
    MaxConst { alpha: f64 },
    /// `G(x, y) = min(alpha, y)`
    MinConst { alpha: f64 },
    /// `G(x, y) = alpha`
    Constant { alpha: f64 },
}

/// Which of the two admissibility properties a `G` family satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GProperty {
    /// Small `G` forces a small first argument.
    A,
    /// `G(x, y) >= y` for small `y` and `x` bounded away from zero.
    B,
}

fn check_arg(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} requires a positive argument, got {x}")))
    }
}

impl T1Family {
    pub fn eval(&self, x: f64) -> Result<f64> {
        check_arg("t1", x)?;
        Ok(match *self {
            T1Family::Linear { scale } => scale * x,
            T1Family::Sqrt { scale } => scale * x.sqrt(),
        })
    }

    fn violations(&self, out: &mut Vec<String>) {
        let scale = match *self {
            T1Family::Linear { scale } | T1Family::Sqrt { scale } => scale,
        };
        if !(scale > 0.0 && scale.is_finite()) {
            out.push("t1 scale must be positive".into());
        }
    }
}

impl T2Family {
    pub fn eval(&self, x: f64) -> Result<f64> {
        check_arg("t2", x)?;
        Ok(match *self {
            T2Family::Geometric { alpha } => alpha * x,
            T2Family::Rational => x / (1.0 + x),
        })
    }

    fn violations(&self, out: &mut Vec<String>) {
        if let T2Family::Geometric { alpha } = *self {
            if !(alpha > 0.0) {
                out.push("t2 factor must be positive".into());
            } else if !(alpha < 1.0) {
                out.push("t2 iterates must vanish".into());
            }
        }
    }
}

impl GFamily {
    pub fn eval(&self, norm: f64, radius: f64) -> Result<f64> {
        check_arg("g", norm)?;
        check_arg("g", radius)?;
        Ok(match *self {
            GFamily::Radius => radius,
            GFamily::ScaledRadius { alpha } => alpha * radius,
            GFamily::Norm => norm,
            GFamily::MaxConst { alpha } => alpha.max(radius),
            GFamily::MinConst { alpha } => alpha.min(radius),
            GFamily::Constant { alpha } => alpha,
        })
    }

    pub fn property(&self) -> GProperty {
        match self {
            GFamily::Radius | GFamily::ScaledRadius { .. } | GFamily::MinConst { .. } => GProperty::B,
            GFamily::Norm | GFamily::MaxConst { .. } | GFamily::Constant { .. } => GProperty::A,
        }
    }

    fn violations(&self, out: &mut Vec<String>) {
        match *self {
            GFamily::Radius | GFamily::Norm => {}
            GFamily::ScaledRadius { alpha } => {
                if !(alpha >= 1.0 && alpha.is_finite()) {
                    out.push("g scaled-radius factor must be at least 1".into());
                }
            }
            GFamily::MaxConst { alpha } | GFamily::MinConst { alpha } | GFamily::Constant { alpha } => {
                if !(alpha > 0.0 && alpha.is_finite()) {
                    out.push("g constant must be positive".into());
                }
            }
        }
    }
}

/// The three control functions of one solver configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Controls {
    pub t1: T1Family,
    pub t2: T2Family,
    pub g: GFamily,
}

impl Controls {
    /// Euclidean defaults for initial radius `eps0`: `T1(x) = x / eps0`,
    /// `T2(x) = 0.35 x`, `G(x, y) = y`.
    pub fn standard(eps0: f64) -> Self {
        Controls {
            t1: T1Family::Linear { scale: 1.0 / eps0 },
            t2: T2Family::Geometric { alpha: 0.35 },
            g: GFamily::Radius,
        }
    }

    /// Variable-metric defaults: `G(x, y) = x` and `T1(x) = x / 2 < x`.
    pub fn variable_metric() -> Self {
        Controls { t1: T1Family::Linear { scale: 0.5 }, t2: T2Family::Geometric { alpha: 0.35 }, g: GFamily::Norm }
    }

    pub(crate) fn violations(&self, out: &mut Vec<String>) {
        self.t1.violations(out);
        self.t2.violations(out);
        self.g.violations(out);
    }
}
