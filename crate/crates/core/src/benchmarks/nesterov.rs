use nalgebra::DMatrix;

use super::{reference_config, sign, Benchmark, Optimum, PublishedRow};
use crate::{Error, Oracle, Point, Result, T1Family, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NesterovKind {
    /// `1/4 (x1 - 1)^2 + sum (x_{i+1} - 2 x_i^2 + 1)^2`
    Smooth,
    /// `1/4 (x1 - 1)^2 + sum |x_{i+1} - 2 x_i^2 + 1|`
    Nonsmooth,
    /// `1/4 |x1 - 1| + sum |x_{i+1} - 2 |x_i| + 1|`
    AbsVariant,
}

/// Nesterov's Chebyshev-Rosenbrock chain, minimal at `(1, ..., 1)`.
pub struct Nesterov {
    kind: NesterovKind,
    n: usize,
}

impl Nesterov {
    pub fn new(kind: NesterovKind, n: usize) -> Self {
        Nesterov { kind, n }
    }

    fn residual(&self, x: &Point, i: usize) -> f64 {
        match self.kind {
            NesterovKind::AbsVariant => x[i + 1] - 2.0 * x[i].abs() + 1.0,
            _ => x[i + 1] - 2.0 * x[i] * x[i] + 1.0,
        }
    }
}

impl Oracle for Nesterov {
    fn dim(&self) -> usize {
        self.n
    }

    fn value(&self, x: &Point) -> f64 {
        let head = match self.kind {
            NesterovKind::AbsVariant => 0.25 * (x[0] - 1.0).abs(),
            _ => 0.25 * (x[0] - 1.0).powi(2),
        };
        let chain: f64 = (0..self.n - 1)
            .map(|i| {
                let r = self.residual(x, i);
                match self.kind {
                    NesterovKind::Smooth => r * r,
                    _ => r.abs(),
                }
            })
            .sum();
        head + chain
    }

    fn subgradient(&self, x: &Point) -> Point {
        let mut g = Point::zeros(self.n);
        g[0] = match self.kind {
            NesterovKind::AbsVariant => 0.25 * sign(x[0] - 1.0),
            _ => 0.5 * (x[0] - 1.0),
        };
        for i in 0..self.n - 1 {
            let r = self.residual(x, i);
            let (outer, inner) = match self.kind {
                NesterovKind::Smooth => (2.0 * r, -4.0 * x[i]),
                NesterovKind::Nonsmooth => (sign(r), -4.0 * x[i]),
                NesterovKind::AbsVariant => (sign(r), -2.0 * sign(x[i])),
            };
            g[i] += outer * inner;
            g[i + 1] += outer;
        }
        g
    }

    fn hessian(&self, x: &Point) -> Option<DMatrix<f64>> {
        if self.kind != NesterovKind::Smooth {
            return None;
        }
        let mut h = DMatrix::zeros(self.n, self.n);
        h[(0, 0)] = 0.5;
        for i in 0..self.n - 1 {
            let r = self.residual(x, i);
            h[(i, i)] += 32.0 * x[i] * x[i] - 8.0 * r;
            h[(i, i + 1)] -= 8.0 * x[i];
            h[(i + 1, i)] -= 8.0 * x[i];
            h[(i + 1, i + 1)] += 2.0;
        }
        Some(h)
    }
}

pub fn make_nesterov(kind: NesterovKind, n: usize) -> Result<Benchmark> {
    if n < 2 {
        return Err(Error::InvalidDimension("Nesterov chain needs n >= 2".into()));
    }
    let eps0 = 0.5;
    let mut config = reference_config(eps0);
    let mut x0 = Point::from_element(n, 1.0);
    x0[0] = -1.0;
    let mut starts = vec![("default".to_string(), x0.clone())];
    if kind == NesterovKind::Smooth {
        config.controls.t1 = T1Family::Linear { scale: 0.001 / eps0 };
        starts[0].1[0] = -1.05;
        starts.push(("hat".to_string(), x0));
    }

    let row = |variant, it: u64, gr: u64, v: f64| PublishedRow {
        label: "(-1,1,...,1)",
        variant,
        iterations: Some(it),
        gradients: Some(gr),
        value: v,
    };
    let published = match (kind, n) {
        (NesterovKind::Smooth, 8) => vec![row(Variant::A, 16683, 124040, 4e-26), row(Variant::B, 4109, 4779, 0.0)],
        (NesterovKind::Smooth, 10) => {
            vec![row(Variant::A, 223639, 1773929, 6.4e-16), row(Variant::B, 31600, 37305, 9.9e-16)]
        }
        (NesterovKind::Nonsmooth, 3) => vec![row(Variant::A, 4365, 13691, 2.6e-15)],
        (NesterovKind::Nonsmooth, 4) => vec![row(Variant::A, 25766, 106714, 3.8e-10)],
        (NesterovKind::Nonsmooth, 5) => vec![row(Variant::A, 219886, 1124623, 1e-8)],
        _ => Vec::new(),
    };

    let name = match kind {
        NesterovKind::Smooth => "nesterov_smooth",
        NesterovKind::Nonsmooth => "nesterov_nonsmooth",
        NesterovKind::AbsVariant => "nesterov_abs",
    };
    Ok(Benchmark {
        name: name.into(),
        dim: n,
        oracle: Box::new(Nesterov::new(kind, n)),
        starts,
        config,
        optimum: Some(Optimum { minimizer: Some(Point::from_element(n, 1.0)), value: 0.0, exact: true }),
        published,
    })
}
