//! Smooth benchmarks: Rosenbrock, Hilbert quadratic form, nonlinear regression.

use nalgebra::DMatrix;

use super::{reference_config, Benchmark, Optimum, PublishedRow};
use crate::{Error, Oracle, Point, Result, Variant};

/// `(1 - x)^2 + 100 (y - x^2)^2`
pub struct Rosenbrock;

impl Oracle for Rosenbrock {
    fn dim(&self) -> usize {
        2
    }

    fn value(&self, p: &Point) -> f64 {
        let (x, y) = (p[0], p[1]);
        (1.0 - x).powi(2) + 100.0 * (y - x * x).powi(2)
    }

    fn subgradient(&self, p: &Point) -> Point {
        let (x, y) = (p[0], p[1]);
        let r = y - x * x;
        Point::from_column_slice(&[-2.0 * (1.0 - x) - 400.0 * x * r, 200.0 * r])
    }

    fn hessian(&self, p: &Point) -> Option<DMatrix<f64>> {
        let (x, y) = (p[0], p[1]);
        Some(DMatrix::from_row_slice(2, 2, &[2.0 - 400.0 * (y - x * x) + 800.0 * x * x, -400.0 * x, -400.0 * x, 200.0]))
    }
}

pub fn make_rosenbrock() -> Benchmark {
    Benchmark {
        name: "rosenbrock".into(),
        dim: 2,
        oracle: Box::new(Rosenbrock),
        starts: vec![("default".into(), Point::from_column_slice(&[-1.9, 2.0]))],
        config: reference_config(1.5),
        optimum: Some(Optimum { minimizer: Some(Point::from_column_slice(&[1.0, 1.0])), value: 0.0, exact: true }),
        published: vec![
            PublishedRow {
                label: "(-1.9,2)",
                variant: Variant::A,
                iterations: Some(14),
                gradients: Some(29),
                value: 1.74e-6,
            },
            PublishedRow {
                label: "(-1.9,2)",
                variant: Variant::A,
                iterations: Some(19),
                gradients: Some(37),
                value: 2.25e-9,
            },
            PublishedRow {
                label: "(-1.9,2)",
                variant: Variant::A,
                iterations: Some(29),
                gradients: Some(55),
                value: 1.26e-18,
            },
            PublishedRow {
                label: "(-1.9,2)",
                variant: Variant::B,
                iterations: Some(12),
                gradients: Some(20),
                value: 0.0,
            },
        ],
    }
}

/// `x^T A x` with the Hilbert matrix `A_ij = 1 / (i + j - 1)`.
pub struct Hilbert {
    matrix: DMatrix<f64>,
}

impl Hilbert {
    pub fn new(n: usize) -> Self {
        Hilbert { matrix: DMatrix::from_fn(n, n, |i, j| 1.0 / (i + j + 1) as f64) }
    }
}

impl Oracle for Hilbert {
    fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn value(&self, x: &Point) -> f64 {
        x.dot(&(&self.matrix * x))
    }

    fn subgradient(&self, x: &Point) -> Point {
        (&self.matrix * x) * 2.0
    }

    fn hessian(&self, _x: &Point) -> Option<DMatrix<f64>> {
        Some(&self.matrix * 2.0)
    }
}

pub fn make_hilbert(n: usize) -> Result<Benchmark> {
    if n == 0 {
        return Err(Error::InvalidDimension("Hilbert needs n >= 1".into()));
    }
    let row = |it: u64, gr: u64, v: f64| PublishedRow {
        label: "(4/1,...,4/n)",
        variant: Variant::A,
        iterations: Some(it),
        gradients: Some(gr),
        value: v,
    };
    let published = match n {
        10 => vec![row(40, 58, 7.0e-10), row(100, 123, 4.6e-13)],
        40 => vec![row(40, 69, 2.2e-10), row(100, 176, 3.3e-14)],
        80 => vec![row(40, 77, 3.8e-10), row(100, 194, 3.0e-14)],
        _ => Vec::new(),
    };
    Ok(Benchmark {
        name: "hilbert".into(),
        dim: n,
        oracle: Box::new(Hilbert::new(n)),
        starts: vec![("default".into(), Point::from_fn(n, |i, _| 4.0 / (i + 1) as f64))],
        config: reference_config((n as f64).sqrt()),
        optimum: Some(Optimum { minimizer: Some(Point::zeros(n)), value: 0.0, exact: true }),
        published,
    })
}

/// Observations of the exponential regression model, `i = 1..10`.
pub const REGRESSION_ETA: [f64; 10] = [1.0, 1.1, 1.2, 1.35, 1.55, 1.75, 2.5, 3.0, 3.7, 4.5];

/// `sum_i (x1 e^{i x2} + x3 - eta_i)^2`
pub struct Regression;

impl Regression {
    fn terms(p: &Point) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        REGRESSION_ETA.iter().enumerate().map(move |(idx, eta)| {
            let i = (idx + 1) as f64;
            let e = (i * p[1]).exp();
            (i, e, p[0] * e + p[2] - eta)
        })
    }
}

impl Oracle for Regression {
    fn dim(&self) -> usize {
        3
    }

    fn value(&self, p: &Point) -> f64 {
        Self::terms(p).map(|(_, _, r)| r * r).sum()
    }

    fn subgradient(&self, p: &Point) -> Point {
        let mut g = Point::zeros(3);
        for (i, e, r) in Self::terms(p) {
            g[0] += 2.0 * r * e;
            g[1] += 2.0 * r * p[0] * i * e;
            g[2] += 2.0 * r;
        }
        g
    }

    fn hessian(&self, p: &Point) -> Option<DMatrix<f64>> {
        let mut h = DMatrix::zeros(3, 3);
        for (i, e, r) in Self::terms(p) {
            let j = Point::from_column_slice(&[e, p[0] * i * e, 1.0]);
            h += &j * j.transpose() * 2.0;
            h[(0, 1)] += 2.0 * r * i * e;
            h[(1, 0)] += 2.0 * r * i * e;
            h[(1, 1)] += 2.0 * r * p[0] * i * i * e;
        }
        Some(h)
    }
}

pub fn make_regression() -> Benchmark {
    Benchmark {
        name: "regression".into(),
        dim: 3,
        oracle: Box::new(Regression),
        starts: vec![("zeros".into(), Point::zeros(3)), ("ones".into(), Point::from_element(3, 1.0))],
        config: reference_config(0.5),
        optimum: Some(Optimum {
            minimizer: Some(Point::from_column_slice(&[0.270, 0.269, 0.592])),
            value: 0.0861942,
            exact: false,
        }),
        published: vec![
            PublishedRow {
                label: "(0,0,0)",
                variant: Variant::A,
                iterations: Some(56),
                gradients: Some(130),
                value: 0.0861942,
            },
            PublishedRow {
                label: "(1,1,1)",
                variant: Variant::A,
                iterations: Some(42),
                gradients: Some(102),
                value: 0.0861942,
            },
            PublishedRow {
                label: "(0,0,0)",
                variant: Variant::B,
                iterations: Some(70),
                gradients: Some(194),
                value: 0.0861942,
            },
            PublishedRow {
                label: "(1,1,1)",
                variant: Variant::B,
                iterations: Some(49),
                gradients: Some(137),
                value: 0.0861942,
            },
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::testutil::check_gradient;
    use approx::assert_relative_eq;
    use rand::Rng;

    fn pt(v: &[f64]) -> Point {
        Point::from_column_slice(v)
    }

    /// Central differences of the gradient, column by column.
    fn fd_hessian(o: &dyn Oracle, x: &Point) -> DMatrix<f64> {
        let n = o.dim();
        let t = 1e-5;
        DMatrix::from_fn(n, n, |i, j| {
            let mut e = Point::zeros(n);
            e[j] = t;
            (o.subgradient(&(x + &e))[i] - o.subgradient(&(x - &e))[i]) / (2.0 * t)
        })
    }

    #[test]
    fn rosenbrock_values() {
        assert_eq!(Rosenbrock.value(&pt(&[1.0, 1.0])), 0.0);
        assert_eq!(Rosenbrock.subgradient(&pt(&[1.0, 1.0])), pt(&[0.0, 0.0]));
        assert_eq!(Rosenbrock.value(&pt(&[0.0, 0.0])), 1.0);
        // -2 (2.9) - 400 (-1.9) (2 - 3.61) = -5.8 - 1223.6, 200 (2 - 3.61) = -322
        let g = Rosenbrock.subgradient(&pt(&[-1.9, 2.0]));
        assert_relative_eq!(g, pt(&[-1229.4, -322.0]), max_relative = 1e-12);
    }

    #[test]
    fn hilbert_values() {
        let h = Hilbert::new(2);
        assert_eq!(h.value(&pt(&[0.0, 0.0])), 0.0);
        assert_relative_eq!(h.value(&pt(&[1.0, 1.0])), 7.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(h.subgradient(&pt(&[1.0, 0.0])), pt(&[2.0, 1.0]), epsilon = 1e-15);
        let b = make_hilbert(10).unwrap();
        assert_eq!(b.config.params.eps0, 10f64.sqrt());
        assert_eq!(b.starts[0].1[3], 1.0);
    }

    #[test]
    fn regression_values() {
        let zero = Point::zeros(3);
        assert_relative_eq!(Regression.value(&zero), 60.1275, epsilon = 1e-12);
        let eta_sum: f64 = REGRESSION_ETA.iter().sum();
        assert_relative_eq!(eta_sum, 21.65, epsilon = 1e-12);
        assert_relative_eq!(Regression.subgradient(&zero)[2], -43.3, epsilon = 1e-12);
        let near = pt(&[0.270, 0.269, 0.592]);
        assert!((Regression.value(&near) - 0.0861942).abs() < 1e-3);
    }

    #[test]
    fn gradients_and_hessians_match_differences() {
        let oracles: [(&dyn Oracle, f64); 3] = [(&Rosenbrock, 2.0), (&Hilbert::new(5), 3.0), (&Regression, 0.3)];
        for (o, span) in oracles {
            check_gradient(o, 1000, 3, 1e-5, |rng| Point::from_fn(o.dim(), |_, _| rng.gen_range(-span..span)));
            let x = Point::from_fn(o.dim(), |i, _| 0.1 * (i as f64 + 1.0));
            let h = o.hessian(&x).unwrap();
            assert_relative_eq!(h, fd_hessian(o, &x), max_relative = 1e-6, epsilon = 1e-6);
            assert_relative_eq!(h.clone(), h.transpose(), epsilon = 1e-12);
        }
    }
}
