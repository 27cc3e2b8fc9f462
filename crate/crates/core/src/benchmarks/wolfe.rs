use super::{reference_config, sign, Benchmark, Optimum, PublishedRow};
use crate::{Oracle, Point, Variant};

/// Wolfe's convex piecewise function on the plane, minimal at `(-1, 0)`.
pub struct Wolfe;

impl Oracle for Wolfe {
    fn dim(&self) -> usize {
        2
    }

    fn value(&self, p: &Point) -> f64 {
        let (x, y) = (p[0], p[1]);
        if x <= 0.0 {
            9.0 * x + 16.0 * y.abs() - x.powi(9)
        } else if x < y.abs() {
            9.0 * x + 16.0 * y.abs()
        } else {
            5.0 * (9.0 * x * x + 16.0 * y * y).sqrt()
        }
    }

    fn subgradient(&self, p: &Point) -> Point {
        let (x, y) = (p[0], p[1]);
        if x <= 0.0 {
            Point::from_column_slice(&[9.0 - 9.0 * x.powi(8), 16.0 * sign(y)])
        } else if x < y.abs() {
            Point::from_column_slice(&[9.0, 16.0 * sign(y)])
        } else {
            let r = (9.0 * x * x + 16.0 * y * y).sqrt();
            Point::from_column_slice(&[45.0 * x / r, 80.0 * y / r])
        }
    }
}

pub fn make_wolfe() -> Benchmark {
    Benchmark {
        name: "wolfe".into(),
        dim: 2,
        oracle: Box::new(Wolfe),
        starts: vec![("default".into(), Point::from_column_slice(&[5.0, 4.0]))],
        config: reference_config(0.9),
        optimum: Some(Optimum { minimizer: Some(Point::from_column_slice(&[-1.0, 0.0])), value: -8.0, exact: true }),
        published: vec![PublishedRow {
            label: "(5,4)",
            variant: Variant::A,
            iterations: Some(16),
            gradients: Some(28),
            value: -8.0 + 2.9e-12,
        }],
    }
}
