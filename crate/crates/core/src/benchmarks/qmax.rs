use super::{reference_config, Benchmark, Optimum, PublishedRow};
use crate::{Error, Oracle, Point, Result, T1Family, Variant};

/// `f(x) = max_i x_i^2`
pub struct QMax {
    n: usize,
}

impl QMax {
    /// Smallest index attaining the maximum of `x_i^2`.
    fn argmax(x: &Point) -> usize {
        let mut best = 0;
        for i in 1..x.len() {
            if x[i] * x[i] > x[best] * x[best] {
                best = i;
            }
        }
        best
    }
}

impl Oracle for QMax {
    fn dim(&self) -> usize {
        self.n
    }

    fn value(&self, x: &Point) -> f64 {
        x.iter().map(|v| v * v).fold(0.0, f64::max)
    }

    fn subgradient(&self, x: &Point) -> Point {
        let i = Self::argmax(x);
        let mut g = Point::zeros(self.n);
        g[i] = 2.0 * x[i];
        g
    }
}

/// Starting points `u+ = (1, ..., n)`, `v = 0.1 u+` and, for even `n`,
/// `u± = (1, ..., n/2, -(n/2 + 1), ..., -n)`.
pub fn make_qmax(n: usize) -> Result<Benchmark> {
    if n == 0 {
        return Err(Error::InvalidDimension("q-max needs n >= 1".into()));
    }
    let u_plus = Point::from_fn(n, |i, _| (i + 1) as f64);
    let mut starts = vec![("u+".to_string(), u_plus.clone()), ("v".to_string(), &u_plus * 0.1)];
    if n.is_multiple_of(2) {
        let u_pm = Point::from_fn(n, |i, _| if i < n / 2 { (i + 1) as f64 } else { -((i + 1) as f64) });
        starts.push(("u+-".to_string(), u_pm));
    }

    let eps0 = 0.5;
    let mut config = reference_config(eps0);
    config.controls.t1 = T1Family::Linear { scale: 15.0 / eps0 };

    let published = match n {
        20 => vec![
            PublishedRow {
                label: "u+, u+-",
                variant: Variant::A,
                iterations: Some(142),
                gradients: Some(246),
                value: 1.4e-10,
            },
            PublishedRow {
                label: "v",
                variant: Variant::A,
                iterations: Some(142),
                gradients: Some(246),
                value: 1.4e-12,
            },
        ],
        50 => vec![
            PublishedRow {
                label: "u+, u+-",
                variant: Variant::A,
                iterations: Some(126),
                gradients: Some(311),
                value: 9.6e-6,
            },
            PublishedRow {
                label: "v",
                variant: Variant::A,
                iterations: Some(126),
                gradients: Some(311),
                value: 9.6e-8,
            },
            PublishedRow {
                label: "u+, u+-",
                variant: Variant::A,
                iterations: Some(175),
                gradients: Some(452),
                value: 1.9e-9,
            },
            PublishedRow {
                label: "u+, u+-",
                variant: Variant::A,
                iterations: Some(200),
                gradients: Some(537),
                value: 2.0e-11,
            },
        ],
        _ => Vec::new(),
    };

    Ok(Benchmark {
        name: "qmax".into(),
        dim: n,
        oracle: Box::new(QMax { n }),
        starts,
        config,
        optimum: Some(Optimum { minimizer: Some(Point::zeros(n)), value: 0.0, exact: true }),
        published,
    })
}
