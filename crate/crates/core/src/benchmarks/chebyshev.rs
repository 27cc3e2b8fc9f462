use super::{reference_config, Benchmark, Optimum, PublishedRow};
use crate::{Error, Oracle, Point, Result, T2Family, Variant};

pub const CHEB_GRID_SIZE: usize = 2001;

/// `t_i = 1 + 9 i / 2000` for `i = 0..=2000`.
pub fn cheb_grid() -> Vec<f64> {
    let last = (CHEB_GRID_SIZE - 1) as f64;
    (0..CHEB_GRID_SIZE).map(|i| 1.0 + 9.0 * i as f64 / last).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChebMode {
    /// Exponents `b_j`, perturbed starting point.
    PerturbedStart,
    /// Exponents `j b_j`, zero starting point.
    PerturbedFunction,
}

/// Uniform approximation of `1/t` on `[1, 10]` by `sum_j a_j exp(-b_j t)`,
/// discretized on [`cheb_grid`]. Coordinates are `(a_1..a_m, b_1..b_m)`.
pub struct ChebExp {
    m: usize,
    mode: ChebMode,
    grid: Vec<f64>,
}

impl ChebExp {
    pub fn new(m: usize, mode: ChebMode) -> Self {
        ChebExp { m, mode, grid: cheb_grid() }
    }

    fn rate(&self, x: &Point, j: usize) -> f64 {
        match self.mode {
            ChebMode::PerturbedStart => x[self.m + j],
            ChebMode::PerturbedFunction => (j + 1) as f64 * x[self.m + j],
        }
    }

    fn residual(&self, x: &Point, t: f64) -> f64 {
        1.0 / t - (0..self.m).map(|j| x[j] * (-self.rate(x, j) * t).exp()).sum::<f64>()
    }

    /// Smallest grid index maximizing `|h_i|` and the residual there.
    fn argmax(&self, x: &Point) -> (usize, f64) {
        let mut best = (0, self.residual(x, self.grid[0]));
        for (i, &t) in self.grid.iter().enumerate().skip(1) {
            let h = self.residual(x, t);
            if h.abs() > best.1.abs() {
                best = (i, h);
            }
        }
        best
    }
}

impl Oracle for ChebExp {
    fn dim(&self) -> usize {
        2 * self.m
    }

    fn value(&self, x: &Point) -> f64 {
        self.argmax(x).1.abs()
    }

    fn subgradient(&self, x: &Point) -> Point {
        let (i, h) = self.argmax(x);
        let t = self.grid[i];
        let s = if h >= 0.0 { 1.0 } else { -1.0 };
        let mut g = Point::zeros(2 * self.m);
        for j in 0..self.m {
            let e = (-self.rate(x, j) * t).exp();
            let scale = match self.mode {
                ChebMode::PerturbedStart => 1.0,
                ChebMode::PerturbedFunction => (j + 1) as f64,
            };
            g[j] = -s * e;
            g[self.m + j] = s * scale * x[j] * t * e;
        }
        g
    }
}

/// `n = 2m` unknowns. The perturbed-start mode also exposes the
/// unperturbed start `"zero"`, which leads to a symmetric saddle.
pub fn make_cheb_exp(m: usize, mode: ChebMode) -> Result<Benchmark> {
    if m == 0 {
        return Err(Error::InvalidDimension("exponential sum needs m >= 1".into()));
    }
    let n = 2 * m;
    let zero = Point::zeros(n);
    let starts = match mode {
        ChebMode::PerturbedStart => {
            let x0 = Point::from_fn(n, |k, _| {
                if k < m {
                    -0.001 * (2.0 * k as f64).powi(2)
                } else {
                    0.001 * (2.0 * (k - m) as f64 + 1.0).powi(2)
                }
            });
            vec![("perturbed".to_string(), x0), ("zero".to_string(), zero)]
        }
        ChebMode::PerturbedFunction => vec![("zero".to_string(), zero)],
    };

    let mut config = reference_config(5.0 * (m as f64).sqrt());
    config.controls.t2 = T2Family::Geometric { alpha: 0.1 };

    let reference = match n {
        2 => Some(8.55641e-2),
        4 => Some(8.75226e-3),
        6 => Some(7.14509e-4),
        8 => Some(5.57688e-5),
        _ => None,
    };
    let (it, gr) = match (mode, n) {
        (ChebMode::PerturbedStart, 2) => (10, 21),
        (ChebMode::PerturbedStart, 4) => (44, 124),
        (ChebMode::PerturbedStart, 6) => (95, 431),
        (ChebMode::PerturbedStart, 8) => (406, 2547),
        (ChebMode::PerturbedFunction, 2) => (14, 32),
        (ChebMode::PerturbedFunction, 4) => (36, 118),
        (ChebMode::PerturbedFunction, 6) => (90, 442),
        (ChebMode::PerturbedFunction, 8) => (381, 2512),
        _ => (0, 0),
    };
    let published = match (mode, reference) {
        (ChebMode::PerturbedStart, Some(v)) => vec![PublishedRow {
            label: "perturbed",
            variant: Variant::A,
            iterations: Some(it),
            gradients: Some(gr),
            value: v,
        }],
        (ChebMode::PerturbedFunction, Some(_)) => vec![PublishedRow {
            label: "zero",
            variant: Variant::A,
            iterations: Some(it),
            gradients: Some(gr),
            value: f64::NAN,
        }],
        _ => Vec::new(),
    };
    let optimum = match mode {
        ChebMode::PerturbedStart => reference.map(|value| Optimum { minimizer: None, value, exact: false }),
        ChebMode::PerturbedFunction => None,
    };

    Ok(Benchmark {
        name: "cheb_exp".into(),
        dim: n,
        oracle: Box::new(ChebExp::new(m, mode)),
        starts,
        config,
        optimum,
        published,
    })
}
