//! Norm-minimal point of the convex hull of a finite bundle.
//!
//! [`min_norm_point`] runs Wolfe's active-set algorithm on the transformed
//! points `z_i = A p_i`: a *corral* of affinely independent points is grown
//! by the most violating bundle element, and the minor cycle moves back into
//! the simplex whenever the affine minimizer of the corral leaves it.
//!
//! [`brute_force_min_norm`] is an independent reference that enumerates
//! simplex coefficients on a grid. It exists for testing.

use nalgebra::{DMatrix, DVector};

use crate::{Error, Metric, Point, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexSolution {
    /// One non-negative weight per bundle element, summing to one.
    pub coefficients: Vec<f64>,
    /// `sum_i coefficients[i] * bundle[i]`
    pub point: Point,
    /// Metric norm of `point`.
    pub norm: f64,
}

fn check_bundle(bundle: &[Point], metric: &Metric) -> Result<()> {
    if bundle.is_empty() {
        return Err(Error::EmptyBundle);
    }
    for p in bundle {
        if p.len() != metric.dim() {
            return Err(Error::DimensionMismatch { expected: metric.dim(), found: p.len() });
        }
    }
    Ok(())
}

fn combine(bundle: &[Point], lambda: &[f64]) -> Point {
    let mut out = Point::zeros(bundle[0].len());
    for (p, &l) in bundle.iter().zip(lambda) {
        if l != 0.0 {
            out.axpy(l, p, 1.0);
        }
    }
    out
}

/// Norm-minimal element of `conv(bundle)` in the metric.
pub fn min_norm_point(bundle: &[Point], metric: &Metric, tol: f64) -> Result<SimplexSolution> {
    check_bundle(bundle, metric)?;
    let z: Vec<Point> = bundle.iter().map(|p| metric.apply(p)).collect::<Result<_>>()?;
    let lambda = wolfe(&z, tol);
    let point = combine(bundle, &lambda);
    let norm = metric.norm(&point)?;
    Ok(SimplexSolution { coefficients: lambda, point, norm })
}

/// Affine combination of `pts` (weights summing to one) of minimal norm.
fn affine_minimizer(pts: &[&Point]) -> Vec<f64> {
    let s = pts.len();
    if s == 1 {
        return vec![1.0];
    }
    let base = pts[0];
    let n = base.len();
    let d = DMatrix::from_fn(n, s - 1, |r, c| pts[c + 1][r] - base[r]);
    let svd = d.svd(true, true);
    let cutoff = 1e-13 * svd.singular_values.max();
    let nu: DVector<f64> = match svd.solve(&(-base), cutoff) {
        Ok(nu) => nu,
        Err(_) => DVector::zeros(s - 1),
    };
    let mut mu = Vec::with_capacity(s);
    mu.push(1.0 - nu.sum());
    mu.extend(nu.iter().copied());
    mu
}

fn wolfe(z: &[Point], tol: f64) -> Vec<f64> {
    let k = z.len();
    let sq: Vec<f64> = z.iter().map(|p| p.norm_squared()).collect();
    let max_norm = sq.iter().fold(0.0f64, |a, &b| a.max(b)).sqrt();

    let start = (0..k).min_by(|&a, &b| sq[a].total_cmp(&sq[b])).unwrap();
    let mut corral = vec![start];
    let mut weights = vec![1.0];
    let mut x = z[start].clone();

    let max_major = 50 + 10 * k;
    for _ in 0..max_major {
        let xx = x.norm_squared();
        let (j, best) = (0..k).map(|j| (j, x.dot(&z[j]))).min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
        let gap = xx - best;
        // round-off floor of the dot products involved
        let floor = 64.0 * f64::EPSILON * x.norm() * max_norm;
        if gap <= tol * (1.0 + xx) || gap <= floor || corral.contains(&j) {
            break;
        }
        corral.push(j);
        weights.push(0.0);

        for _ in 0..=corral.len() {
            let pts: Vec<&Point> = corral.iter().map(|&c| &z[c]).collect();
            let mu = affine_minimizer(&pts);
            if mu.iter().all(|&m| m > 0.0) {
                weights = mu;
                break;
            }
            // largest step from the current weights towards mu staying feasible
            let mut theta = 1.0;
            let mut hit = 0;
            for (i, (&w, &m)) in weights.iter().zip(&mu).enumerate() {
                if m <= 0.0 {
                    let t = if w - m > 0.0 { w / (w - m) } else { 0.0 };
                    if t < theta {
                        theta = t;
                        hit = i;
                    }
                }
            }
            for (w, m) in weights.iter_mut().zip(&mu) {
                *w += theta * (m - *w);
            }
            weights[hit] = 0.0;
            let mut i = 0;
            while i < corral.len() {
                if weights[i] <= 0.0 {
                    corral.remove(i);
                    weights.remove(i);
                } else {
                    i += 1;
                }
            }
            let total: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= total);
        }

        x = Point::zeros(z[0].len());
        for (&c, &w) in corral.iter().zip(&weights) {
            x.axpy(w, &z[c], 1.0);
        }
    }

    let mut lambda = vec![0.0; k];
    for (&c, &w) in corral.iter().zip(&weights) {
        lambda[c] += w;
    }
    lambda
}

/// Exact min-norm point of the triangle with vertices `c + r * q_i`.
/// Returns the squared norm and barycentric weights.
fn triangle_min(c: &Point, r: f64, q: [&Point; 3]) -> (f64, [f64; 3]) {
    let v: Vec<Point> = q.iter().map(|qi| c + *qi * r).collect();
    let mut best = (f64::INFINITY, [0.0; 3]);
    let mut consider = |w: [f64; 3]| {
        let p = &v[0] * w[0] + &v[1] * w[1] + &v[2] * w[2];
        let n2 = p.norm_squared();
        if n2 < best.0 {
            best = (n2, w);
        }
    };
    // edges, vertices included via clamping
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        let d = &v[b] - &v[a];
        let dd = d.norm_squared();
        let t = if dd > 0.0 { (-v[a].dot(&d) / dd).clamp(0.0, 1.0) } else { 0.0 };
        let mut w = [0.0; 3];
        w[a] = 1.0 - t;
        w[b] = t;
        consider(w);
    }
    // interior stationary point of the affine hull
    let e1 = &v[1] - &v[0];
    let e2 = &v[2] - &v[0];
    let (g11, g12, g22) = (e1.dot(&e1), e1.dot(&e2), e2.dot(&e2));
    let det = g11 * g22 - g12 * g12;
    if det > 1e-14 * g11 * g22 && det > 0.0 {
        let r1 = -v[0].dot(&e1);
        let r2 = -v[0].dot(&e2);
        let s = (r1 * g22 - r2 * g12) / det;
        let t = (g11 * r2 - g12 * r1) / det;
        if s >= 0.0 && t >= 0.0 && s + t <= 1.0 {
            consider([1.0 - s - t, s, t]);
        }
    }
    best
}

/// Grid-enumeration reference for bundles of at most five points.
///
/// Leading coefficients run over multiples of `1 / grid`; the mass left for
/// the last three points is placed optimally by an exact triangle solve, so
/// bundles of up to three points are solved exactly.
pub fn brute_force_min_norm(bundle: &[Point], metric: &Metric, grid: usize) -> Result<Point> {
    check_bundle(bundle, metric)?;
    if bundle.len() > 5 {
        return Err(Error::BundleTooLarge(bundle.len()));
    }
    if grid == 0 {
        return Err(Error::Domain("grid must be positive".into()));
    }
    let z: Vec<Point> = bundle.iter().map(|p| metric.apply(p)).collect::<Result<_>>()?;
    let n = z[0].len();
    let k = z.len();

    let lambda: Vec<f64> = match k {
        1 => vec![1.0],
        2 => {
            let (_, w) = triangle_min(&Point::zeros(n), 1.0, [&z[0], &z[1], &z[1]]);
            vec![w[0], w[1] + w[2]]
        }
        _ => {
            let lead = k - 3;
            let h = 1.0 / grid as f64;
            let mut best = (f64::INFINITY, vec![0.0; k]);
            let mut idx = vec![0usize; lead];
            loop {
                let used: usize = idx.iter().sum();
                if used <= grid {
                    let mut c = Point::zeros(n);
                    for (i, &m) in idx.iter().enumerate() {
                        c.axpy(m as f64 * h, &z[i], 1.0);
                    }
                    let r = (grid - used) as f64 * h;
                    let (n2, w) = triangle_min(&c, r, [&z[lead], &z[lead + 1], &z[lead + 2]]);
                    if n2 < best.0 {
                        let mut l: Vec<f64> = idx.iter().map(|&m| m as f64 * h).collect();
                        l.extend(w.iter().map(|wi| wi * r));
                        best = (n2, l);
                    }
                }
                // odometer over the leading coefficients
                let mut pos = 0;
                loop {
                    if pos == lead {
                        return Ok(combine(bundle, &best.1));
                    }
                    idx[pos] += 1;
                    if idx[pos] <= grid {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
            }
        }
    };
    Ok(combine(bundle, &lambda))
}
