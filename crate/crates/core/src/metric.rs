//! Symmetric positive-definite metrics `||x||_k = ||A x||`.
//!
//! A subgradient computed in Euclidean coordinates `g` is turned into its
//! representer `a = A^-2 g` with respect to the metric, so that
//! `<a, h>_k = <A a, A h> = <g, h>` for every `h`. All inverse applications go
//! through the stored eigendecomposition; no explicit inverse is ever formed.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::{Error, Point, Result};

/// What to do when a candidate matrix has no positive eigenvalue at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fallback {
    /// Replace the candidate by the identity.
    Identity,
    /// Clamp every eigenvalue to the floor anyway.
    Clamp,
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Identity(usize),
    Spectral { matrix: DMatrix<f64>, vectors: DMatrix<f64>, values: DVector<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    repr: Repr,
}

impl Metric {
    pub fn identity(n: usize) -> Self {
        Metric { repr: Repr::Identity(n) }
    }

    /// Build a metric from a symmetric candidate by clamping its eigenvalues
    /// from below at `floor`.
    pub fn regularize_spd(candidate: &DMatrix<f64>, floor: f64, fallback: Fallback) -> Result<Self> {
        let eig = symmetric_eigen(candidate, floor)?;
        if fallback == Fallback::Identity && eig.eigenvalues.iter().all(|&l| l <= 0.0) {
            return Ok(Metric::identity(candidate.nrows()));
        }
        Ok(Self::spectral(eig.eigenvectors, eig.eigenvalues.map(|l| l.max(floor))))
    }

    /// Metric `A = |H|^{1/2}` from a Hessian `H`, with the eigenvalues of `|H|`
    /// clamped at `rel_floor * (1 + ||H||_inf)`. Then `A^-2 g = |H|^-1 g`, a
    /// Newton step wherever `H` is positive definite. Falls back to the
    /// identity when `H` has no curvature above the floor.
    pub fn from_hessian(hessian: &DMatrix<f64>, rel_floor: f64) -> Result<Self> {
        let inf_norm = hessian.row_iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
        let floor = rel_floor * (1.0 + inf_norm);
        let eig = symmetric_eigen(hessian, floor)?;
        if eig.eigenvalues.iter().all(|l| l.abs() <= floor) {
            return Ok(Metric::identity(hessian.nrows()));
        }
        Ok(Self::spectral(eig.eigenvectors, eig.eigenvalues.map(|l| l.abs().max(floor).sqrt())))
    }

    fn spectral(vectors: DMatrix<f64>, values: DVector<f64>) -> Self {
        let matrix = &vectors * DMatrix::from_diagonal(&values) * vectors.transpose();
        Metric { repr: Repr::Spectral { matrix, vectors, values } }
    }

    pub fn dim(&self) -> usize {
        match &self.repr {
            Repr::Identity(n) => *n,
            Repr::Spectral { values, .. } => values.len(),
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.repr, Repr::Identity(_))
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        match &self.repr {
            Repr::Identity(n) => DMatrix::identity(*n, *n),
            Repr::Spectral { matrix, .. } => matrix.clone(),
        }
    }

    /// Ratio of the extreme eigenvalues of `A`.
    pub fn condition_number(&self) -> f64 {
        match &self.repr {
            Repr::Identity(_) => 1.0,
            Repr::Spectral { values, .. } => values.max() / values.min(),
        }
    }

    /// `C = max(||A||, ||A^-1||)`, so that `||x|| / C <= ||x||_k <= C ||x||`.
    pub fn equivalence_constant(&self) -> f64 {
        match &self.repr {
            Repr::Identity(_) => 1.0,
            Repr::Spectral { values, .. } => values.max().max(1.0 / values.min()),
        }
    }

    fn check(&self, x: &Point) -> Result<()> {
        if x.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() })
        }
    }

    /// `A x`
    pub fn apply(&self, x: &Point) -> Result<Point> {
        self.check(x)?;
        Ok(match &self.repr {
            Repr::Identity(_) => x.clone(),
            Repr::Spectral { matrix, .. } => matrix * x,
        })
    }

    /// `||A x||`
    pub fn norm(&self, x: &Point) -> Result<f64> {
        Ok(match &self.repr {
            Repr::Identity(_) => {
                self.check(x)?;
                x.norm()
            }
            Repr::Spectral { .. } => self.apply(x)?.norm(),
        })
    }

    /// `<A u, A v>`
    pub fn inner(&self, u: &Point, v: &Point) -> Result<f64> {
        Ok(match &self.repr {
            Repr::Identity(_) => {
                self.check(u)?;
                self.check(v)?;
                u.dot(v)
            }
            Repr::Spectral { .. } => self.apply(u)?.dot(&self.apply(v)?),
        })
    }

    /// Representer `A^-2 g` of the Euclidean subgradient `g`.
    pub fn representer(&self, g: &Point) -> Result<Point> {
        self.check(g)?;
        match &self.repr {
            Repr::Identity(_) => Ok(g.clone()),
            Repr::Spectral { vectors, values, .. } => {
                if values.iter().any(|&l| !(l > 0.0)) {
                    return Err(Error::SingularMetric);
                }
                let mut c = vectors.tr_mul(g);
                for (ci, l) in c.iter_mut().zip(values.iter()) {
                    *ci /= l * l;
                }
                Ok(vectors * c)
            }
        }
    }
}

fn symmetric_eigen(candidate: &DMatrix<f64>, floor: f64) -> Result<SymmetricEigen<f64, nalgebra::Dyn>> {
    let n = candidate.nrows();
    if candidate.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: candidate.ncols() });
    }
    if !(floor > 0.0 && floor.is_finite()) {
        return Err(Error::Domain(format!("eigenvalue floor must be positive, got {floor}")));
    }
    if candidate.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("metric candidate"));
    }
    let scale = candidate.amax().max(1.0);
    if (candidate - candidate.transpose()).amax() > 1e-12 * scale {
        return Err(Error::NotSymmetric);
    }
    Ok(SymmetricEigen::new((candidate + candidate.transpose()) * 0.5))
}
