use std::cell::Cell;

use nalgebra::{DMatrix, DVector};

use crate::{Error, Result};

/// A point of the search space, also used for (representers of) subgradients.
pub type Point = DVector<f64>;

/// User-supplied evaluator of a locally Lipschitz function.
///
/// Both methods must be deterministic and free of side effects. `subgradient`
/// returns one element of the Clarke generalized gradient at `x`, expressed in
/// Euclidean coordinates.
pub trait Oracle: Send + Sync {
    fn dim(&self) -> usize;

    fn value(&self, x: &Point) -> f64;

    fn subgradient(&self, x: &Point) -> Point;

    /// Second derivative at `x` when the function is smooth there.
    fn hessian(&self, _x: &Point) -> Option<DMatrix<f64>> {
        None
    }
}

/// Wraps closures as an [`Oracle`].
pub struct FnOracle<V, G> {
    dim: usize,
    value: V,
    subgradient: G,
}

impl<V, G> FnOracle<V, G>
where
    V: Fn(&Point) -> f64 + Send + Sync,
    G: Fn(&Point) -> Point + Send + Sync,
{
    pub fn new(dim: usize, value: V, subgradient: G) -> Self {
        FnOracle { dim, value, subgradient }
    }
}

impl<V, G> Oracle for FnOracle<V, G>
where
    V: Fn(&Point) -> f64 + Send + Sync,
    G: Fn(&Point) -> Point + Send + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &Point) -> f64 {
        (self.value)(x)
    }

    fn subgradient(&self, x: &Point) -> Point {
        (self.subgradient)(x)
    }
}

/// Counting, budget-enforcing view of an oracle for the duration of one solve.
///
/// Every call to the underlying oracle goes through here, so the counters are
/// the single source of truth for evaluation statistics.
pub struct Evaluator<'a> {
    oracle: &'a dyn Oracle,
    gradient_evals: Cell<u64>,
    value_evals: Cell<u64>,
    max_gradient_evals: u64,
}

impl<'a> Evaluator<'a> {
    pub fn new(oracle: &'a dyn Oracle, max_gradient_evals: u64) -> Self {
        Evaluator { oracle, gradient_evals: Cell::new(0), value_evals: Cell::new(0), max_gradient_evals }
    }

    pub fn unlimited(oracle: &'a dyn Oracle) -> Self {
        Self::new(oracle, u64::MAX)
    }

    pub fn dim(&self) -> usize {
        self.oracle.dim()
    }

    pub fn gradient_evals(&self) -> u64 {
        self.gradient_evals.get()
    }

    pub fn value_evals(&self) -> u64 {
        self.value_evals.get()
    }

    /// Function value; `+inf` (overflow at a trial point) is passed through
    /// and simply never satisfies a descent test.
    pub fn value(&self, x: &Point) -> Result<f64> {
        self.value_evals.set(self.value_evals.get() + 1);
        let v = self.oracle.value(x);
        if v.is_finite() || v == f64::INFINITY {
            Ok(v)
        } else {
            Err(Error::NonFinite("oracle value"))
        }
    }

    pub fn subgradient(&self, x: &Point) -> Result<Point> {
        let used = self.gradient_evals.get();
        if used >= self.max_gradient_evals {
            return Err(Error::GradientBudgetExhausted(self.max_gradient_evals));
        }
        self.gradient_evals.set(used + 1);
        let g = self.oracle.subgradient(x);
        if g.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: g.len() });
        }
        if g.iter().all(|v| v.is_finite()) {
            Ok(g)
        } else {
            Err(Error::NonFinite("oracle subgradient"))
        }
    }

    pub fn hessian(&self, x: &Point) -> Option<DMatrix<f64>> {
        self.oracle.hessian(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abs_oracle() -> impl Oracle {
        FnOracle::new(
            1,
            |x: &Point| x[0].abs(),
            |x: &Point| Point::from_element(1, if x[0] >= 0.0 { 1.0 } else { -1.0 }),
        )
    }

    #[test]
    fn counts_and_budget() {
        let o = abs_oracle();
        let ev = Evaluator::new(&o, 2);
        let x = Point::from_element(1, -3.0);
        assert_eq!(ev.value(&x).unwrap(), 3.0);
        assert_eq!(ev.subgradient(&x).unwrap()[0], -1.0);
        assert_eq!(ev.subgradient(&x).unwrap()[0], -1.0);
        assert_eq!(ev.subgradient(&x), Err(Error::GradientBudgetExhausted(2)));
        assert_eq!(ev.gradient_evals(), 2);
        assert_eq!(ev.value_evals(), 1);
    }

    #[test]
    fn rejects_bad_oracle_output() {
        let o = FnOracle::new(2, |_: &Point| f64::NAN, |_: &Point| Point::zeros(3));
        let ev = Evaluator::unlimited(&o);
        let x = Point::zeros(2);
        assert_eq!(ev.value(&x), Err(Error::NonFinite("oracle value")));
        assert_eq!(ev.subgradient(&x), Err(Error::DimensionMismatch { expected: 2, found: 3 }));
        let neg = FnOracle::new(1, |_: &Point| f64::NEG_INFINITY, |_: &Point| Point::zeros(1));
        assert_eq!(Evaluator::unlimited(&neg).value(&Point::zeros(1)), Err(Error::NonFinite("oracle value")));
        let inf = FnOracle::new(1, |_: &Point| f64::INFINITY, |_: &Point| Point::zeros(1));
        assert_eq!(Evaluator::unlimited(&inf).value(&Point::zeros(1)), Ok(f64::INFINITY));
    }

    #[test]
    fn deterministic_calls() {
        let o = abs_oracle();
        let x = Point::from_element(1, 0.0);
        assert_eq!(o.value(&x).to_bits(), o.value(&x).to_bits());
        assert_eq!(o.subgradient(&x), o.subgradient(&x));
    }
}
