//! Truncated-Taylor action of the matrix exponential, its remainder
//! majorant, and the Cayley map.

use crate::numerics::{lu_solve, ComplexDense};
use crate::{Error, FeatureMatrix, Result, Scalar};

/// An abstract linear action on feature matrices together with an upper
/// bound on its operator norm.
pub trait OperatorAction<F: Scalar> {
    fn apply(&self, x: &FeatureMatrix<F>) -> FeatureMatrix<F>;
    fn norm_bound(&self) -> F;
}

/// Linear action defined by a closure; mostly useful in tests.
pub struct FnAction<F, G> {
    pub f: G,
    pub bound: F,
}

impl<F: Scalar, G: Fn(&FeatureMatrix<F>) -> FeatureMatrix<F>> OperatorAction<F> for FnAction<F, G> {
    fn apply(&self, x: &FeatureMatrix<F>) -> FeatureMatrix<F> {
        (self.f)(x)
    }

    fn norm_bound(&self) -> F {
        self.bound
    }
}

/// Sum of the first `order + 1` exponential-series terms applied to `x`,
/// accumulated as `term <- L(term) / k` so only one extra feature matrix is
/// kept in memory.
pub fn exp_action_taylor<F: Scalar>(
    op: &dyn OperatorAction<F>,
    x: &FeatureMatrix<F>,
    order: usize,
) -> FeatureMatrix<F> {
    let mut result = x.clone();
    let mut term = x.clone();
    for k in 1..=order {
        term = op.apply(&term).scale_real(F::one() / F::from_usize(k).unwrap());
        result = result.add(&term).expect("action must preserve shape");
    }
    result
}

/// Majorant for the Taylor remainder after the order-`k` term:
/// `|L|^{k+1} * |x| * e^{|L|} / (k+1)!`. The exponential factor dominates
/// the full tail sum, not just its first term.
pub fn taylor_error_bound<F: Scalar>(norm_op: F, norm_x: F, order: usize) -> F {
    if norm_op == F::zero() {
        return F::zero();
    }
    let mut lead = norm_x;
    for k in 1..=(order + 1) {
        lead = lead * norm_op / F::from_usize(k).unwrap();
    }
    lead * norm_op.exp()
}

/// `(I + M/2)(I - M/2)^{-1}` via a dense LU solve with partial pivoting.
/// Unitary whenever `M` is skew-Hermitian.
pub fn cayley_map<F: Scalar>(m: &ComplexDense<F>) -> Result<ComplexDense<F>> {
    if m.rows() != m.cols() {
        return Err(Error::Shape(format!(
            "cayley_map: {}x{} input is not square",
            m.rows(),
            m.cols()
        )));
    }
    let half = F::from_f64_lit(0.5);
    let id = ComplexDense::identity(m.rows());
    let plus = id.add(&m.scale_real(half))?;
    let minus = id.sub(&m.scale_real(half))?;
    // X solves (I - M/2) X = (I + M/2); this equals (I + M/2)(I - M/2)^{-1}
    // because both factors are polynomials in M and commute.
    lu_solve(&minus, &plus)
}
