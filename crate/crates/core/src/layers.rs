//! Convolution layers and supporting pieces: the separable unitary layer,
//! the Lie-algebra unitary layer, a single-hop baseline, the GroupSort
//! activation, block initialization, and zero padding.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expmap::{exp_action_taylor, OperatorAction};
use crate::numerics::{ComplexDense, SparseReal};
use crate::{Error, FeatureMatrix, Result, Scalar};

/// Feature transformation applied after the node mixing step.
///
/// `Unitary` holds a skew-Hermitian generator `B`; the map materializes as
/// `exp(B)` and is therefore unitary up to the Taylor tolerance.
/// `Unconstrained` is a fully parameterized matrix, the default in training.
#[derive(Debug, Clone)]
pub enum FeatureMap<F> {
    Unitary(ComplexDense<F>),
    Unconstrained(ComplexDense<F>),
}

impl<F: Scalar> FeatureMap<F> {
    pub fn identity(d: usize) -> Self {
        FeatureMap::Unconstrained(ComplexDense::identity(d))
    }

    /// Dense matrix actually multiplied into the features.
    pub fn materialize(&self, order: usize) -> Result<ComplexDense<F>> {
        match self {
            FeatureMap::Unconstrained(m) => Ok(m.clone()),
            FeatureMap::Unitary(b) => {
                let skew = b.skew_hermitian_project()?;
                Ok(dense_exp_taylor(&skew, order))
            }
        }
    }

    /// Inverse map (negated generator); only defined in unitary mode.
    pub fn inverse(&self) -> Result<Self> {
        match self {
            FeatureMap::Unitary(b) => Ok(FeatureMap::Unitary(b.scale_real(-F::one()))),
            FeatureMap::Unconstrained(_) => Err(Error::Input(
                "unconstrained feature map has no structural inverse".into(),
            )),
        }
    }
}

/// `exp(M)` for a small dense matrix by the plain Taylor series.
pub fn dense_exp_taylor<F: Scalar>(m: &ComplexDense<F>, order: usize) -> ComplexDense<F> {
    let mut result = ComplexDense::identity(m.rows());
    let mut term = ComplexDense::identity(m.rows());
    for k in 1..=order {
        term = term
            .matmul(m)
            .expect("square")
            .scale_real(F::one() / F::from_usize(k).unwrap());
        result = result.add(&term).expect("square");
    }
    result
}

/// Parameters of the separable unitary layer `exp(i*A*t) X U`.
#[derive(Debug, Clone)]
pub struct UniConvParams<F> {
    pub t: F,
    pub feature_map: FeatureMap<F>,
}

/// Parameters of the Lie-algebra layer: an unconstrained matrix whose
/// skew-Hermitian projection acts as the effective `W` in `exp(X -> A X W)`.
#[derive(Debug, Clone)]
pub struct LieUniConvParams<F> {
    pub raw: ComplexDense<F>,
}

impl<F: Scalar> LieUniConvParams<F> {
    pub fn effective_weight(&self) -> Result<ComplexDense<F>> {
        self.raw.skew_hermitian_project()
    }
}

/// Parameters of the single-hop baseline `X W0 + A X W1`.
#[derive(Debug, Clone)]
pub struct VanillaConvParams<F> {
    pub w0: ComplexDense<F>,
    pub w1: ComplexDense<F>,
}

/// Node-mixing action `X -> i * t * (A X)`.
pub struct ScaledAdjacencyAction<'a, F> {
    pub adj: &'a SparseReal<F>,
    pub t: F,
    pub adj_norm_bound: F,
}

impl<F: Scalar> OperatorAction<F> for ScaledAdjacencyAction<'_, F> {
    fn apply(&self, x: &FeatureMatrix<F>) -> FeatureMatrix<F> {
        self.adj.spmm(x).expect("shape checked by caller").scale_complex(F::zero(), self.t)
    }

    fn norm_bound(&self) -> F {
        self.t.abs() * self.adj_norm_bound
    }
}

/// Action `X -> A X W` with `W` skew-Hermitian.
pub struct AdjacencyWeightAction<'a, F> {
    pub adj: &'a SparseReal<F>,
    pub weight: &'a ComplexDense<F>,
    pub adj_norm_bound: F,
}

impl<F: Scalar> OperatorAction<F> for AdjacencyWeightAction<'_, F> {
    fn apply(&self, x: &FeatureMatrix<F>) -> FeatureMatrix<F> {
        self.adj
            .spmm(x)
            .expect("shape checked by caller")
            .matmul(self.weight)
            .expect("shape checked by caller")
    }

    fn norm_bound(&self) -> F {
        // operator norm of a Kronecker factorization: |A| * |W|, with the
        // Frobenius norm bounding |W| from above
        self.adj_norm_bound * self.weight.frobenius_norm()
    }
}

fn require_symmetric<F: Scalar>(adj: &SparseReal<F>, who: &str) -> Result<()> {
    if !adj.is_symmetric() {
        return Err(Error::Input(format!(
            "{who}: adjacency must be symmetric for the exponential to be unitary"
        )));
    }
    Ok(())
}

fn require_feature_shape<F: Scalar>(adj: &SparseReal<F>, x: &FeatureMatrix<F>) -> Result<()> {
    if adj.cols() != x.rows() {
        return Err(Error::Shape(format!(
            "adjacency {}x{} against features {}x{}",
            adj.rows(),
            adj.cols(),
            x.rows(),
            x.cols()
        )));
    }
    Ok(())
}

/// Separable unitary convolution: Taylor action of `exp(i*A*t)` on `X`,
/// followed by the feature map. No bias term.
pub fn uniconv_forward<F: Scalar>(
    x: &FeatureMatrix<F>,
    adj: &SparseReal<F>,
    params: &UniConvParams<F>,
    order: usize,
) -> Result<FeatureMatrix<F>> {
    require_symmetric(adj, "uniconv_forward")?;
    require_feature_shape(adj, x)?;
    let action = ScaledAdjacencyAction {
        adj,
        t: params.t,
        adj_norm_bound: F::one(),
    };
    let mixed = exp_action_taylor(&action, x, order);
    let u = params.feature_map.materialize(order)?;
    mixed.matmul(&u)
}

/// Lie-algebra unitary convolution: Taylor action of `exp(X -> A X W)` with
/// `W` the skew-Hermitian projection of the raw parameter.
pub fn lie_uniconv_forward<F: Scalar>(
    x: &FeatureMatrix<F>,
    adj: &SparseReal<F>,
    params: &LieUniConvParams<F>,
    order: usize,
) -> Result<FeatureMatrix<F>> {
    require_symmetric(adj, "lie_uniconv_forward")?;
    require_feature_shape(adj, x)?;
    if params.raw.rows() != x.cols() {
        return Err(Error::Shape(format!(
            "weight {}x{} against features {}x{}",
            params.raw.rows(),
            params.raw.cols(),
            x.rows(),
            x.cols()
        )));
    }
    let weight = params.effective_weight()?;
    let action = AdjacencyWeightAction {
        adj,
        weight: &weight,
        adj_norm_bound: F::one(),
    };
    Ok(exp_action_taylor(&action, x, order))
}

/// Single-hop convolution `X W0 + A X W1`, no bias.
pub fn vanilla_conv_forward<F: Scalar>(
    x: &FeatureMatrix<F>,
    adj: &SparseReal<F>,
    params: &VanillaConvParams<F>,
) -> Result<FeatureMatrix<F>> {
    require_feature_shape(adj, x)?;
    let self_term = x.matmul(&params.w0)?;
    let hop_term = adj.spmm(x)?.matmul(&params.w1)?;
    self_term.add(&hop_term)
}

/// Norm-preserving activation: channels split into halves, each pair
/// `(a, b)` replaced by `(max, min)`. Complex inputs are handled by sorting
/// the real and imaginary parts independently.
pub fn groupsort<F: Scalar>(x: &FeatureMatrix<F>) -> Result<FeatureMatrix<F>> {
    let d = x.cols();
    if d % 2 != 0 {
        return Err(Error::Shape(format!(
            "groupsort needs an even channel count, got {d}"
        )));
    }
    let half = d / 2;
    let mut out = x.clone();
    for r in 0..x.rows() {
        for c in 0..half {
            let (a_re, a_im) = x.get(r, c);
            let (b_re, b_im) = x.get(r, c + half);
            let (hi_re, lo_re) = (a_re.max(b_re), a_re.min(b_re));
            let (hi_im, lo_im) = (a_im.max(b_im), a_im.min(b_im));
            out.set(r, c, hi_re, hi_im);
            out.set(r, c + half, lo_re, lo_im);
        }
    }
    Ok(out)
}

/// Real block-diagonal skew matrix with 2x2 blocks `[[0, s], [-s, 0]]`,
/// `s ~ Unif(-pi, pi)`. The last diagonal entry stays zero for odd `d`.
pub fn init_skew_blocks<F: Scalar>(d: usize, seed: u64) -> ComplexDense<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = ComplexDense::zeros(d, d);
    let mut i = 0;
    while i + 1 < d {
        let s = F::from_f64_lit(rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI));
        m.set(i, i + 1, s, F::zero());
        m.set(i + 1, i, -s, F::zero());
        i += 2;
    }
    m
}

/// Append zero columns until the feature dimension reaches `d_out`.
pub fn zero_pad_features<F: Scalar>(x: &FeatureMatrix<F>, d_out: usize) -> Result<FeatureMatrix<F>> {
    let d = x.cols();
    if d_out < d {
        return Err(Error::Shape(format!(
            "zero_pad_features: target dimension {d_out} below input {d}"
        )));
    }
    let mut out = FeatureMatrix::zeros(x.rows(), d_out);
    for r in 0..x.rows() {
        for c in 0..d {
            let (re, im) = x.get(r, c);
            out.set(r, c, re, im);
        }
    }
    Ok(out)
}
