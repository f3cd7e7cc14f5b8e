//! Reverse-mode automatic differentiation over real matrices.
//!
//! The tape records array-level primitives; complex quantities enter as
//! separate real/imaginary node pairs ([`CxNode`]), so gradients are plain
//! real partial derivatives throughout. Backward traversal walks nodes in
//! reverse insertion order and accumulates gradients additively, which keeps
//! runs bit-reproducible.

use std::sync::Arc;

use crate::numerics::{RealDense, SparseReal};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeId(pub usize);

/// Complex value on the tape: a pair of real nodes of equal shape.
#[derive(Debug, Clone, Copy)]
pub struct CxNode {
    pub re: NodeId,
    pub im: NodeId,
}

#[derive(Debug, Clone)]
enum Op<F> {
    Leaf { param: Option<usize> },
    Add(NodeId, NodeId),
    Sub(NodeId, NodeId),
    Neg(NodeId),
    Scale(NodeId, F),
    /// Multiply a matrix node by a 1x1 scalar node.
    ScaleByScalar { src: NodeId, scalar: NodeId },
    MatMul(NodeId, NodeId),
    SpMM { mat: Arc<SparseReal<F>>, src: NodeId },
    /// `out[i, :] = src[map[i], :]`
    GatherRows { src: NodeId, map: Arc<Vec<usize>> },
    Transpose(NodeId),
    Gelu(NodeId),
    /// Pairwise (max, min) over column halves, real matrices.
    GroupSortCols(NodeId),
    MeanRows(NodeId),
    HCat(NodeId, NodeId),
    Abs(NodeId),
    /// Sum of squared entries, 1x1 output.
    FrobSq(NodeId),
}

pub struct Tape<F> {
    ops: Vec<Op<F>>,
    values: Vec<RealDense<F>>,
}

impl<F: Scalar> Default for Tape<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Scalar> Tape<F> {
    pub fn new() -> Self {
        Self {
            ops: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn value(&self, id: NodeId) -> &RealDense<F> {
        &self.values[id.0]
    }

    pub fn scalar_value(&self, id: NodeId) -> F {
        let v = self.value(id);
        debug_assert_eq!((v.rows(), v.cols()), (1, 1));
        v.data()[0]
    }

    fn push(&mut self, op: Op<F>, value: RealDense<F>) -> NodeId {
        self.ops.push(op);
        self.values.push(value);
        NodeId(self.ops.len() - 1)
    }

    pub fn constant(&mut self, value: RealDense<F>) -> NodeId {
        self.push(Op::Leaf { param: None }, value)
    }

    pub fn param(&mut self, index: usize, value: RealDense<F>) -> NodeId {
        self.push(Op::Leaf { param: Some(index) }, value)
    }

    pub fn add(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let value = self.value(a).add(self.value(b));
        self.push(Op::Add(a, b), value)
    }

    pub fn sub(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let value = self.value(a).sub(self.value(b));
        self.push(Op::Sub(a, b), value)
    }

    pub fn neg(&mut self, a: NodeId) -> NodeId {
        let value = self.value(a).scale(-F::one());
        self.push(Op::Neg(a), value)
    }

    pub fn scale(&mut self, a: NodeId, c: F) -> NodeId {
        let value = self.value(a).scale(c);
        self.push(Op::Scale(a, c), value)
    }

    pub fn scale_by_scalar(&mut self, src: NodeId, scalar: NodeId) -> NodeId {
        let s = self.scalar_value(scalar);
        let value = self.value(src).scale(s);
        self.push(Op::ScaleByScalar { src, scalar }, value)
    }

    pub fn matmul(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let value = self.value(a).matmul(self.value(b));
        self.push(Op::MatMul(a, b), value)
    }

    pub fn spmm(&mut self, mat: &Arc<SparseReal<F>>, src: NodeId) -> NodeId {
        let value = mat.spmm_real(self.value(src));
        self.push(
            Op::SpMM {
                mat: Arc::clone(mat),
                src,
            },
            value,
        )
    }

    pub fn gather_rows(&mut self, src: NodeId, map: &Arc<Vec<usize>>) -> NodeId {
        let x = self.value(src);
        let mut out = RealDense::zeros(map.len(), x.cols());
        for (i, &s) in map.iter().enumerate() {
            for c in 0..x.cols() {
                out[(i, c)] = x[(s, c)];
            }
        }
        self.push(
            Op::GatherRows {
                src,
                map: Arc::clone(map),
            },
            out,
        )
    }

    pub fn transpose(&mut self, a: NodeId) -> NodeId {
        let value = self.value(a).transpose();
        self.push(Op::Transpose(a), value)
    }

    pub fn gelu(&mut self, a: NodeId) -> NodeId {
        let mut value = self.value(a).clone();
        for v in value.data_mut() {
            *v = gelu_scalar(*v);
        }
        self.push(Op::Gelu(a), value)
    }

    pub fn groupsort_cols(&mut self, a: NodeId) -> NodeId {
        let x = self.value(a);
        assert!(x.cols() % 2 == 0, "groupsort needs an even column count");
        let half = x.cols() / 2;
        let mut out = x.clone();
        for r in 0..x.rows() {
            for c in 0..half {
                let (u, v) = (x[(r, c)], x[(r, c + half)]);
                // on ties the first channel is treated as the max
                if u >= v {
                    out[(r, c)] = u;
                    out[(r, c + half)] = v;
                } else {
                    out[(r, c)] = v;
                    out[(r, c + half)] = u;
                }
            }
        }
        self.push(Op::GroupSortCols(a), out)
    }

    pub fn mean_rows(&mut self, a: NodeId) -> NodeId {
        let x = self.value(a);
        let inv = F::one() / F::from_usize(x.rows()).unwrap();
        let mut out = RealDense::zeros(1, x.cols());
        for r in 0..x.rows() {
            for c in 0..x.cols() {
                out[(0, c)] += x[(r, c)] * inv;
            }
        }
        self.push(Op::MeanRows(a), out)
    }

    pub fn hcat(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let (xa, xb) = (self.value(a), self.value(b));
        assert_eq!(xa.rows(), xb.rows(), "hcat: row mismatch");
        let mut out = RealDense::zeros(xa.rows(), xa.cols() + xb.cols());
        for r in 0..xa.rows() {
            for c in 0..xa.cols() {
                out[(r, c)] = xa[(r, c)];
            }
            for c in 0..xb.cols() {
                out[(r, xa.cols() + c)] = xb[(r, c)];
            }
        }
        self.push(Op::HCat(a, b), out)
    }

    pub fn abs(&mut self, a: NodeId) -> NodeId {
        let mut value = self.value(a).clone();
        for v in value.data_mut() {
            *v = v.abs();
        }
        self.push(Op::Abs(a), value)
    }

    pub fn frob_sq(&mut self, a: NodeId) -> NodeId {
        let s = self.value(a).frobenius_sq();
        let out = RealDense::from_rows(1, 1, vec![s]);
        self.push(Op::FrobSq(a), out)
    }

    /// Gradients of a scalar loss with respect to every registered
    /// parameter, in parameter-index order. Parameters that do not reach the
    /// loss get an empty gradient.
    pub fn backward(&self, loss: NodeId, n_params: usize) -> Vec<RealDense<F>> {
        assert_eq!(
            (self.value(loss).rows(), self.value(loss).cols()),
            (1, 1),
            "loss must be scalar"
        );
        let mut grads: Vec<Option<RealDense<F>>> = vec![None; self.ops.len()];
        grads[loss.0] = Some(RealDense::from_rows(1, 1, vec![F::one()]));

        let mut param_grads: Vec<Option<RealDense<F>>> = vec![None; n_params];

        for idx in (0..=loss.0).rev() {
            let g = match grads[idx].take() {
                Some(g) => g,
                None => continue,
            };
            match &self.ops[idx] {
                Op::Leaf { param } => {
                    if let Some(p) = *param {
                        match &mut param_grads[p] {
                            Some(acc) => acc.axpy(&g, F::one()),
                            slot => *slot = Some(g),
                        }
                    }
                }
                Op::Add(a, b) => {
                    accumulate(&mut grads, *a, &g, F::one());
                    accumulate(&mut grads, *b, &g, F::one());
                }
                Op::Sub(a, b) => {
                    accumulate(&mut grads, *a, &g, F::one());
                    accumulate(&mut grads, *b, &g, -F::one());
                }
                Op::Neg(a) => accumulate(&mut grads, *a, &g, -F::one()),
                Op::Scale(a, c) => accumulate(&mut grads, *a, &g, *c),
                Op::ScaleByScalar { src, scalar } => {
                    let s = self.scalar_value(*scalar);
                    accumulate(&mut grads, *src, &g, s);
                    // d/ds = sum(g .* src)
                    let dot: F = g
                        .data()
                        .iter()
                        .zip(self.value(*src).data())
                        .map(|(&a, &b)| a * b)
                        .sum();
                    let gs = RealDense::from_rows(1, 1, vec![dot]);
                    accumulate(&mut grads, *scalar, &gs, F::one());
                }
                Op::MatMul(a, b) => {
                    let ga = g.matmul(&self.value(*b).transpose());
                    accumulate(&mut grads, *a, &ga, F::one());
                    let gb = self.value(*a).transpose().matmul(&g);
                    accumulate(&mut grads, *b, &gb, F::one());
                }
                Op::SpMM { mat, src } => {
                    // gradient is S^T g
                    let mut gs = RealDense::zeros(mat.cols(), g.cols());
                    for (r, c, v) in mat.iter_entries() {
                        for col in 0..g.cols() {
                            gs[(c, col)] += v * g[(r, col)];
                        }
                    }
                    accumulate(&mut grads, *src, &gs, F::one());
                }
                Op::GatherRows { src, map } => {
                    let cols = g.cols();
                    let mut gs = RealDense::zeros(self.value(*src).rows(), cols);
                    for (i, &s) in map.iter().enumerate() {
                        for c in 0..cols {
                            gs[(s, c)] += g[(i, c)];
                        }
                    }
                    accumulate(&mut grads, *src, &gs, F::one());
                }
                Op::Transpose(a) => {
                    let ga = g.transpose();
                    accumulate(&mut grads, *a, &ga, F::one());
                }
                Op::Gelu(a) => {
                    let mut ga = g.clone();
                    for (gv, &xv) in ga.data_mut().iter_mut().zip(self.value(*a).data()) {
                        *gv *= gelu_derivative(xv);
                    }
                    accumulate(&mut grads, *a, &ga, F::one());
                }
                Op::GroupSortCols(a) => {
                    let x = self.value(*a);
                    let half = x.cols() / 2;
                    let mut ga = RealDense::zeros(x.rows(), x.cols());
                    for r in 0..x.rows() {
                        for c in 0..half {
                            let (u, v) = (x[(r, c)], x[(r, c + half)]);
                            if u >= v {
                                ga[(r, c)] += g[(r, c)];
                                ga[(r, c + half)] += g[(r, c + half)];
                            } else {
                                ga[(r, c + half)] += g[(r, c)];
                                ga[(r, c)] += g[(r, c + half)];
                            }
                        }
                    }
                    accumulate(&mut grads, *a, &ga, F::one());
                }
                Op::MeanRows(a) => {
                    let rows = self.value(*a).rows();
                    let inv = F::one() / F::from_usize(rows).unwrap();
                    let mut ga = RealDense::zeros(rows, g.cols());
                    for r in 0..rows {
                        for c in 0..g.cols() {
                            ga[(r, c)] = g[(0, c)] * inv;
                        }
                    }
                    accumulate(&mut grads, *a, &ga, F::one());
                }
                Op::HCat(a, b) => {
                    let ca = self.value(*a).cols();
                    let cb = self.value(*b).cols();
                    let rows = g.rows();
                    let mut ga = RealDense::zeros(rows, ca);
                    let mut gb = RealDense::zeros(rows, cb);
                    for r in 0..rows {
                        for c in 0..ca {
                            ga[(r, c)] = g[(r, c)];
                        }
                        for c in 0..cb {
                            gb[(r, c)] = g[(r, ca + c)];
                        }
                    }
                    accumulate(&mut grads, *a, &ga, F::one());
                    accumulate(&mut grads, *b, &gb, F::one());
                }
                Op::Abs(a) => {
                    let mut ga = g.clone();
                    for (gv, &xv) in ga.data_mut().iter_mut().zip(self.value(*a).data()) {
                        *gv *= if xv > F::zero() {
                            F::one()
                        } else if xv < F::zero() {
                            -F::one()
                        } else {
                            F::zero()
                        };
                    }
                    accumulate(&mut grads, *a, &ga, F::one());
                }
                Op::FrobSq(a) => {
                    let s = g.data()[0];
                    let ga = self.value(*a).scale(s + s);
                    accumulate(&mut grads, *a, &ga, F::one());
                }
            }
        }

        param_grads
            .into_iter()
            .map(|g| g.unwrap_or_else(|| RealDense::zeros(0, 0)))
            .collect()
    }
}

fn accumulate<F: Scalar>(
    grads: &mut [Option<RealDense<F>>],
    target: NodeId,
    g: &RealDense<F>,
    scale: F,
) {
    match &mut grads[target.0] {
        Some(acc) => acc.axpy(g, scale),
        slot => *slot = Some(g.scale(scale)),
    }
}

/// GELU via the tanh approximation; the derivative below matches this exact
/// expression so gradient checks are self-consistent.
pub fn gelu_scalar<F: Scalar>(x: F) -> F {
    let c = F::from_f64_lit(0.797_884_560_802_865_4); // sqrt(2/pi)
    let a = F::from_f64_lit(0.044_715);
    let u = c * (x + a * x * x * x);
    F::from_f64_lit(0.5) * x * (F::one() + u.tanh())
}

pub fn gelu_derivative<F: Scalar>(x: F) -> F {
    let c = F::from_f64_lit(0.797_884_560_802_865_4);
    let a = F::from_f64_lit(0.044_715);
    let half = F::from_f64_lit(0.5);
    let three = F::from_f64_lit(3.0);
    let u = c * (x + a * x * x * x);
    let t = u.tanh();
    let sech_sq = F::one() - t * t;
    half * (F::one() + t) + half * x * sech_sq * c * (F::one() + three * a * x * x)
}

// ----- complex helpers -------------------------------------------------

pub fn cx_constant<F: Scalar>(tape: &mut Tape<F>, x: &crate::numerics::ComplexDense<F>) -> CxNode {
    CxNode {
        re: tape.constant(x.re().clone()),
        im: tape.constant(x.im().clone()),
    }
}

pub fn cx_add<F: Scalar>(tape: &mut Tape<F>, a: CxNode, b: CxNode) -> CxNode {
    CxNode {
        re: tape.add(a.re, b.re),
        im: tape.add(a.im, b.im),
    }
}

pub fn cx_scale_real<F: Scalar>(tape: &mut Tape<F>, a: CxNode, c: F) -> CxNode {
    CxNode {
        re: tape.scale(a.re, c),
        im: tape.scale(a.im, c),
    }
}

/// `(a + ib)(c + id) = (ac - bd) + i(ad + bc)` via four real products.
pub fn cx_matmul<F: Scalar>(tape: &mut Tape<F>, a: CxNode, b: CxNode) -> CxNode {
    let rr = tape.matmul(a.re, b.re);
    let ii = tape.matmul(a.im, b.im);
    let ri = tape.matmul(a.re, b.im);
    let ir = tape.matmul(a.im, b.re);
    CxNode {
        re: tape.sub(rr, ii),
        im: tape.add(ri, ir),
    }
}

pub fn cx_spmm<F: Scalar>(tape: &mut Tape<F>, mat: &Arc<SparseReal<F>>, x: CxNode) -> CxNode {
    CxNode {
        re: tape.spmm(mat, x.re),
        im: tape.spmm(mat, x.im),
    }
}

/// Multiply by `i * t` where `t` is a 1x1 scalar node:
/// `i t (re + i im) = -t im + i t re`.
pub fn cx_scale_i_by<F: Scalar>(tape: &mut Tape<F>, x: CxNode, t: NodeId) -> CxNode {
    let tim = tape.scale_by_scalar(x.im, t);
    let tre = tape.scale_by_scalar(x.re, t);
    CxNode {
        re: tape.neg(tim),
        im: tre,
    }
}

/// Skew-Hermitian projection `(M - M^H)/2` on the tape:
/// `re' = (re - re^T)/2`, `im' = (im + im^T)/2`.
pub fn cx_skew_project<F: Scalar>(tape: &mut Tape<F>, m: CxNode) -> CxNode {
    let half = F::from_f64_lit(0.5);
    let ret = tape.transpose(m.re);
    let re = tape.sub(m.re, ret);
    let imt = tape.transpose(m.im);
    let im = tape.add(m.im, imt);
    CxNode {
        re: tape.scale(re, half),
        im: tape.scale(im, half),
    }
}

/// Conjugate transpose on the tape.
pub fn cx_conj_transpose<F: Scalar>(tape: &mut Tape<F>, m: CxNode) -> CxNode {
    let ret = tape.transpose(m.re);
    let imt = tape.transpose(m.im);
    CxNode {
        re: ret,
        im: tape.neg(imt),
    }
}

pub fn cx_gather_rows<F: Scalar>(tape: &mut Tape<F>, x: CxNode, map: &Arc<Vec<usize>>) -> CxNode {
    CxNode {
        re: tape.gather_rows(x.re, map),
        im: tape.gather_rows(x.im, map),
    }
}

/// GroupSort on a complex node: real and imaginary parts sorted independently.
pub fn cx_groupsort<F: Scalar>(tape: &mut Tape<F>, x: CxNode) -> CxNode {
    CxNode {
        re: tape.groupsort_cols(x.re),
        im: tape.groupsort_cols(x.im),
    }
}

pub fn cx_gelu<F: Scalar>(tape: &mut Tape<F>, x: CxNode) -> CxNode {
    CxNode {
        re: tape.gelu(x.re),
        im: tape.gelu(x.im),
    }
}

/// `|x|_F^2 = |re|_F^2 + |im|_F^2` as a scalar node.
pub fn cx_frob_sq<F: Scalar>(tape: &mut Tape<F>, x: CxNode) -> NodeId {
    let a = tape.frob_sq(x.re);
    let b = tape.frob_sq(x.im);
    tape.add(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_mat(rows: usize, cols: usize, seed: u64) -> RealDense<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = (0..rows * cols).map(|_| rng.gen_range(-1.0..1.0)).collect();
        RealDense::from_rows(rows, cols, data)
    }

    /// Central finite differences of a scalar function of one parameter
    /// matrix; the oracle for every backward test here.
    fn fd_grad(
        f: impl Fn(&RealDense<f64>) -> f64,
        p: &RealDense<f64>,
        eps: f64,
    ) -> RealDense<f64> {
        let mut g = RealDense::zeros(p.rows(), p.cols());
        for k in 0..p.data().len() {
            let mut plus = p.clone();
            plus.data_mut()[k] += eps;
            let mut minus = p.clone();
            minus.data_mut()[k] -= eps;
            g.data_mut()[k] = (f(&plus) - f(&minus)) / (2.0 * eps);
        }
        g
    }

    fn max_abs_diff(a: &RealDense<f64>, b: &RealDense<f64>) -> f64 {
        a.sub(b).data().iter().fold(0.0, |m, &v| m.max(v.abs()))
    }

    #[test]
    fn identity_loss_has_unit_gradient() {
        let mut tape = Tape::new();
        let p = tape.param(0, RealDense::from_rows(1, 1, vec![2.5]));
        let grads = tape.backward(p, 1);
        assert_eq!(grads[0].data(), &[1.0]);
    }

    #[test]
    fn matmul_chain_matches_finite_differences() {
        let a0 = random_mat(3, 4, 1);
        let b0 = random_mat(4, 2, 2);
        let eval = |a: &RealDense<f64>, b: &RealDense<f64>| -> f64 {
            let mut tape = Tape::new();
            let pa = tape.param(0, a.clone());
            let pb = tape.param(1, b.clone());
            let prod = tape.matmul(pa, pb);
            let gl = tape.gelu(prod);
            let loss = tape.frob_sq(gl);
            tape.scalar_value(loss)
        };
        let mut tape = Tape::new();
        let pa = tape.param(0, a0.clone());
        let pb = tape.param(1, b0.clone());
        let prod = tape.matmul(pa, pb);
        let gl = tape.gelu(prod);
        let loss = tape.frob_sq(gl);
        let grads = tape.backward(loss, 2);

        let fa = fd_grad(|a| eval(a, &b0), &a0, 1e-6);
        let fb = fd_grad(|b| eval(&a0, b), &b0, 1e-6);
        assert!(max_abs_diff(&grads[0], &fa) < 1e-7);
        assert!(max_abs_diff(&grads[1], &fb) < 1e-7);
    }

    #[test]
    fn mixed_ops_match_finite_differences() {
        let p0 = random_mat(4, 4, 3);
        let map = Arc::new(vec![2usize, 0, 3, 1]);
        let sparse = Arc::new(
            SparseReal::from_triplets(4, 4, &[(0, 1, 0.7), (1, 0, 0.7), (2, 3, -0.4), (3, 2, -0.4)])
                .unwrap(),
        );
        let eval = |p: &RealDense<f64>| -> f64 {
            let mut tape = Tape::new();
            let pp = tape.param(0, p.clone());
            let s = tape.spmm(&sparse, pp);
            let gathered = tape.gather_rows(s, &map);
            let sorted = tape.groupsort_cols(gathered);
            let t = tape.transpose(sorted);
            let mean = tape.mean_rows(t);
            let absd = tape.abs(mean);
            let loss = tape.frob_sq(absd);
            tape.scalar_value(loss)
        };
        let mut tape = Tape::new();
        let pp = tape.param(0, p0.clone());
        let s = tape.spmm(&sparse, pp);
        let gathered = tape.gather_rows(s, &map);
        let sorted = tape.groupsort_cols(gathered);
        let t = tape.transpose(sorted);
        let mean = tape.mean_rows(t);
        let absd = tape.abs(mean);
        let loss = tape.frob_sq(absd);
        let grads = tape.backward(loss, 1);
        let fd = fd_grad(eval, &p0, 1e-6);
        assert!(max_abs_diff(&grads[0], &fd) < 1e-7);
    }

    #[test]
    fn scalar_scaling_and_hcat_match_finite_differences() {
        let p0 = random_mat(2, 3, 4);
        let t0 = RealDense::from_rows(1, 1, vec![0.8]);
        let eval = |p: &RealDense<f64>, t: &RealDense<f64>| -> f64 {
            let mut tape = Tape::new();
            let pp = tape.param(0, p.clone());
            let tt = tape.param(1, t.clone());
            let scaled = tape.scale_by_scalar(pp, tt);
            let neg = tape.neg(scaled);
            let cat = tape.hcat(scaled, neg);
            let loss = tape.frob_sq(cat);
            tape.scalar_value(loss)
        };
        let mut tape = Tape::new();
        let pp = tape.param(0, p0.clone());
        let tt = tape.param(1, t0.clone());
        let scaled = tape.scale_by_scalar(pp, tt);
        let neg = tape.neg(scaled);
        let cat = tape.hcat(scaled, neg);
        let loss = tape.frob_sq(cat);
        let grads = tape.backward(loss, 2);
        let fp = fd_grad(|p| eval(p, &t0), &p0, 1e-6);
        let ft = fd_grad(|t| eval(&p0, t), &t0, 1e-6);
        assert!(max_abs_diff(&grads[0], &fp) < 1e-7);
        assert!(max_abs_diff(&grads[1], &ft) < 1e-7);
    }

    #[test]
    fn gradients_accumulate_when_param_reused() {
        // loss = |p + p|^2 = 4 |p|^2, so d/dp = 8p
        let p0 = random_mat(2, 2, 5);
        let mut tape = Tape::new();
        let pp = tape.param(0, p0.clone());
        let sum = tape.add(pp, pp);
        let loss = tape.frob_sq(sum);
        let grads = tape.backward(loss, 1);
        let expected = p0.scale(8.0);
        assert!(max_abs_diff(&grads[0], &expected) < 1e-12);
    }

    #[test]
    fn complex_matmul_matches_dense_complex() {
        use crate::numerics::ComplexDense;
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut a = ComplexDense::zeros(3, 3);
        let mut b = ComplexDense::zeros(3, 2);
        for r in 0..3 {
            for c in 0..3 {
                a.set(r, c, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            for c in 0..2 {
                b.set(r, c, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        let mut tape = Tape::new();
        let na = cx_constant(&mut tape, &a);
        let nb = cx_constant(&mut tape, &b);
        let prod = cx_matmul(&mut tape, na, nb);
        let direct = a.matmul(&b).unwrap();
        assert!(max_abs_diff(tape.value(prod.re), direct.re()) < 1e-13);
        assert!(max_abs_diff(tape.value(prod.im), direct.im()) < 1e-13);
    }

    #[test]
    fn groupsort_tape_matches_layer_function() {
        use crate::layers::groupsort;
        use crate::numerics::ComplexDense;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut x = ComplexDense::zeros(4, 6);
        for r in 0..4 {
            for c in 0..6 {
                x.set(r, c, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        let mut tape = Tape::new();
        let nx = cx_constant(&mut tape, &x);
        let sorted = cx_groupsort(&mut tape, nx);
        let direct = groupsort(&x).unwrap();
        assert!(max_abs_diff(tape.value(sorted.re), direct.re()) < 1e-15);
        assert!(max_abs_diff(tape.value(sorted.im), direct.im()) < 1e-15);
    }
}
