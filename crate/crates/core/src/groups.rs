//! Finite-group machinery: cyclic and dihedral groups, regular-representation
//! convolution, Lie-algebra-constrained filters, irreducible representations,
//! Fourier-basis unitary convolution, word distance, and the dihedral toy
//! dataset.
//!
//! Dihedral elements are encoded as `index = flip * n + rotation`, so the
//! rotation subgroup occupies the first `n` indices. The defining relations
//! are `r^n = s^2 = (sr)^2 = 1`, with the product rule
//! `(a, f1) * (b, f2) = (a + (-1)^{f1} b mod n, f1 xor f2)`.

use std::collections::VecDeque;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expmap::{exp_action_taylor, OperatorAction};
use crate::graphs::{Graph, GraphSample, LabeledGraphDataset};
use crate::numerics::ComplexDense;
use crate::{Error, FeatureMatrix, Result, Scalar};

/// Finite group given by its multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<usize>, // row-major order x order table
    inv: Vec<usize>,
    identity: usize,
    generators: Vec<usize>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Generator set closed under inversion, used for word distances and
    /// Cayley graphs.
    pub fn symmetric_generators(&self) -> Vec<usize> {
        let mut gens = self.generators.to_vec();
        for &g in &self.generators {
            gens.push(self.inverse(g));
        }
        gens.sort_unstable();
        gens.dedup();
        gens
    }

    fn from_table(mult: Vec<usize>, order: usize, generators: Vec<usize>) -> Result<Self> {
        let mut identity = None;
        for e in 0..order {
            if (0..order).all(|g| mult[e * order + g] == g && mult[g * order + e] == g) {
                identity = Some(e);
                break;
            }
        }
        let identity =
            identity.ok_or_else(|| Error::Input("multiplication table has no identity".into()))?;
        let mut inv = vec![usize::MAX; order];
        for g in 0..order {
            for h in 0..order {
                if mult[g * order + h] == identity {
                    inv[g] = h;
                }
            }
            if inv[g] == usize::MAX {
                return Err(Error::Input(format!("element {g} has no inverse")));
            }
        }
        let group = Self {
            order,
            mult,
            inv,
            identity,
            generators,
        };
        group.validate()?;
        Ok(group)
    }

    /// Check associativity, inverses, and that the generators reach every
    /// element. Associativity is exhaustive for small groups and sampled
    /// above order 24.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::Input(format!("associativity fails at ({a}, {b}, {c})")));
            }
            Ok(())
        };
        if n <= 24 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x61);
            for _ in 0..500 {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        for g in 0..n {
            if self.mul(g, self.inverse(g)) != self.identity {
                return Err(Error::Input(format!("inverse fails for element {g}")));
            }
        }
        // generators must generate the whole group (closure by BFS)
        let mut seen = vec![false; n];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        let gens = self.symmetric_generators();
        while let Some(h) = queue.pop_front() {
            for &a in &gens {
                let next = self.mul(a, h);
                if !seen[next] {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
        if n > 1 && !seen.iter().all(|&b| b) {
            return Err(Error::Input("generators do not generate the group".into()));
        }
        Ok(())
    }
}

/// Cyclic group of order `n`; generator is the unit rotation.
pub fn cyclic_group(n: usize) -> Result<FiniteGroup> {
    if n < 1 {
        return Err(Error::Input("cyclic group needs n >= 1".into()));
    }
    let mut mult = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            mult[a * n + b] = (a + b) % n;
        }
    }
    let generators = if n > 1 { vec![1] } else { vec![0] };
    FiniteGroup::from_table(mult, n, generators)
}

/// Dihedral group of order `2n` with generators `r` (rotation) and `s`
/// (reflection).
pub fn dihedral_group(n: usize) -> Result<FiniteGroup> {
    if n < 2 {
        return Err(Error::Input(format!("dihedral group needs n >= 2, got {n}")));
    }
    let order = 2 * n;
    let encode = |rot: usize, flip: usize| flip * n + rot;
    let mut mult = vec![0usize; order * order];
    for f1 in 0..2 {
        for a in 0..n {
            for f2 in 0..2 {
                for b in 0..n {
                    let rot = if f1 == 0 { (a + b) % n } else { (a + n - b) % n };
                    mult[encode(a, f1) * order + encode(b, f2)] = encode(rot, f1 ^ f2);
                }
            }
        }
    }
    let r = encode(1, 0);
    let s = encode(0, 1);
    FiniteGroup::from_table(mult, order, vec![r, s])
}

/// Index of `r^k` in the dihedral encoding.
pub fn dihedral_rotation(n: usize, k: usize) -> usize {
    k % n
}

/// Index of `r^k s` in the dihedral encoding.
pub fn dihedral_reflection(n: usize, k: usize) -> usize {
    n + k % n
}

/// Permutation of the right regular action: `pi(h) = h * g`, so the matrix
/// sends basis vector `e_h` to `e_{pi(h)}`.
pub fn regular_right_action(group: &FiniteGroup, g: usize) -> Vec<usize> {
    (0..group.order()).map(|h| group.mul(h, g)).collect()
}

/// Permutation of the left regular action: `pi(h) = g^{-1} * h`.
pub fn regular_left_action(group: &FiniteGroup, g: usize) -> Vec<usize> {
    let gi = group.inverse(g);
    (0..group.order()).map(|h| group.mul(gi, h)).collect()
}

/// Apply a permutation matrix (given as `pi`, sending `e_h` to `e_{pi(h)}`)
/// to the rows of a signal.
pub fn apply_permutation<F: Scalar>(pi: &[usize], x: &ComplexDense<F>) -> ComplexDense<F> {
    let mut out = ComplexDense::zeros(x.rows(), x.cols());
    for h in 0..x.rows() {
        for c in 0..x.cols() {
            let (re, im) = x.get(h, c);
            out.set(pi[h], c, re, im);
        }
    }
    out
}

/// Complex filter over group elements.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFilter<F> {
    pub re: Vec<F>,
    pub im: Vec<F>,
}

impl<F: Scalar> GroupFilter<F> {
    pub fn zeros(order: usize) -> Self {
        Self {
            re: vec![F::zero(); order],
            im: vec![F::zero(); order],
        }
    }

    pub fn len(&self) -> usize {
        self.re.len()
    }

    pub fn is_empty(&self) -> bool {
        self.re.is_empty()
    }

    pub fn get(&self, g: usize) -> (F, F) {
        (self.re[g], self.im[g])
    }

    pub fn set(&mut self, g: usize, re: F, im: F) {
        self.re[g] = re;
        self.im[g] = im;
    }

    /// Sum of entry moduli; bounds the operator norm of the induced
    /// convolution since every regular action has norm one.
    pub fn modulus_sum(&self) -> F {
        self.re
            .iter()
            .zip(&self.im)
            .map(|(&a, &b)| (a * a + b * b).sqrt())
            .sum()
    }
}

/// Cross-correlation against the filter: `(m * x)(u) = sum_v m(u^{-1} v) x(v)`.
pub fn group_convolve<F: Scalar>(
    group: &FiniteGroup,
    m: &GroupFilter<F>,
    x: &ComplexDense<F>,
) -> Result<ComplexDense<F>> {
    let n = group.order();
    if m.len() != n || x.rows() != n {
        return Err(Error::Shape(format!(
            "group_convolve: filter length {} and signal rows {} must equal group order {n}",
            m.len(),
            x.rows()
        )));
    }
    let mut out = ComplexDense::zeros(n, x.cols());
    for u in 0..n {
        let ui = group.inverse(u);
        for v in 0..n {
            let (mr, mi) = m.get(group.mul(ui, v));
            if mr == F::zero() && mi == F::zero() {
                continue;
            }
            for c in 0..x.cols() {
                let (xr, xi) = x.get(v, c);
                let (or, oi) = out.get(u, c);
                out.set(u, c, or + mr * xr - mi * xi, oi + mr * xi + mi * xr);
            }
        }
    }
    Ok(out)
}

/// Hermitian symmetrization `m'(g) = (m(g) + m(g^{-1})*) / 2`, which makes
/// `sum_g m'(g) R_g` Hermitian so that `i` times it is skew-Hermitian.
pub fn lie_constrain_filter<F: Scalar>(group: &FiniteGroup, m: &GroupFilter<F>) -> GroupFilter<F> {
    let half = F::from_f64_lit(0.5);
    let mut out = GroupFilter::zeros(group.order());
    for g in 0..group.order() {
        let (ar, ai) = m.get(g);
        let (br, bi) = m.get(group.inverse(g));
        out.set(g, (ar + br) * half, (ai - bi) * half);
    }
    out
}

/// The operator `i * sum_g m(g) R_g` as an action on group signals.
pub struct RegularFilterAction<'a, F> {
    pub group: &'a FiniteGroup,
    pub filter: &'a GroupFilter<F>,
}

impl<F: Scalar> OperatorAction<F> for RegularFilterAction<'_, F> {
    fn apply(&self, x: &FeatureMatrix<F>) -> FeatureMatrix<F> {
        let n = self.group.order();
        let mut out = ComplexDense::zeros(n, x.cols());
        // (sum_g m(g) R_g x)(u) = sum_g m(g) x(u g^{-1}); then multiply by i.
        for u in 0..n {
            for g in 0..n {
                let (mr, mi) = self.filter.get(g);
                if mr == F::zero() && mi == F::zero() {
                    continue;
                }
                let src = self.group.mul(u, self.group.inverse(g));
                for c in 0..x.cols() {
                    let (xr, xi) = x.get(src, c);
                    let (or, oi) = out.get(u, c);
                    out.set(u, c, or + mr * xr - mi * xi, oi + mr * xi + mi * xr);
                }
            }
        }
        out.scale_complex(F::zero(), F::one())
    }

    fn norm_bound(&self) -> F {
        self.filter.modulus_sum()
    }
}

/// Unitary group convolution through the Lie algebra: constrain the filter,
/// then apply the Taylor action of `exp(i * sum_g m'(g) R_g)`.
pub fn unitary_group_conv<F: Scalar>(
    group: &FiniteGroup,
    m: &GroupFilter<F>,
    x: &ComplexDense<F>,
    order: usize,
) -> Result<ComplexDense<F>> {
    if m.len() != group.order() || x.rows() != group.order() {
        return Err(Error::Shape(format!(
            "unitary_group_conv: filter length {} and signal rows {} must equal group order {}",
            m.len(),
            x.rows(),
            group.order()
        )));
    }
    let constrained = lie_constrain_filter(group, m);
    let action = RegularFilterAction {
        group,
        filter: &constrained,
    };
    Ok(exp_action_taylor(&action, x, order))
}

/// One irreducible representation: a unitary matrix per group element.
#[derive(Debug, Clone)]
pub struct Irrep<F> {
    pub dim: usize,
    pub mats: Vec<ComplexDense<F>>,
}

/// A complete system of inequivalent irreducible representations.
#[derive(Debug, Clone)]
pub struct IrrepSet<F> {
    pub irreps: Vec<Irrep<F>>,
}

impl<F: Scalar> IrrepSet<F> {
    pub fn dimension_sum_of_squares(&self) -> usize {
        self.irreps.iter().map(|r| r.dim * r.dim).sum()
    }

    /// Homomorphism, unitarity, completeness, and pairwise-distinct
    /// characters.
    pub fn validate(&self, group: &FiniteGroup) -> Result<()> {
        let n = group.order();
        if self.dimension_sum_of_squares() != n {
            return Err(Error::Input(format!(
                "irrep dimensions squared sum to {}, expected {n}",
                self.dimension_sum_of_squares()
            )));
        }
        let tol = F::from_f64_lit(1e-10);
        for (idx, irrep) in self.irreps.iter().enumerate() {
            if irrep.mats.len() != n {
                return Err(Error::Input(format!("irrep {idx} misses elements")));
            }
            for g in 0..n {
                let u = &irrep.mats[g];
                let gram = u.conj_transpose().matmul(u)?;
                let resid = gram.sub(&ComplexDense::identity(irrep.dim))?.frobenius_norm();
                if resid > tol {
                    return Err(Error::Input(format!(
                        "irrep {idx} not unitary at element {g} (residual {resid})"
                    )));
                }
                for h in 0..n {
                    let prod = irrep.mats[g].matmul(&irrep.mats[h])?;
                    let expect = &irrep.mats[group.mul(g, h)];
                    let resid = prod.sub(expect)?.frobenius_norm();
                    if resid > tol {
                        return Err(Error::Input(format!(
                            "irrep {idx} homomorphism fails at ({g}, {h})"
                        )));
                    }
                }
            }
        }
        // inequivalent irreps have distinct characters
        let chars: Vec<Vec<(F, F)>> = self
            .irreps
            .iter()
            .map(|irrep| {
                (0..n)
                    .map(|g| {
                        let mut tr = (F::zero(), F::zero());
                        for i in 0..irrep.dim {
                            let (re, im) = irrep.mats[g].get(i, i);
                            tr = (tr.0 + re, tr.1 + im);
                        }
                        tr
                    })
                    .collect()
            })
            .collect();
        for i in 0..chars.len() {
            for j in 0..i {
                let close = chars[i].iter().zip(&chars[j]).all(|(a, b)| {
                    (a.0 - b.0).abs() < F::from_f64_lit(1e-8)
                        && (a.1 - b.1).abs() < F::from_f64_lit(1e-8)
                });
                if close {
                    return Err(Error::Input(format!("irreps {j} and {i} are equivalent")));
                }
            }
        }
        Ok(())
    }
}

/// The `n` one-dimensional irreps of the cyclic group: `rho_j(k) = w^{jk}`
/// with `w = exp(2 pi i / n)`.
pub fn cyclic_irreps<F: Scalar>(n: usize) -> Result<IrrepSet<F>> {
    if n < 1 {
        return Err(Error::Input("cyclic_irreps needs n >= 1".into()));
    }
    let tau = std::f64::consts::TAU;
    let mut irreps = Vec::with_capacity(n);
    for j in 0..n {
        let mats = (0..n)
            .map(|k| {
                let angle = tau * ((j * k) % n) as f64 / n as f64;
                let mut m = ComplexDense::zeros(1, 1);
                m.set(0, 0, F::from_f64_lit(angle.cos()), F::from_f64_lit(angle.sin()));
                m
            })
            .collect();
        irreps.push(Irrep { dim: 1, mats });
    }
    Ok(IrrepSet { irreps })
}

/// Standard catalog for the dihedral group: two (n odd) or four (n even)
/// one-dimensional irreps plus two-dimensional rotation/reflection irreps.
pub fn dihedral_irreps<F: Scalar>(n: usize) -> Result<IrrepSet<F>> {
    if n < 2 {
        return Err(Error::Input("dihedral_irreps needs n >= 2".into()));
    }
    let order = 2 * n;
    let tau = std::f64::consts::TAU;
    let mut irreps: Vec<Irrep<F>> = Vec::new();

    // one-dimensional: chi(r^a s^f) = rho_r^a * rho_s^f
    let mut one_dim = vec![(1.0f64, 1.0f64), (1.0, -1.0)];
    if n % 2 == 0 {
        one_dim.push((-1.0, 1.0));
        one_dim.push((-1.0, -1.0));
    }
    for (rho_r, rho_s) in one_dim {
        let mats = (0..order)
            .map(|idx| {
                let (a, f) = (idx % n, idx / n);
                let val = rho_r.powi(a as i32) * rho_s.powi(f as i32);
                let mut m = ComplexDense::zeros(1, 1);
                m.set(0, 0, F::from_f64_lit(val), F::zero());
                m
            })
            .collect();
        irreps.push(Irrep { dim: 1, mats });
    }

    // two-dimensional: rho_h(r^a) = diag(w^{ha}, w^{-ha}),
    // rho_h(r^a s) = rho_h(r^a) * swap
    let max_h = if n % 2 == 0 { n / 2 - 1 } else { (n - 1) / 2 };
    for h in 1..=max_h {
        let mats = (0..order)
            .map(|idx| {
                let (a, f) = (idx % n, idx / n);
                let angle = tau * ((h * a) % n) as f64 / n as f64;
                let (c, s) = (angle.cos(), angle.sin());
                let mut m = ComplexDense::zeros(2, 2);
                if f == 0 {
                    m.set(0, 0, F::from_f64_lit(c), F::from_f64_lit(s));
                    m.set(1, 1, F::from_f64_lit(c), F::from_f64_lit(-s));
                } else {
                    m.set(0, 1, F::from_f64_lit(c), F::from_f64_lit(s));
                    m.set(1, 0, F::from_f64_lit(c), F::from_f64_lit(-s));
                }
                m
            })
            .collect();
        irreps.push(Irrep { dim: 2, mats });
    }
    Ok(IrrepSet { irreps })
}

/// Fourier transform of a single-channel group signal:
/// one block `f_hat(rho) = sum_u f(u) rho(u)` per irrep.
pub fn group_fourier_transform<F: Scalar>(
    group: &FiniteGroup,
    irreps: &IrrepSet<F>,
    x: &ComplexDense<F>,
) -> Result<Vec<ComplexDense<F>>> {
    if x.rows() != group.order() || x.cols() != 1 {
        return Err(Error::Shape(format!(
            "group_fourier_transform: expected {}x1 signal, got {}x{}",
            group.order(),
            x.rows(),
            x.cols()
        )));
    }
    let mut blocks = Vec::with_capacity(irreps.irreps.len());
    for irrep in &irreps.irreps {
        let mut block = ComplexDense::zeros(irrep.dim, irrep.dim);
        for u in 0..group.order() {
            let (fr, fi) = x.get(u, 0);
            if fr == F::zero() && fi == F::zero() {
                continue;
            }
            block = block.add(&irrep.mats[u].scale_complex(fr, fi))?;
        }
        blocks.push(block);
    }
    Ok(blocks)
}

/// Inverse transform: `f(u) = (1/|G|) sum_i d_i Tr(rho_i(u^{-1}) f_hat(rho_i))`.
pub fn group_fourier_inverse<F: Scalar>(
    group: &FiniteGroup,
    irreps: &IrrepSet<F>,
    blocks: &[ComplexDense<F>],
) -> Result<ComplexDense<F>> {
    if blocks.len() != irreps.irreps.len() {
        return Err(Error::Shape(format!(
            "group_fourier_inverse: {} blocks for {} irreps",
            blocks.len(),
            irreps.irreps.len()
        )));
    }
    let n = group.order();
    let inv_n = F::one() / F::from_usize(n).unwrap();
    let mut x = ComplexDense::zeros(n, 1);
    for u in 0..n {
        let ui = group.inverse(u);
        let mut acc = (F::zero(), F::zero());
        for (irrep, block) in irreps.irreps.iter().zip(blocks) {
            if block.rows() != irrep.dim || block.cols() != irrep.dim {
                return Err(Error::Shape(format!(
                    "group_fourier_inverse: block is {}x{}, irrep dimension {}",
                    block.rows(),
                    block.cols(),
                    irrep.dim
                )));
            }
            let prod = irrep.mats[ui].matmul(block)?;
            let d = F::from_usize(irrep.dim).unwrap();
            for i in 0..irrep.dim {
                let (re, im) = prod.get(i, i);
                acc = (acc.0 + d * re, acc.1 + d * im);
            }
        }
        x.set(u, 0, acc.0 * inv_n, acc.1 * inv_n);
    }
    Ok(x)
}

/// Unitary convolution in the Fourier basis: transform, right-multiply each
/// block by its unitary, invert. Right multiplication matches convolutions
/// built from the right regular action.
pub fn fourier_unitary_conv<F: Scalar>(
    group: &FiniteGroup,
    irreps: &IrrepSet<F>,
    unitaries: &[ComplexDense<F>],
    x: &ComplexDense<F>,
) -> Result<ComplexDense<F>> {
    if unitaries.len() != irreps.irreps.len() {
        return Err(Error::Shape(format!(
            "fourier_unitary_conv: {} blocks for {} irreps",
            unitaries.len(),
            irreps.irreps.len()
        )));
    }
    let tol = F::from_f64_lit(1e-8);
    for (idx, (irrep, u)) in irreps.irreps.iter().zip(unitaries).enumerate() {
        if u.rows() != irrep.dim || u.cols() != irrep.dim {
            return Err(Error::Shape(format!(
                "fourier_unitary_conv: block {idx} is {}x{}, irrep dimension {}",
                u.rows(),
                u.cols(),
                irrep.dim
            )));
        }
        let gram = u.conj_transpose().matmul(u)?;
        let resid = gram.sub(&ComplexDense::identity(irrep.dim))?.frobenius_norm();
        if resid > tol {
            return Err(Error::Input(format!(
                "fourier_unitary_conv: block {idx} is not unitary (residual {resid})"
            )));
        }
    }
    let blocks = group_fourier_transform(group, irreps, x)?;
    let rotated: Vec<ComplexDense<F>> = blocks
        .iter()
        .zip(unitaries)
        .map(|(b, u)| b.matmul(u))
        .collect::<Result<_>>()?;
    group_fourier_inverse(group, irreps, &rotated)
}

/// Word distance from `g` to `g'` over left multiplication by the symmetric
/// generator set: the minimal `T` with `a_1 ... a_T g = g'`.
pub fn group_distance(group: &FiniteGroup, from: usize, to: usize) -> usize {
    let gens = group.symmetric_generators();
    let mut dist = vec![usize::MAX; group.order()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(h) = queue.pop_front() {
        if h == to {
            return dist[h];
        }
        for &a in &gens {
            let next = group.mul(a, h);
            if dist[next] == usize::MAX {
                dist[next] = dist[h] + 1;
                queue.push_back(next);
            }
        }
    }
    dist[to]
}

/// Cayley graph over left multiplication by the symmetric generators;
/// its graph distance equals [`group_distance`].
pub fn cayley_graph<F: Scalar>(group: &FiniteGroup) -> Result<Graph<F>> {
    let mut edges = Vec::new();
    for h in 0..group.order() {
        for &a in &group.symmetric_generators() {
            let next = group.mul(a, h);
            if next != h {
                edges.push((h.min(next), h.max(next)));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edge_list(group.order(), &edges)
}

/// Dihedral-distance task: inputs `e_g + e_g'` over the regular
/// representation, target the word distance between the two elements.
/// The attached graph is the Cayley graph of the group.
pub fn dihedral_distance_dataset<F: Scalar>(
    n: usize,
    n_samples: usize,
    seed: u64,
) -> Result<(FiniteGroup, LabeledGraphDataset<F>)> {
    let group = dihedral_group(n)?;
    let graph = Arc::new(cayley_graph::<F>(&group)?);
    let order = group.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        let g = rng.gen_range(0..order);
        let mut g2 = rng.gen_range(0..order);
        while g2 == g {
            g2 = rng.gen_range(0..order);
        }
        let mut features = FeatureMatrix::zeros(order, 1);
        features.set(g, 0, F::one(), F::zero());
        features.set(g2, 0, F::one(), F::zero());
        let target = group_distance(&group, g, g2);
        samples.push(GraphSample {
            graph: Arc::clone(&graph),
            features,
            target: F::from_usize(target).unwrap(),
        });
    }
    Ok((group, LabeledGraphDataset::with_default_splits(samples, seed)))
}

/// Exact mean absolute error of the mean-target predictor over all ordered
/// distinct pairs of group elements.
pub fn group_distance_trivial_mae<F: Scalar>(group: &FiniteGroup) -> F {
    let n = group.order();
    let mut dists = Vec::new();
    for g in 0..n {
        for h in 0..n {
            if g != h {
                dists.push(F::from_usize(group_distance(group, g, h)).unwrap());
            }
        }
    }
    let count = F::from_usize(dists.len()).unwrap();
    let mean = dists.iter().copied().sum::<F>() / count;
    dists.iter().map(|&d| (d - mean).abs()).sum::<F>() / count
}
