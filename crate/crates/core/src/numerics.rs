//! Dense complex and sparse real linear algebra.
//!
//! Complex matrices are stored as separate real/imaginary arrays so that
//! automatic differentiation elsewhere in the crate only ever sees real
//! scalars. Sparse matrices are CSR with sorted column indices and a fixed
//! accumulation order, which keeps runs bit-reproducible under a fixed seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result, Scalar};

/// Dense real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RealDense<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> RealDense<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major data length mismatch");
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [F] {
        &mut self.data
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)];
            }
        }
        out
    }

    pub fn scale(&self, s: F) -> Self {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= s;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.same_shape(other), "add: shape mismatch");
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(&other.data) {
            *v += *w;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.same_shape(other), "sub: shape mismatch");
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(&other.data) {
            *v -= *w;
        }
        out
    }

    /// `self += other * s`
    pub fn axpy(&mut self, other: &Self, s: F) {
        assert!(self.same_shape(other), "axpy: shape mismatch");
        for (v, w) in self.data.iter_mut().zip(&other.data) {
            *v += *w * s;
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul: inner dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == F::zero() {
                    continue;
                }
                let lhs = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(lhs) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn frobenius_sq(&self) -> F {
        self.data.iter().map(|&v| v * v).sum()
    }

    /// Largest |eigenvalue| of a symmetric matrix, estimated by power
    /// iteration on the squared operator (fixed 200 iterations, seeded start).
    /// The returned value never exceeds the exact norm beyond round-off.
    pub fn symmetric_operator_norm(&self) -> F {
        assert_eq!(self.rows, self.cols, "operator norm: square input");
        power_iteration_norm(self.rows, |x, y| {
            for r in 0..self.rows {
                let mut acc = F::zero();
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                for (a, &xv) in row.iter().zip(x.iter()) {
                    acc += *a * xv;
                }
                y[r] = acc;
            }
        })
    }
}

impl<F: Scalar> std::ops::Index<(usize, usize)> for RealDense<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F: Scalar> std::ops::IndexMut<(usize, usize)> for RealDense<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

/// Dense complex matrix stored as a real/imaginary pair of row-major arrays.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexDense<F> {
    re: RealDense<F>,
    im: RealDense<F>,
}

impl<F: Scalar> ComplexDense<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            re: RealDense::zeros(rows, cols),
            im: RealDense::zeros(rows, cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            re: RealDense::identity(n),
            im: RealDense::zeros(n, n),
        }
    }

    pub fn from_parts(re: RealDense<F>, im: RealDense<F>) -> Self {
        assert!(re.same_shape(&im), "re/im shape mismatch");
        Self { re, im }
    }

    pub fn from_real(re: RealDense<F>) -> Self {
        let im = RealDense::zeros(re.rows(), re.cols());
        Self { re, im }
    }

    pub fn rows(&self) -> usize {
        self.re.rows()
    }

    pub fn cols(&self) -> usize {
        self.re.cols()
    }

    pub fn re(&self) -> &RealDense<F> {
        &self.re
    }

    pub fn im(&self) -> &RealDense<F> {
        &self.im
    }

    pub fn re_mut(&mut self) -> &mut RealDense<F> {
        &mut self.re
    }

    pub fn im_mut(&mut self) -> &mut RealDense<F> {
        &mut self.im
    }

    pub fn get(&self, r: usize, c: usize) -> (F, F) {
        (self.re[(r, c)], self.im[(r, c)])
    }

    pub fn set(&mut self, r: usize, c: usize, re: F, im: F) {
        self.re[(r, c)] = re;
        self.im[(r, c)] = im;
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.re.same_shape(&other.re)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !self.same_shape(other) {
            return Err(shape_err("add", self, other));
        }
        Ok(Self {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if !self.same_shape(other) {
            return Err(shape_err("sub", self, other));
        }
        Ok(Self {
            re: self.re.sub(&other.re),
            im: self.im.sub(&other.im),
        })
    }

    /// Multiply every entry by the complex scalar `a + i b`.
    pub fn scale_complex(&self, a: F, b: F) -> Self {
        let mut out = Self::zeros(self.rows(), self.cols());
        for k in 0..self.re.data().len() {
            let (re, im) = (self.re.data()[k], self.im.data()[k]);
            out.re.data_mut()[k] = a * re - b * im;
            out.im.data_mut()[k] = a * im + b * re;
        }
        out
    }

    pub fn scale_real(&self, s: F) -> Self {
        Self {
            re: self.re.scale(s),
            im: self.im.scale(s),
        }
    }

    /// Exact complex product, four real multiplies per entry block.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols() != other.rows() {
            return Err(Error::Shape(format!(
                "matmul: {}x{} * {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        let rr = self.re.matmul(&other.re);
        let ii = self.im.matmul(&other.im);
        let ri = self.re.matmul(&other.im);
        let ir = self.im.matmul(&other.re);
        Ok(Self {
            re: rr.sub(&ii),
            im: ri.add(&ir),
        })
    }

    /// `(A^H)_ij = conj(A_ji)`
    pub fn conj_transpose(&self) -> Self {
        Self {
            re: self.re.transpose(),
            im: self.im.transpose().scale(-F::one()),
        }
    }

    pub fn frobenius_sq(&self) -> F {
        self.re.frobenius_sq() + self.im.frobenius_sq()
    }

    pub fn frobenius_norm(&self) -> F {
        self.frobenius_sq().sqrt()
    }

    /// Orthogonal projection `(M - M^H)/2` onto the skew-Hermitian subspace.
    /// The output `W` satisfies `W + W^H = 0` exactly in floating point.
    pub fn skew_hermitian_project(&self) -> Result<Self> {
        if self.rows() != self.cols() {
            return Err(Error::Shape(format!(
                "skew_hermitian_project: {}x{} input is not square",
                self.rows(),
                self.cols()
            )));
        }
        let half = F::from_f64_lit(0.5);
        Ok(self.sub(&self.conj_transpose())?.scale_real(half))
    }

    /// Flatten into real coordinates `[re..., im...]` (row-major each).
    pub fn to_real_vec(&self) -> Vec<F> {
        let mut v = Vec::with_capacity(2 * self.re.data().len());
        v.extend_from_slice(self.re.data());
        v.extend_from_slice(self.im.data());
        v
    }

    pub fn from_real_vec(rows: usize, cols: usize, v: &[F]) -> Self {
        assert_eq!(v.len(), 2 * rows * cols);
        Self {
            re: RealDense::from_rows(rows, cols, v[..rows * cols].to_vec()),
            im: RealDense::from_rows(rows, cols, v[rows * cols..].to_vec()),
        }
    }
}

fn shape_err<F: Scalar>(op: &str, a: &ComplexDense<F>, b: &ComplexDense<F>) -> Error {
    Error::Shape(format!(
        "{op}: {}x{} vs {}x{}",
        a.rows(),
        a.cols(),
        b.rows(),
        b.cols()
    ))
}

/// Sparse real matrix in CSR form. Column indices are sorted within each row
/// and carry no explicit zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseReal<F> {
    rows: usize,
    cols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<F>,
}

impl<F: Scalar> SparseReal<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            indptr: vec![0; rows + 1],
            indices: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            indptr: (0..=n).collect(),
            indices: (0..n).collect(),
            values: vec![F::one(); n],
        }
    }

    /// Build from (row, col, value) triplets; duplicates are summed, explicit
    /// zeros dropped, and column indices sorted.
    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, F)]) -> Result<Self> {
        for &(r, c, _) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Input(format!(
                    "triplet ({r}, {c}) out of range for {rows}x{cols} matrix"
                )));
            }
        }
        let mut sorted: Vec<(usize, usize, F)> = triplets.to_vec();
        sorted.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut indptr = vec![0usize; rows + 1];
        let mut indices: Vec<usize> = Vec::new();
        let mut values: Vec<F> = Vec::new();
        let mut i = 0;
        while i < sorted.len() {
            let (r, c, mut v) = sorted[i];
            let mut j = i + 1;
            while j < sorted.len() && sorted[j].0 == r && sorted[j].1 == c {
                v += sorted[j].2;
                j += 1;
            }
            if v != F::zero() {
                indices.push(c);
                values.push(v);
                indptr[r + 1] += 1;
            }
            i = j;
        }
        for r in 0..rows {
            indptr[r + 1] += indptr[r];
        }
        Ok(Self {
            rows,
            cols,
            indptr,
            indices,
            values,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, r: usize) -> (&[usize], &[F]) {
        let (lo, hi) = (self.indptr[r], self.indptr[r + 1]);
        (&self.indices[lo..hi], &self.values[lo..hi])
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        let (idx, val) = self.row(r);
        match idx.binary_search(&c) {
            Ok(k) => val[k],
            Err(_) => F::zero(),
        }
    }

    pub fn iter_entries(&self) -> impl Iterator<Item = (usize, usize, F)> + '_ {
        (0..self.rows).flat_map(move |r| {
            let (idx, val) = self.row(r);
            idx.iter().zip(val.iter()).map(move |(&c, &v)| (r, c, v))
        })
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        self.iter_entries().all(|(r, c, v)| self.get(c, r) == v)
    }

    pub fn map_values(&self, f: impl Fn(F) -> F) -> Self {
        let mut out = self.clone();
        for v in &mut out.values {
            *v = f(*v);
        }
        out
    }

    /// Sparse-times-dense product applied to the real and imaginary parts
    /// independently. Accumulation runs in ascending column order per row.
    pub fn spmm(&self, x: &ComplexDense<F>) -> Result<ComplexDense<F>> {
        if self.cols != x.rows() {
            return Err(Error::Shape(format!(
                "spmm: {}x{} * {}x{}",
                self.rows,
                self.cols,
                x.rows(),
                x.cols()
            )));
        }
        Ok(ComplexDense {
            re: self.spmm_real(x.re()),
            im: self.spmm_real(x.im()),
        })
    }

    pub fn spmm_real(&self, x: &RealDense<F>) -> RealDense<F> {
        assert_eq!(self.cols, x.rows(), "spmm_real: inner dimension mismatch");
        let d = x.cols();
        let mut out = RealDense::zeros(self.rows, d);
        for r in 0..self.rows {
            let (idx, val) = self.row(r);
            let dst = &mut out.data_mut()[r * d..(r + 1) * d];
            for (&c, &v) in idx.iter().zip(val.iter()) {
                let src = &x.data()[c * d..(c + 1) * d];
                for (o, &s) in dst.iter_mut().zip(src) {
                    *o += v * s;
                }
            }
        }
        out
    }

    pub fn to_complex_dense(&self) -> ComplexDense<F> {
        let mut re = RealDense::zeros(self.rows, self.cols);
        for (r, c, v) in self.iter_entries() {
            re[(r, c)] = v;
        }
        ComplexDense::from_real(re)
    }

    /// Spectral-norm estimate for a symmetric matrix via power iteration on
    /// the squared operator: fixed 200 iterations, seeded start vector. The
    /// Rayleigh-type estimate is a lower bound on the exact norm, so it never
    /// exceeds it by more than round-off.
    pub fn operator_norm_estimate(&self) -> F {
        debug_assert!(self.is_symmetric(), "operator_norm_estimate: symmetric input expected");
        power_iteration_norm(self.rows, |x, y| {
            for r in 0..self.rows {
                let (idx, val) = self.row(r);
                let mut acc = F::zero();
                for (&c, &v) in idx.iter().zip(val.iter()) {
                    acc += v * x[c];
                }
                y[r] = acc;
            }
        })
    }
}

/// Shared power-iteration loop over an abstract symmetric matvec. Applies the
/// operator twice per iteration so that paired `+/-lambda` spectra (bipartite
/// graphs) still converge, and returns `sqrt` of the squared-operator ratio.
fn power_iteration_norm<F: Scalar>(n: usize, matvec: impl Fn(&[F], &mut [F])) -> F {
    if n == 0 {
        return F::zero();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e3779b97f4a7c15);
    let mut v: Vec<F> = (0..n)
        .map(|_| F::from_f64_lit(rng.gen_range(-1.0..1.0)))
        .collect();
    let mut w = vec![F::zero(); n];
    let mut ratio = F::zero();
    for _ in 0..200 {
        let norm_v = norm2(&v);
        if norm_v == F::zero() {
            return F::zero();
        }
        for x in &mut v {
            *x /= norm_v;
        }
        matvec(&v, &mut w);
        matvec(&w, &mut v);
        // |S^2 v| / |v| with |v| = 1 estimates |S|^2 from below.
        ratio = norm2(&v);
    }
    ratio.sqrt()
}

fn norm2<F: Scalar>(v: &[F]) -> F {
    v.iter().map(|&x| x * x).sum::<F>().sqrt()
}

/// Solve `A X = B` for complex dense `A` via LU with partial pivoting
/// (pivot by modulus). Fails with a condition estimate when a pivot vanishes.
pub fn lu_solve<F: Scalar>(a: &ComplexDense<F>, b: &ComplexDense<F>) -> Result<ComplexDense<F>> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::Shape(format!("lu_solve: {}x{} lhs not square", a.rows(), a.cols())));
    }
    if b.rows() != n {
        return Err(Error::Shape(format!(
            "lu_solve: rhs has {} rows, expected {n}",
            b.rows()
        )));
    }
    let mut lu = a.clone();
    let mut x = b.clone();
    let mut max_pivot = F::zero();
    for col in 0..n {
        // pick pivot row by modulus
        let mut pivot_row = col;
        let mut pivot_mag = modulus_sq(&lu, col, col);
        for r in col + 1..n {
            let m = modulus_sq(&lu, r, col);
            if m > pivot_mag {
                pivot_mag = m;
                pivot_row = r;
            }
        }
        max_pivot = max_pivot.max(pivot_mag.sqrt());
        if pivot_mag == F::zero() || pivot_mag.sqrt() < F::epsilon() * max_pivot {
            let cond = if pivot_mag == F::zero() {
                F::infinity()
            } else {
                max_pivot / pivot_mag.sqrt()
            };
            return Err(Error::Numeric(format!(
                "singular pivot at column {col}; condition estimate {cond}"
            )));
        }
        if pivot_row != col {
            swap_rows(&mut lu, pivot_row, col);
            swap_rows(&mut x, pivot_row, col);
        }
        let (pr, pi) = lu.get(col, col);
        let inv_den = F::one() / (pr * pr + pi * pi);
        for r in col + 1..n {
            let (ar, ai) = lu.get(r, col);
            if ar == F::zero() && ai == F::zero() {
                continue;
            }
            // factor = a / pivot
            let fr = (ar * pr + ai * pi) * inv_den;
            let fi = (ai * pr - ar * pi) * inv_den;
            lu.set(r, col, fr, fi);
            for c in col + 1..n {
                let (ur, ui) = lu.get(col, c);
                let (vr, vi) = lu.get(r, c);
                lu.set(r, c, vr - (fr * ur - fi * ui), vi - (fr * ui + fi * ur));
            }
            for c in 0..x.cols() {
                let (ur, ui) = x.get(col, c);
                let (vr, vi) = x.get(r, c);
                x.set(r, c, vr - (fr * ur - fi * ui), vi - (fr * ui + fi * ur));
            }
        }
    }
    // back substitution
    for col in (0..n).rev() {
        let (pr, pi) = lu.get(col, col);
        let inv_den = F::one() / (pr * pr + pi * pi);
        for c in 0..x.cols() {
            let (mut sr, mut si) = x.get(col, c);
            for k in col + 1..n {
                let (ur, ui) = lu.get(col, k);
                let (vr, vi) = x.get(k, c);
                sr -= ur * vr - ui * vi;
                si -= ur * vi + ui * vr;
            }
            let xr = (sr * pr + si * pi) * inv_den;
            let xi = (si * pr - sr * pi) * inv_den;
            x.set(col, c, xr, xi);
        }
    }
    Ok(x)
}

fn modulus_sq<F: Scalar>(m: &ComplexDense<F>, r: usize, c: usize) -> F {
    let (re, im) = m.get(r, c);
    re * re + im * im
}

fn swap_rows<F: Scalar>(m: &mut ComplexDense<F>, a: usize, b: usize) {
    if a == b {
        return;
    }
    let cols = m.cols();
    for c in 0..cols {
        let (ar, ai) = m.get(a, c);
        let (br, bi) = m.get(b, c);
        m.set(a, c, br, bi);
        m.set(b, c, ar, ai);
    }
}
