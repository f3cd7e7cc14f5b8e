//! Graph construction, normalization, generators, and toy datasets.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numerics::{ComplexDense, SparseReal};
use crate::{Error, FeatureMatrix, Result, Scalar};

/// Simple undirected graph with cached adjacency and degrees.
#[derive(Debug, Clone)]
pub struct Graph<F> {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: SparseReal<F>,
    degrees: Vec<F>,
}

impl<F: Scalar> Graph<F> {
    /// Build from an undirected edge list. Duplicate edges collapse to one;
    /// self loops are rejected.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        for &(u, v) in edges {
            if u == v {
                return Err(Error::Input(format!("self loop at node {u}")));
            }
        }
        let adjacency = build_adjacency(edges, n)?;
        let mut dedup: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        dedup.sort_unstable();
        dedup.dedup();
        let degrees = (0..n)
            .map(|r| adjacency.row(r).1.iter().copied().sum())
            .collect();
        Ok(Self {
            n,
            edges: dedup,
            adjacency,
            degrees,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacency(&self) -> &SparseReal<F> {
        &self.adjacency
    }

    pub fn degrees(&self) -> &[F] {
        &self.degrees
    }

    /// `D^{-1/2} A D^{-1/2}` with zero rows for isolated nodes.
    pub fn normalized_adjacency(&self) -> SparseReal<F> {
        normalize_adjacency(&self.adjacency).expect("cached adjacency is symmetric nonnegative")
    }
}

/// Symmetric 0/1 CSR adjacency from an undirected edge list; duplicates
/// collapse to a single entry.
pub fn build_adjacency<F: Scalar>(edges: &[(usize, usize)], n: usize) -> Result<SparseReal<F>> {
    let mut triplets = Vec::with_capacity(edges.len() * 2);
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(Error::Input(format!(
                "edge ({u}, {v}) out of range for {n} nodes"
            )));
        }
        triplets.push((u, v));
        triplets.push((v, u));
    }
    triplets.sort_unstable();
    triplets.dedup();
    let triplets: Vec<(usize, usize, F)> =
        triplets.into_iter().map(|(u, v)| (u, v, F::one())).collect();
    SparseReal::from_triplets(n, n, &triplets)
}

/// `A_uv / sqrt(d_u d_v)`; the inverse square root of a zero degree is taken
/// as zero so isolated nodes produce all-zero rows and columns.
pub fn normalize_adjacency<F: Scalar>(a: &SparseReal<F>) -> Result<SparseReal<F>> {
    if a.rows() != a.cols() {
        return Err(Error::Shape(format!(
            "normalize_adjacency: {}x{} input is not square",
            a.rows(),
            a.cols()
        )));
    }
    if !a.is_symmetric() {
        return Err(Error::Input("normalize_adjacency: adjacency must be symmetric".into()));
    }
    let n = a.rows();
    let mut degrees = vec![F::zero(); n];
    for r in 0..n {
        let (_, vals) = a.row(r);
        let mut deg = F::zero();
        for &v in vals {
            if v < F::zero() {
                return Err(Error::Input("normalize_adjacency: negative entry".into()));
            }
            deg += v;
        }
        degrees[r] = deg;
    }
    // A_uv / sqrt(d_u * d_v) evaluated per entry: exact for perfect-square
    // degree products, and degree-0 rows stay identically zero.
    let triplets: Vec<(usize, usize, F)> = a
        .iter_entries()
        .map(|(r, c, v)| {
            let prod = degrees[r] * degrees[c];
            let scaled = if prod > F::zero() { v / prod.sqrt() } else { F::zero() };
            (r, c, scaled)
        })
        .collect();
    SparseReal::from_triplets(n, n, &triplets)
}

/// Cycle graph with edges `(i, i+1 mod n)`.
pub fn ring_graph<F: Scalar>(n: usize) -> Result<Graph<F>> {
    if n < 3 {
        return Err(Error::Input(format!("ring graph needs n >= 3, got {n}")));
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edge_list(n, &edges)
}

/// Split a possibly asymmetric adjacency into symmetric and antisymmetric
/// parts and return the skew-Hermitian combination `H = i*A_sym + A_nonsym`.
///
/// Requires that each pair satisfies `A_ij = A_ji` or `A_ij * A_ji = 0`.
pub fn split_directed<F: Scalar>(a: &SparseReal<F>) -> Result<ComplexDense<F>> {
    if a.rows() != a.cols() {
        return Err(Error::Shape(format!(
            "split_directed: {}x{} input is not square",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut h = ComplexDense::zeros(n, n);
    for (i, j, v) in a.iter_entries() {
        let w = a.get(j, i);
        if v == w {
            // symmetric part contributes i * A_ij
            let (re, im) = h.get(i, j);
            h.set(i, j, re, im + v);
        } else if w == F::zero() {
            // directed edge: A_nonsym gets A_ij at (i,j) and -A_ij at (j,i)
            let (re, im) = h.get(i, j);
            h.set(i, j, re + v, im);
            let (re, im) = h.get(j, i);
            h.set(j, i, re - v, im);
        } else {
            return Err(Error::Input(format!(
                "split_directed: entries ({i}, {j}) and ({j}, {i}) are {v} and {w}; \
                 expected equal values or one zero"
            )));
        }
    }
    Ok(h)
}

/// One labelled sample: a graph, complex node features, and a scalar target.
#[derive(Debug, Clone)]
pub struct GraphSample<F> {
    pub graph: Arc<Graph<F>>,
    pub features: FeatureMatrix<F>,
    pub target: F,
}

/// Dataset of labelled graphs with disjoint, exhaustive split indices.
#[derive(Debug, Clone)]
pub struct LabeledGraphDataset<F> {
    pub samples: Vec<GraphSample<F>>,
    pub train_idx: Vec<usize>,
    pub val_idx: Vec<usize>,
    pub test_idx: Vec<usize>,
    pub seed: u64,
}

impl<F: Scalar> LabeledGraphDataset<F> {
    /// 80/10/10 split in sample order (samples are i.i.d. by construction).
    pub fn with_default_splits(samples: Vec<GraphSample<F>>, seed: u64) -> Self {
        let n = samples.len();
        let n_train = (n * 8) / 10;
        let n_val = (n - n_train) / 2;
        Self {
            samples,
            train_idx: (0..n_train).collect(),
            val_idx: (n_train..n_train + n_val).collect(),
            test_idx: (n_train + n_val..n).collect(),
            seed,
        }
    }
}

/// Ring-distance task: features are zero except for two distinct random
/// marked nodes set to one; the target is their ring distance.
pub fn ring_distance_dataset<F: Scalar>(
    n_nodes: usize,
    n_samples: usize,
    seed: u64,
) -> Result<LabeledGraphDataset<F>> {
    let graph = Arc::new(ring_graph::<F>(n_nodes)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        let i = rng.gen_range(0..n_nodes);
        let mut j = rng.gen_range(0..n_nodes);
        while j == i {
            j = rng.gen_range(0..n_nodes);
        }
        let mut features = FeatureMatrix::zeros(n_nodes, 1);
        features.set(i, 0, F::one(), F::zero());
        features.set(j, 0, F::one(), F::zero());
        let d = ring_distance(n_nodes, i, j);
        samples.push(GraphSample {
            graph: Arc::clone(&graph),
            features,
            target: F::from_usize(d).unwrap(),
        });
    }
    Ok(LabeledGraphDataset::with_default_splits(samples, seed))
}

/// `min(|i-j|, n - |i-j|)`
pub fn ring_distance(n: usize, i: usize, j: usize) -> usize {
    let d = i.abs_diff(j);
    d.min(n - d)
}

/// Mean absolute error of the constant mean-target predictor on the ring
/// task, from the closed-form distance distribution over distinct pairs.
pub fn ring_distance_trivial_mae<F: Scalar>(n_nodes: usize) -> F {
    let half = n_nodes / 2;
    let mut probs: Vec<(F, F)> = Vec::new(); // (distance, probability)
    let denom = F::from_usize(n_nodes - 1).unwrap();
    for k in 1..=half {
        let count = if n_nodes % 2 == 0 && k == half {
            F::one()
        } else {
            F::from_f64_lit(2.0)
        };
        probs.push((F::from_usize(k).unwrap(), count / denom));
    }
    let mean: F = probs.iter().map(|&(d, p)| d * p).sum();
    probs.iter().map(|&(d, p)| (d - mean).abs() * p).sum()
}

/// Parse the edge-list text format: one `u v` pair per line, 0-indexed,
/// whitespace separated, with `#` comments. Returns `(n, edges)` where `n`
/// is one past the largest index seen.
pub fn parse_edge_list(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut edges = Vec::new();
    let mut max_idx = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<usize> {
            tok.ok_or_else(|| Error::Input(format!("line {}: expected 'u v'", lineno + 1)))?
                .parse::<usize>()
                .map_err(|_| Error::Input(format!("line {}: invalid node index", lineno + 1)))
        };
        let u = parse(parts.next())?;
        let v = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(Error::Input(format!(
                "line {}: expected exactly two indices",
                lineno + 1
            )));
        }
        max_idx = max_idx.max(u).max(v);
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(Error::Input("edge list is empty".into()));
    }
    Ok((max_idx + 1, edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_adjacency_cases() {
        let z = build_adjacency::<f64>(&[], 3).unwrap();
        assert_eq!(z.nnz(), 0);
        let p = build_adjacency::<f64>(&[(0, 1)], 2).unwrap();
        assert_eq!(p.get(0, 1), 1.0);
        assert_eq!(p.get(1, 0), 1.0);
        assert_eq!(p.get(0, 0), 0.0);
        // duplicate edge listed twice gives the same matrix
        let dup = build_adjacency::<f64>(&[(0, 1), (1, 0), (0, 1)], 2).unwrap();
        assert_eq!(dup, p);
        assert!(build_adjacency::<f64>(&[(0, 5)], 3).is_err());
    }

    #[test]
    fn normalize_adjacency_cases() {
        // 2-node path: degrees 1, unchanged
        let p = build_adjacency::<f64>(&[(0, 1)], 2).unwrap();
        let np = normalize_adjacency(&p).unwrap();
        assert_eq!(np.get(0, 1), 1.0);
        // ring of 4: all off-diagonal entries 1/2
        let ring = ring_graph::<f64>(4).unwrap();
        let nr = ring.normalized_adjacency();
        for (_, _, v) in nr.iter_entries() {
            assert_eq!(v, 0.5);
        }
        // isolated node keeps a zero row/col
        let iso = build_adjacency::<f64>(&[(0, 1)], 3).unwrap();
        let ni = normalize_adjacency(&iso).unwrap();
        for c in 0..3 {
            assert_eq!(ni.get(2, c), 0.0);
            assert_eq!(ni.get(c, 2), 0.0);
        }
    }

    #[test]
    fn normalized_spectral_norm_at_most_one() {
        for n in [3usize, 5, 8, 12] {
            let g = ring_graph::<f64>(n).unwrap();
            let est = g.normalized_adjacency().operator_norm_estimate();
            assert!(est <= 1.0 + 1e-9, "ring {n}: norm estimate {est}");
        }
        let k4 = Graph::<f64>::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap();
        assert!(k4.normalized_adjacency().operator_norm_estimate() <= 1.0 + 1e-9);
    }

    #[test]
    fn ring_graph_cases() {
        let tri = ring_graph::<f64>(3).unwrap();
        assert_eq!(tri.edges().len(), 3);
        let four = ring_graph::<f64>(4).unwrap();
        assert_eq!(four.edges().len(), 4);
        assert!(four.degrees().iter().all(|&d| d == 2.0));
        let big = ring_graph::<f64>(100).unwrap();
        assert_eq!(big.edges().len(), 100);
        assert!(ring_graph::<f64>(2).is_err());
    }

    #[test]
    fn split_directed_cases() {
        // symmetric input becomes i*A
        let sym = build_adjacency::<f64>(&[(0, 1)], 2).unwrap();
        let h = split_directed(&sym).unwrap();
        assert_eq!(h.get(0, 1), (0.0, 1.0));
        assert_eq!(h.get(1, 0), (0.0, 1.0));
        // single directed edge 0 -> 1 gives the real skew part [[0,1],[-1,0]]
        let dir = SparseReal::from_triplets(2, 2, &[(0, 1, 1.0)]).unwrap();
        let h = split_directed(&dir).unwrap();
        assert_eq!(h.get(0, 1), (1.0, 0.0));
        assert_eq!(h.get(1, 0), (-1.0, 0.0));
        // empty graph maps to zero
        let empty = SparseReal::<f64>::zeros(3, 3);
        assert_eq!(split_directed(&empty).unwrap().frobenius_norm(), 0.0);
        // violated assumption names the offending pair
        let bad = SparseReal::from_triplets(2, 2, &[(0, 1, 1.0), (1, 0, 2.0)]).unwrap();
        match split_directed(&bad) {
            Err(Error::Input(msg)) => assert!(msg.contains("(0, 1)")),
            other => panic!("expected input error, got {other:?}"),
        }
    }

    #[test]
    fn split_directed_output_is_skew_hermitian() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let n = rng.gen_range(2..8);
            let mut triplets = Vec::new();
            for i in 0..n {
                for j in 0..i {
                    match rng.gen_range(0..4) {
                        0 => {
                            triplets.push((i, j, 1.0));
                            triplets.push((j, i, 1.0));
                        }
                        1 => triplets.push((i, j, 1.0)),
                        2 => triplets.push((j, i, 1.0)),
                        _ => {}
                    }
                }
            }
            let a = SparseReal::from_triplets(n, n, &triplets).unwrap();
            let h = split_directed(&a).unwrap();
            let resid = h.add(&h.conj_transpose()).unwrap();
            assert!(resid.frobenius_norm() <= 1e-12);
        }
    }

    #[test]
    fn ring_dataset_targets_and_determinism() {
        let n = 10;
        let ds = ring_distance_dataset::<f64>(n, 10_000, 3).unwrap();
        let mut seen = vec![false; n / 2 + 1];
        for s in &ds.samples {
            let t = s.target as usize;
            assert!(t >= 1 && t <= n / 2);
            seen[t] = true;
            // exactly two marked nodes
            let ones: f64 = (0..n).map(|r| s.features.get(r, 0).0).sum();
            assert_eq!(ones, 2.0);
        }
        // coverage of every distance value over 10^4 draws
        assert!(seen[1..].iter().all(|&b| b));
        // splits disjoint and exhaustive
        let mut all: Vec<usize> = ds
            .train_idx
            .iter()
            .chain(&ds.val_idx)
            .chain(&ds.test_idx)
            .copied()
            .collect();
        all.sort_unstable();
        assert_eq!(all, (0..10_000).collect::<Vec<_>>());
        // deterministic under seed
        let ds2 = ring_distance_dataset::<f64>(n, 100, 3).unwrap();
        let ds3 = ring_distance_dataset::<f64>(n, 100, 3).unwrap();
        for (a, b) in ds2.samples.iter().zip(&ds3.samples) {
            assert_eq!(a.target, b.target);
            assert_eq!(a.features, b.features);
        }
    }

    #[test]
    fn ring_dataset_examples() {
        // marked nodes 5 apart on n=25 give y = 5
        assert_eq!(ring_distance(25, 3, 8), 5);
        // adjacent nodes give y = 1
        assert_eq!(ring_distance(25, 7, 8), 1);
        // antipodal on an even ring
        assert_eq!(ring_distance(100, 0, 50), 50);
    }

    #[test]
    fn trivial_mae_closed_form_matches_enumeration() {
        for n in [5usize, 8, 20] {
            let closed: f64 = ring_distance_trivial_mae(n);
            // enumerate all ordered distinct pairs
            let mut dists = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        dists.push(ring_distance(n, i, j) as f64);
                    }
                }
            }
            let mean: f64 = dists.iter().sum::<f64>() / dists.len() as f64;
            let mae: f64 = dists.iter().map(|d| (d - mean).abs()).sum::<f64>() / dists.len() as f64;
            assert!((closed - mae).abs() < 1e-12, "n={n}: {closed} vs {mae}");
        }
    }

    #[test]
    fn edge_list_parsing() {
        let text = "# triangle\n0 1\n1 2   # second edge\n2 0\n";
        let (n, edges) = parse_edge_list(text).unwrap();
        assert_eq!(n, 3);
        assert_eq!(edges, vec![(0, 1), (1, 2), (2, 0)]);
        assert!(parse_edge_list("0\n").is_err());
        assert!(parse_edge_list("# nothing\n").is_err());
    }
}
