use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the vertex count accepted by the exhaustive searches.
pub const DEFAULT_VERTEX_CAP: usize = 64;

/// Largest edge count `complete_hypergraph` will materialise.
pub const MAX_COMPLETE_EDGES: u64 = 1 << 20;

/// An `r`-uniform hypergraph on the vertices `0..n`.
///
/// Edges are strictly increasing vertex lists, pairwise distinct and kept in
/// lexicographic order, so two hypergraphs are equal exactly when they have
/// the same vertex count, uniformity and edge set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph")]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawHypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::new(raw.n, raw.r, raw.edges)
    }
}

impl Hypergraph {
    /// Builds a hypergraph, sorting every edge and the edge list.
    ///
    /// Fails on edges of the wrong size, repeated vertices inside an edge,
    /// out-of-range vertices and duplicate edges.
    pub fn new<E, I>(n: usize, r: usize, edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        if r < 2 {
            return Err(Error::input(format!("uniformity must be at least 2, got {r}")));
        }
        let mut out = Vec::new();
        for (idx, edge) in edges.into_iter().enumerate() {
            let mut e: Vec<usize> = edge.into_iter().collect();
            e.sort_unstable();
            if e.len() != r {
                return Err(Error::input(format!("edge {idx} has {} vertices, expected {r}", e.len())));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::input(format!("edge {idx} repeats a vertex: {e:?}")));
            }
            if let Some(&v) = e.last() {
                if v >= n {
                    return Err(Error::input(format!("edge {idx} uses vertex {v} but n = {n}")));
                }
            }
            out.push(e);
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input(format!("duplicate edge {:?}", w[0])));
        }
        Ok(Hypergraph { n, r, edges: out })
    }

    /// Wraps edges that are already canonical. Only checked in debug builds.
    pub(crate) fn from_canonical(n: usize, r: usize, edges: Vec<Vec<usize>>) -> Self {
        debug_assert!(edges.iter().all(|e| e.len() == r && e.windows(2).all(|w| w[0] < w[1])));
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| e.last().is_none_or(|&v| v < n)));
        Hypergraph { n, r, edges }
    }

    /// The hypergraph with `n` vertices and no edges.
    pub fn edgeless(n: usize, r: usize) -> Self {
        Hypergraph { n, r, edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    /// Index of `edge` (any vertex order) in the canonical edge list.
    pub fn edge_index(&self, edge: &[usize]) -> Option<usize> {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).ok()
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        self.edge_index(edge).is_some()
    }

    /// For every vertex, the ascending list of indices of edges containing it.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Neighbour lists of a graph (`r = 2`), ascending.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            for &u in e {
                for &v in e {
                    if u != v {
                        adj[u].push(v);
                    }
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// The same edge set with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::input("relabelling must cover every vertex"));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::input("relabelling is not a permutation"));
            }
        }
        Hypergraph::new(self.n, self.r, self.edges.iter().map(|e| e.iter().map(|&v| perm[v]).collect::<Vec<_>>()))
    }

    /// Keeps the edges whose indices are listed, on the same vertex set.
    pub fn edge_subset(&self, indices: &[usize]) -> Hypergraph {
        let mut edges: Vec<Vec<usize>> = indices.iter().map(|&i| self.edges[i].clone()).collect();
        edges.sort_unstable();
        edges.dedup();
        Hypergraph::from_canonical(self.n, self.r, edges)
    }
}

/// Number of `k`-subsets of an `n`-set, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// All `r`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        let mut i = r;
        while i > 0 && cur[i - 1] == n - r + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The complete `r`-uniform hypergraph `K_n^r`.
///
/// For `n < r` the result has no edges.
pub fn complete_hypergraph(n: usize, r: usize) -> Result<Hypergraph> {
    if r < 2 {
        return Err(Error::input(format!("uniformity must be at least 2, got {r}")));
    }
    if n > DEFAULT_VERTEX_CAP {
        return Err(Error::resource(format!("K_{n}^{r} exceeds the vertex cap {DEFAULT_VERTEX_CAP}")));
    }
    let count = binomial(n as u64, r as u64);
    if count > MAX_COMPLETE_EDGES {
        return Err(Error::resource(format!("K_{n}^{r} would have {count} edges")));
    }
    Ok(Hypergraph::from_canonical(n, r, combinations(n, r)))
}
