use serde::{Deserialize, Serialize};

use super::Pattern;
use crate::error::{Error, Result};
use crate::hypercore::{complete_hypergraph, find_coloring, EdgePartition, Hypergraph, SearchLimits};
use crate::intersect::{one_intersection_graph, partition_from_igraph_coloring};

/// `K_N^r`, `N = (t-1)(k-1) + kr - 1`, with a `t`-edge-coloring in which no
/// class has `k` disjoint edges.
///
/// The first `(t-1)(k-1)` vertices form blocks `A_1..A_{t-1}` of size
/// `k - 1`; an edge gets the least `i` with `e ∩ A_i ≠ ∅`, or `t` when it
/// lies in the remaining `kr - 1` vertices.
pub fn gen_matching_extremal(r: usize, k: usize, t: usize) -> Result<(Hypergraph, EdgePartition)> {
    if r < 2 || k < 1 || t < 1 {
        return Err(Error::input(format!("need r >= 2, k >= 1, t >= 1; got r={r} k={k} t={t}")));
    }
    let n = (t - 1) * (k - 1) + k * r - 1;
    let h = complete_hypergraph(n, r)?;
    let classes = h
        .edges()
        .iter()
        .map(|e| {
            let first = e[0];
            if k > 1 && first < (t - 1) * (k - 1) {
                (first / (k - 1) + 1) as u32
            } else {
                t as u32
            }
        })
        .collect();
    let p = EdgePartition::new(classes, t as u32)?;
    Ok((h, p))
}

/// `K_{k(r-1)}^r`: chromatic number `k`, too few vertices for `S_k^r`.
pub fn gen_star_witness(r: usize, k: usize) -> Result<Hypergraph> {
    if r < 2 || k < 1 {
        return Err(Error::input(format!("need r >= 2, k >= 1; got r={r} k={k}")));
    }
    complete_hypergraph(k * (r - 1), r)
}

/// `K_{2k-1}` split into two `(k-1)`-regular classes, `k` odd: the Walecki
/// decomposition into `k - 1` Hamiltonian cycles, the first `(k-1)/2` in
/// class 1 and the rest in class 2.
pub fn gen_two_factor_split(k: usize) -> Result<(Hypergraph, EdgePartition)> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::input(format!("k must be odd and at least 3, got {k}")));
    }
    let n = 2 * k - 1;
    let m = k - 1; // vertices 0..2m on a circle, vertex 2m in the middle
    let hub = 2 * m;
    let mut cycles: Vec<Vec<usize>> = Vec::with_capacity(m);
    for j in 0..m {
        let mut cyc = vec![hub, j];
        for step in 1..2 * m {
            let offset = step.div_ceil(2);
            let v = if step % 2 == 1 { j + offset } else { j + 2 * m - offset };
            cyc.push(v % (2 * m));
        }
        cycles.push(cyc);
    }
    let h = complete_hypergraph(n, 2)?;
    let mut classes = vec![0u32; h.num_edges()];
    for (ci, cyc) in cycles.iter().enumerate() {
        let class = if ci < m / 2 { 1 } else { 2 };
        for i in 0..cyc.len() {
            let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
            let e = h.edge_index(&[a.min(b), a.max(b)]).expect("complete graph");
            if classes[e] != 0 {
                return Err(Error::invariant(format!("edge ({a},{b}) used by two cycles")));
            }
            classes[e] = class;
        }
    }
    if classes.contains(&0) {
        return Err(Error::invariant("cycles do not cover the complete graph"));
    }
    Ok((h, EdgePartition::new(classes, 2)?))
}

/// Which lower-bound construction to assemble.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LowerKind {
    /// The extremal matching coloring of `K_N^r`.
    Matching { r: usize, k: usize, t: usize },
    /// One class on `K_{k(r-1)}^r`.
    Star { r: usize, k: usize },
    /// The two-cycle-class split of `K_{2k-1}`.
    TwoFactor { k: usize },
    /// A `t`-coloring of `K_n^r` with no two same-class edges meeting in
    /// one vertex, found by coloring the 1-intersection graph.
    StarPairs { r: usize, n: usize, t: usize },
}

/// A colored complete hypergraph certifying `χ(T, t) ≥ chi + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerWitness {
    pub pattern: Pattern,
    pub host: Hypergraph,
    pub partition: EdgePartition,
    /// `⌈N / (r - 1)⌉`, the chromatic number of the host `K_N^r`.
    pub chi: usize,
    pub lower_bound: usize,
}

pub fn assemble_lower_witness(kind: &LowerKind, limits: &SearchLimits) -> Result<LowerWitness> {
    let (pattern, host, partition) = match *kind {
        LowerKind::Matching { r, k, t } => {
            let (h, p) = gen_matching_extremal(r, k, t)?;
            (Pattern::Matching { k }, h, p)
        }
        LowerKind::Star { r, k } => {
            let h = gen_star_witness(r, k)?;
            let p = EdgePartition::single_class(h.num_edges());
            (Pattern::Star { k }, h, p)
        }
        LowerKind::TwoFactor { k } => {
            let (h, p) = gen_two_factor_split(k)?;
            (Pattern::Star { k }, h, p)
        }
        LowerKind::StarPairs { r, n, t } => {
            let h = complete_hypergraph(n, r)?;
            let ig = one_intersection_graph(&h);
            let c = find_coloring(&ig, t, limits)?
                .ok_or_else(|| Error::precondition(format!("K_{n}^{r} has no such {t}-coloring")))?;
            let mut p = partition_from_igraph_coloring(&h, &c)?;
            if (p.t() as usize) < t {
                p = EdgePartition::new(p.class_of().to_vec(), t as u32)?;
            }
            (Pattern::Star { k: 2 }, h, p)
        }
    };
    let r = host.r();
    let chi = host.n().div_ceil(r - 1);
    Ok(LowerWitness { pattern, host, partition, chi, lower_bound: chi + 1 })
}
