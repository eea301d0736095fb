//! Skeletons of partitioned triple systems: one matching per class, built
//! from the B-bases and K-pairs of each class, with switching to remove bad
//! complete components.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::{components, EdgePartition, Hypergraph};
use crate::intersect::{structure_decompose, Part, StructureDecomposition};

/// Where a skeleton edge came from: a part of the decomposition of its class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "component", rename_all = "snake_case")]
pub enum Provenance {
    BBase(usize),
    KPair(usize),
}

impl Provenance {
    pub fn component(self) -> usize {
        match self {
            Provenance::BBase(c) | Provenance::KPair(c) => c,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonEdge {
    pub u: usize,
    pub v: usize,
    /// Class index `1..=t`; the edges of one index form a matching.
    pub matching: u32,
    pub provenance: Provenance,
}

/// A multigraph on the vertices of a triple system, given as a union of
/// matchings `M_1..M_t`, such that every triple contains one of its edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skeleton {
    pub n: usize,
    pub t: u32,
    pub edges: Vec<SkeletonEdge>,
    /// Structure decomposition of each class, index `i - 1` for class `i`.
    pub decompositions: Vec<StructureDecomposition>,
}

/// Counters from the switching loop.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchTrace {
    pub initial_bad: usize,
    pub switches: usize,
}

impl Skeleton {
    /// The underlying simple graph; parallel edges collapse.
    pub fn simple_graph(&self) -> Hypergraph {
        let mut pairs: Vec<Vec<usize>> = self.edges.iter().map(|e| vec![e.u, e.v]).collect();
        pairs.sort_unstable();
        pairs.dedup();
        Hypergraph::from_canonical(self.n, 2, pairs)
    }

    /// Connected components of the multigraph, ordered by least vertex; the
    /// index in this list is the component id.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components(&self.simple_graph())
    }

    /// Multigraph degree of every vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    pub fn matching(&self, i: u32) -> impl Iterator<Item = &SkeletonEdge> {
        self.edges.iter().filter(move |e| e.matching == i)
    }

    /// Ids of components whose underlying simple graph is `K_{t+1}`.
    pub fn complete_components(&self) -> Vec<usize> {
        let g = self.simple_graph();
        let deg = g.degrees();
        let size = self.t as usize + 1;
        self.components()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() == size && c.iter().all(|&v| deg[v] == size - 1))
            .map(|(i, _)| i)
            .collect()
    }

    fn has_b_base_in_m1(&self, comp: &[usize]) -> bool {
        self.matching(1).any(|e| matches!(e.provenance, Provenance::BBase(_)) && comp.binary_search(&e.u).is_ok())
    }

    fn sort_edges(&mut self) {
        self.edges.sort_by_key(|e| (e.matching, e.u, e.v));
    }
}

fn check_inputs(h: &Hypergraph, p: &EdgePartition) -> Result<()> {
    if h.r() != 3 {
        return Err(Error::precondition(format!("skeletons need a triple system, got r = {}", h.r())));
    }
    p.check_against(h)?;
    if p.t() < 2 {
        return Err(Error::precondition("skeletons need at least two classes"));
    }
    Ok(())
}

/// The skeleton before switching: every B-base, and for every K-component
/// the lexicographically least perfect matching of its four vertices.
pub fn initial_skeleton(h: &Hypergraph, p: &EdgePartition) -> Result<Skeleton> {
    check_inputs(h, p)?;
    let mut edges = Vec::new();
    let mut decompositions = Vec::with_capacity(p.t() as usize);
    for i in 1..=p.t() {
        let class = p.class_hypergraph(h, i);
        let dec = structure_decompose(&class).map_err(|e| match e {
            Error::Precondition(m) => Error::precondition(format!("class {i}: {m}")),
            other => other,
        })?;
        // Parts index edges of the class hypergraph; map them back to `h`.
        let members = p.members(i);
        let dec = StructureDecomposition {
            parts: dec.parts.into_iter().map(|part| remap_part(part, &class, h, &members)).collect(),
        };
        for (cid, part) in dec.parts.iter().enumerate() {
            match part {
                Part::B { base: (a, b), .. } => {
                    edges.push(SkeletonEdge { u: *a, v: *b, matching: i, provenance: Provenance::BBase(cid) })
                }
                Part::K { quad: [a, b, c, d], .. } => {
                    for (u, v) in [(*a, *b), (*c, *d)] {
                        edges.push(SkeletonEdge { u, v, matching: i, provenance: Provenance::KPair(cid) });
                    }
                }
                Part::Trivial { .. } => {}
            }
        }
        decompositions.push(dec);
    }
    let mut s = Skeleton { n: h.n(), t: p.t(), edges, decompositions };
    s.sort_edges();
    Ok(s)
}

fn remap_part(part: Part, class: &Hypergraph, h: &Hypergraph, members: &[usize]) -> Part {
    let to_h = |e: usize| {
        let idx = h.edge_index(class.edge(e)).expect("class edge belongs to h");
        debug_assert!(members.contains(&idx));
        idx
    };
    match part {
        Part::B { base, edges } => Part::B { base, edges: edges.into_iter().map(to_h).collect() },
        Part::K { quad, edges } => Part::K { quad, edges: edges.into_iter().map(to_h).collect() },
        t @ Part::Trivial { .. } => t,
    }
}

/// Components isomorphic to `K_{t+1}` that have no `M_1` edge coming from a
/// B-base of class 1.
pub fn find_bad_components(s: &Skeleton) -> Vec<usize> {
    let comps = s.components();
    s.complete_components().into_iter().filter(|&id| !s.has_b_base_in_m1(&comps[id])).collect()
}

/// Replaces the two `M_1` pairs `(x,y),(u,v)` of the K-component behind an
/// `M_1` edge of the bad component `bad` by `(x,u),(y,v)`.
pub fn switch(s: &Skeleton, bad: usize) -> Result<Skeleton> {
    let comps = s.components();
    let comp = comps.get(bad).ok_or_else(|| Error::precondition(format!("no component with id {bad}")))?;
    if !find_bad_components(s).contains(&bad) {
        return Err(Error::precondition(format!("component {bad} is not bad")));
    }
    let (xi, first) = s
        .edges
        .iter()
        .enumerate()
        .find(|(_, e)| e.matching == 1 && comp.binary_search(&e.u).is_ok())
        .ok_or_else(|| Error::invariant("bad component carries no M_1 edge"))?;
    let Provenance::KPair(cid) = first.provenance else {
        return Err(Error::invariant("M_1 edge of a bad component is a B-base"));
    };
    let (yi, partner) = s
        .edges
        .iter()
        .enumerate()
        .find(|&(j, e)| j != xi && e.matching == 1 && e.provenance == Provenance::KPair(cid))
        .ok_or_else(|| Error::invariant("K-component contributes a single pair"))?;
    let (x, y, u, v) = (first.u, first.v, partner.u, partner.v);
    let mut out = s.clone();
    let (p1, p2) = ((x.min(u), x.max(u)), (y.min(v), y.max(v)));
    out.edges[xi] = SkeletonEdge { u: p1.0, v: p1.1, matching: 1, provenance: Provenance::KPair(cid) };
    out.edges[yi] = SkeletonEdge { u: p2.0, v: p2.1, matching: 1, provenance: Provenance::KPair(cid) };
    out.sort_edges();
    Ok(out)
}

/// Builds the skeleton and repairs bad components until none remain.
pub fn build_skeleton(h: &Hypergraph, p: &EdgePartition) -> Result<Skeleton> {
    build_skeleton_traced(h, p).map(|(s, _)| s)
}

pub fn build_skeleton_traced(h: &Hypergraph, p: &EdgePartition) -> Result<(Skeleton, SwitchTrace)> {
    let mut s = initial_skeleton(h, p)?;
    let mut bad = find_bad_components(&s);
    let trace_start = bad.len();
    let mut switches = 0;
    while let Some(&first) = bad.first() {
        s = switch(&s, first)?;
        switches += 1;
        let next = find_bad_components(&s);
        if next.len() >= bad.len() {
            return Err(Error::invariant(format!(
                "switch did not reduce bad components ({} -> {})",
                bad.len(),
                next.len()
            )));
        }
        bad = next;
    }
    Ok((s, SwitchTrace { initial_bad: trace_start, switches }))
}

/// Checks every structural property a finished skeleton must have.
pub fn verify_skeleton(h: &Hypergraph, p: &EdgePartition, s: &Skeleton) -> Result<()> {
    let fail = |m: String| Err(Error::invariant(m));
    // each M_i is a matching
    for i in 1..=s.t {
        let mut used = vec![false; s.n];
        for e in s.matching(i) {
            if e.u >= e.v || std::mem::replace(&mut used[e.u], true) || std::mem::replace(&mut used[e.v], true) {
                return fail(format!("M_{i} is not a matching at ({}, {})", e.u, e.v));
            }
        }
    }
    // every triple contains a skeleton edge
    for (ti, t) in h.edges().iter().enumerate() {
        if !s.edges.iter().any(|e| t.contains(&e.u) && t.contains(&e.v)) {
            return fail(format!("triple {ti} {t:?} contains no skeleton edge"));
        }
    }
    if let Some(v) = s.degrees().iter().position(|&d| d > s.t as usize) {
        return fail(format!("vertex {v} has degree above {}", s.t));
    }
    let bad = find_bad_components(s);
    if !bad.is_empty() {
        return fail(format!("bad components remain: {bad:?}"));
    }
    // complete components are factorized: each pair carried exactly once
    let comps = s.components();
    for id in s.complete_components() {
        let c = &comps[id];
        for (a_i, &a) in c.iter().enumerate() {
            for &b in &c[a_i + 1..] {
                let carried = s.edges.iter().filter(|e| (e.u, e.v) == (a, b)).count();
                if carried != 1 {
                    return fail(format!("pair ({a},{b}) of complete component {id} carried {carried} times"));
                }
            }
        }
    }
    // provenance matches the class decompositions
    for i in 1..=s.t {
        let dec = &s.decompositions[i as usize - 1];
        for (cid, part) in dec.parts.iter().enumerate() {
            let mine: Vec<&SkeletonEdge> = s.matching(i).filter(|e| e.provenance.component() == cid).collect();
            match part {
                Part::B { base, .. } => {
                    if mine.len() != 1
                        || mine[0].provenance != Provenance::BBase(cid)
                        || (mine[0].u, mine[0].v) != *base
                    {
                        return fail(format!("class {i} part {cid}: B-base edge mismatch"));
                    }
                }
                Part::K { quad, .. } => {
                    let ok = mine.len() == 2 && mine.iter().all(|e| e.provenance == Provenance::KPair(cid)) && {
                        let mut vs = vec![mine[0].u, mine[0].v, mine[1].u, mine[1].v];
                        vs.sort_unstable();
                        vs == quad.to_vec()
                    };
                    if !ok {
                        return fail(format!("class {i} part {cid}: K-pairs mismatch"));
                    }
                }
                Part::Trivial { .. } => {
                    if !mine.is_empty() {
                        return fail(format!("class {i} part {cid}: trivial part has edges"));
                    }
                }
            }
        }
        let class_edges = p.members(i);
        let mut covered: Vec<usize> = dec.parts.iter().flat_map(|pt| pt.edges().iter().copied()).collect();
        covered.sort_unstable();
        if covered != class_edges {
            return fail(format!("class {i}: decomposition does not cover the class"));
        }
    }
    Ok(())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn h3(n: usize, edges: &[[usize; 3]]) -> Hypergraph {
        Hypergraph::new(n, 3, edges.iter().map(|e| e.to_vec())).unwrap()
    }

    fn partition_by_edges(h: &Hypergraph, classes: &[(&[usize; 3], u32)], t: u32) -> EdgePartition {
        let mut cls = vec![0; h.num_edges()];
        for (e, c) in classes {
            cls[h.edge_index(&e[..]).unwrap()] = *c;
        }
        EdgePartition::new(cls, t).unwrap()
    }

    /// K_4 on {0,1,2,3} factorized by a K-component of class 1 and four B_1s
    /// in classes 2 and 3.
    pub(crate) fn bad_k4_fixture() -> (Hypergraph, EdgePartition) {
        let k = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
        let c2 = [[0, 2, 4], [1, 3, 5]];
        let c3 = [[0, 3, 6], [1, 2, 7]];
        let all: Vec<[usize; 3]> = k.iter().chain(&c2).chain(&c3).copied().collect();
        let h = h3(8, &all);
        let mut classes: Vec<(&[usize; 3], u32)> = k.iter().map(|e| (e, 1)).collect();
        classes.extend(c2.iter().map(|e| (e, 2)));
        classes.extend(c3.iter().map(|e| (e, 3)));
        let p = partition_by_edges(&h, &classes, 3);
        (h, p)
    }

    #[test]
    fn disjoint_b_parts_give_disjoint_bases() {
        let h = h3(7, &[[0, 1, 2], [0, 1, 3], [4, 5, 6]]);
        let p = EdgePartition::new(vec![1; 3], 2).unwrap();
        let s = build_skeleton(&h, &p).unwrap();
        let pairs: Vec<(usize, usize, u32)> = s.edges.iter().map(|e| (e.u, e.v, e.matching)).collect();
        assert_eq!(pairs, vec![(0, 1, 1), (4, 5, 1)]);
        assert!(s.complete_components().is_empty());
        verify_skeleton(&h, &p, &s).unwrap();
    }

    #[test]
    fn k_component_least_matching() {
        let h = h3(4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]);
        let p = EdgePartition::new(vec![1; 4], 2).unwrap();
        let s = build_skeleton(&h, &p).unwrap();
        let pairs: Vec<(usize, usize)> = s.matching(1).map(|e| (e.u, e.v)).collect();
        assert_eq!(pairs, vec![(0, 1), (2, 3)]);
        // cover-check oracle
        for t in h.edges() {
            assert!(pairs.iter().any(|&(a, b)| t.contains(&a) && t.contains(&b)));
        }
    }

    #[test]
    fn switching_repairs_bad_k4() {
        let (h, p) = bad_k4_fixture();
        let s0 = initial_skeleton(&h, &p).unwrap();
        assert_eq!(s0.complete_components(), vec![0]);
        assert_eq!(find_bad_components(&s0), vec![0]);
        let s1 = switch(&s0, 0).unwrap();
        assert!(find_bad_components(&s1).is_empty());
        let m1: Vec<(usize, usize)> = s1.matching(1).map(|e| (e.u, e.v)).collect();
        assert_eq!(m1, vec![(0, 2), (1, 3)]);
        let (s, trace) = build_skeleton_traced(&h, &p).unwrap();
        assert_eq!(s, s1);
        assert_eq!(trace, SwitchTrace { initial_bad: 1, switches: 1 });
        verify_skeleton(&h, &p, &s).unwrap();
    }

    #[test]
    fn k4_with_b_base_is_not_bad() {
        let edges = [[0, 1, 4], [2, 3, 5], [0, 2, 6], [1, 3, 7], [0, 3, 8], [1, 2, 9]];
        let h = h3(10, &edges);
        let classes: Vec<(&[usize; 3], u32)> = edges.iter().zip([1, 1, 2, 2, 3, 3]).collect();
        let p = partition_by_edges(&h, &classes, 3);
        let s = build_skeleton(&h, &p).unwrap();
        assert_eq!(s.complete_components().len(), 1);
        assert!(find_bad_components(&s).is_empty());
        verify_skeleton(&h, &p, &s).unwrap();
    }

    #[test]
    fn switch_melds_components() {
        // Class 1 holds K-components on {0,1,2,3} and {4,5,6,7}; classes 2
        // and 3 complete a K_4 on {0,1,4,5} around the M_1 pairs (0,1) and
        // (4,5). The partner pair (2,3) lies outside, so the switch merges.
        let k1 = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
        let k2 = [[4, 5, 6], [4, 5, 7], [4, 6, 7], [5, 6, 7]];
        let c2 = [[0, 4, 8], [1, 5, 9]];
        let c3 = [[0, 5, 10], [1, 4, 11]];
        let all: Vec<[usize; 3]> = k1.iter().chain(&k2).chain(&c2).chain(&c3).copied().collect();
        let h = h3(12, &all);
        let mut classes: Vec<(&[usize; 3], u32)> = k1.iter().chain(&k2).map(|e| (e, 1)).collect();
        classes.extend(c2.iter().map(|e| (e, 2)));
        classes.extend(c3.iter().map(|e| (e, 3)));
        let p = partition_by_edges(&h, &classes, 3);
        let s0 = initial_skeleton(&h, &p).unwrap();
        let comps0 = s0.components();
        let bad = find_bad_components(&s0);
        assert_eq!(bad.len(), 1);
        assert_eq!(comps0[bad[0]], vec![0, 1, 4, 5]);
        let s1 = switch(&s0, bad[0]).unwrap();
        let comps1 = s1.components();
        assert_eq!(comps1.len(), comps0.len() - 1);
        assert!(comps1.contains(&vec![0, 1, 2, 3, 4, 5]));
        assert!(find_bad_components(&s1).is_empty());
        verify_skeleton(&h, &p, &s1).unwrap();
    }

    #[test]
    fn preconditions() {
        let h = h3(5, &[[0, 1, 2], [2, 3, 4]]);
        let p = EdgePartition::new(vec![1, 1], 2).unwrap();
        assert!(matches!(build_skeleton(&h, &p), Err(Error::Precondition(_))));
        let p = EdgePartition::new(vec![1, 2], 1).unwrap_err();
        assert!(matches!(p, Error::Input(_)));
        let p1 = EdgePartition::single_class(2);
        assert!(matches!(build_skeleton(&h, &p1), Err(Error::Precondition(_))));
        let (h, p) = bad_k4_fixture();
        let s = build_skeleton(&h, &p).unwrap();
        assert!(matches!(switch(&s, 0), Err(Error::Precondition(_))));
    }
}
