//! The 1-intersection graph and the component structure of triple systems
//! in which no two triples meet in exactly one vertex.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::{components, is_proper, EdgePartition, Hypergraph, VertexColoring};

/// Size of the intersection of two ascending vertex lists.
pub(crate) fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// The graph on the edges of `h` in which two edges are adjacent iff they
/// share exactly one vertex. Vertex `i` of the result is edge `i` of `h`.
pub fn one_intersection_graph(h: &Hypergraph) -> Hypergraph {
    let m = h.num_edges();
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if intersection_size(h.edge(i), h.edge(j)) == 1 {
                pairs.push(vec![i, j]);
            }
        }
    }
    Hypergraph::from_canonical(m, 2, pairs)
}

/// Reads a proper coloring of the 1-intersection graph as an edge partition.
pub fn partition_from_igraph_coloring(h: &Hypergraph, c: &VertexColoring) -> Result<EdgePartition> {
    let ig = one_intersection_graph(h);
    if !is_proper(&ig, c)? {
        return Err(Error::input(
            "coloring is not proper on the 1-intersection graph: two same-class edges share exactly one vertex",
        ));
    }
    EdgePartition::new(c.colors().to_vec(), c.num_colors().max(1))
}

/// First pair of edge indices meeting in exactly one vertex, if any.
pub fn first_one_intersection(h: &Hypergraph) -> Option<(usize, usize)> {
    let m = h.num_edges();
    (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).find(|&(i, j)| intersection_size(h.edge(i), h.edge(j)) == 1)
}

/// One component of a triple system without 1-intersections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Part {
    /// `k` triples all containing the base pair, otherwise disjoint.
    B { base: (usize, usize), edges: Vec<usize> },
    /// Three or four triples on the same four vertices.
    K { quad: [usize; 4], edges: Vec<usize> },
    /// A vertex on no triple.
    Trivial { vertex: usize },
}

impl Part {
    pub fn edges(&self) -> &[usize] {
        match self {
            Part::B { edges, .. } | Part::K { edges, .. } => edges,
            Part::Trivial { .. } => &[],
        }
    }

    /// Vertices covered by this part, ascending.
    pub fn vertices(&self, h: &Hypergraph) -> Vec<usize> {
        match self {
            Part::Trivial { vertex } => vec![*vertex],
            Part::K { quad, .. } => quad.to_vec(),
            Part::B { edges, .. } => {
                let mut vs: Vec<usize> = edges.iter().flat_map(|&e| h.edge(e).iter().copied()).collect();
                vs.sort_unstable();
                vs.dedup();
                vs
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDecomposition {
    pub parts: Vec<Part>,
}

impl StructureDecomposition {
    /// Rebuilds the triple system from the parts; equals the input for a
    /// successful decomposition.
    pub fn reassemble(&self, h: &Hypergraph) -> Hypergraph {
        let mut idx: Vec<usize> = self.parts.iter().flat_map(|p| p.edges().iter().copied()).collect();
        idx.sort_unstable();
        h.edge_subset(&idx)
    }
}

fn require_triples(h: &Hypergraph) -> Result<()> {
    if h.r() != 3 {
        return Err(Error::precondition(format!("expected a 3-uniform hypergraph, got r = {}", h.r())));
    }
    if let Some((i, j)) = first_one_intersection(h) {
        return Err(Error::precondition(format!(
            "edges {i} {:?} and {j} {:?} intersect in exactly one vertex",
            h.edge(i),
            h.edge(j)
        )));
    }
    Ok(())
}

/// Classifies every component of a triple system without 1-intersections as
/// a `B_k` (with its base), a K-component (with its four vertices), or a
/// trivial vertex.
pub fn structure_decompose(h: &Hypergraph) -> Result<StructureDecomposition> {
    require_triples(h)?;
    let inc = h.incidence();
    let mut parts = Vec::new();
    for comp in components(h) {
        if comp.len() == 1 {
            parts.push(Part::Trivial { vertex: comp[0] });
            continue;
        }
        let mut edges: Vec<usize> = comp.iter().flat_map(|&v| inc[v].iter().copied()).collect();
        edges.sort_unstable();
        edges.dedup();
        parts.push(classify(h, &comp, edges)?);
    }
    Ok(StructureDecomposition { parts })
}

fn classify(h: &Hypergraph, comp: &[usize], edges: Vec<usize>) -> Result<Part> {
    if comp.len() == 4 && edges.len() >= 3 {
        return Ok(Part::K { quad: [comp[0], comp[1], comp[2], comp[3]], edges });
    }
    // Largest family of triples through a common pair; least pair on ties.
    let mut best: Option<((usize, usize), usize)> = None;
    for (i, &a) in comp.iter().enumerate() {
        for &b in &comp[i + 1..] {
            let count = edges.iter().filter(|&&e| h.edge(e).contains(&a) && h.edge(e).contains(&b)).count();
            if best.is_none_or(|(_, c)| count > c) {
                best = Some(((a, b), count));
            }
        }
    }
    let (base, count) = best.expect("a nontrivial component has at least three vertices");
    if count != edges.len() {
        return Err(Error::invariant(format!("component {comp:?} is neither a B- nor a K-component")));
    }
    Ok(Part::B { base, edges })
}

/// A proper 2-coloring of a triple system without 1-intersections, read off
/// its structure: B-bases get colors 1 and 2, K-quadruples 1,1,2,2, and
/// every other vertex color 1.
pub fn two_color_no_one_intersections(h: &Hypergraph) -> Result<VertexColoring> {
    if h.is_edgeless() {
        return Err(Error::precondition("hypergraph has no edges"));
    }
    let dec = structure_decompose(h)?;
    let mut colors = vec![1u32; h.n()];
    for part in &dec.parts {
        match part {
            Part::B { base: (_, w), .. } => colors[*w] = 2,
            Part::K { quad, .. } => {
                colors[quad[2]] = 2;
                colors[quad[3]] = 2;
            }
            Part::Trivial { .. } => {}
        }
    }
    let c = VertexColoring::new(colors)?;
    if !is_proper(h, &c)? {
        return Err(Error::invariant("structural 2-coloring is not proper"));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::complete_hypergraph;

    fn h3(n: usize, edges: &[[usize; 3]]) -> Hypergraph {
        Hypergraph::new(n, 3, edges.iter().map(|e| e.to_vec())).unwrap()
    }

    #[test]
    fn k5_gives_petersen() {
        let k5 = complete_hypergraph(5, 3).unwrap();
        let p = one_intersection_graph(&k5);
        assert_eq!(p.num_edges(), 15);
        assert!(p.degrees().iter().all(|&d| d == 3));
        // adjacency iff union covers all five points
        for e in p.edges() {
            let mut u: Vec<usize> = k5.edge(e[0]).iter().chain(k5.edge(e[1])).copied().collect();
            u.sort_unstable();
            u.dedup();
            assert_eq!(u.len(), 5);
        }
    }

    #[test]
    fn igraph_trivial_cases() {
        let b3 = h3(5, &[[0, 1, 2], [0, 1, 3], [0, 1, 4]]);
        assert_eq!(one_intersection_graph(&b3), Hypergraph::edgeless(3, 2));
        let two = h3(6, &[[0, 1, 2], [3, 4, 5]]);
        assert_eq!(one_intersection_graph(&two), Hypergraph::edgeless(2, 2));
    }

    #[test]
    fn partition_examples() {
        let b2 = h3(4, &[[0, 1, 2], [0, 1, 3]]);
        let p = partition_from_igraph_coloring(&b2, &VertexColoring::monochrome(2)).unwrap();
        assert_eq!(p.t(), 1);
        let pair = h3(5, &[[0, 1, 2], [2, 3, 4]]);
        let p = partition_from_igraph_coloring(&pair, &VertexColoring::new(vec![1, 2]).unwrap()).unwrap();
        assert_eq!(p.members(1), vec![0]);
        assert_eq!(p.members(2), vec![1]);
        assert!(matches!(partition_from_igraph_coloring(&pair, &VertexColoring::monochrome(2)), Err(Error::Input(_))));
    }

    #[test]
    fn decompose_b3() {
        let h = h3(5, &[[0, 1, 2], [0, 1, 3], [0, 1, 4]]);
        let d = structure_decompose(&h).unwrap();
        assert_eq!(d.parts, vec![Part::B { base: (0, 1), edges: vec![0, 1, 2] }]);
    }

    #[test]
    fn decompose_k_and_b1() {
        let h = h3(4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]);
        let d = structure_decompose(&h).unwrap();
        assert_eq!(d.parts, vec![Part::K { quad: [0, 1, 2, 3], edges: vec![0, 1, 2, 3] }]);
        let h = h3(3, &[[0, 1, 2]]);
        assert_eq!(structure_decompose(&h).unwrap().parts, vec![Part::B { base: (0, 1), edges: vec![0] }]);
    }

    #[test]
    fn two_triples_on_four_vertices_is_b2() {
        let h = h3(4, &[[0, 2, 3], [1, 2, 3]]);
        let d = structure_decompose(&h).unwrap();
        assert_eq!(d.parts, vec![Part::B { base: (2, 3), edges: vec![0, 1] }]);
    }

    #[test]
    fn decompose_rejects_one_intersection() {
        let h = h3(5, &[[0, 1, 2], [2, 3, 4]]);
        let err = structure_decompose(&h).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("edges 0") && m.contains("and 1")));
        let g = Hypergraph::new(3, 2, vec![vec![0, 1]]).unwrap();
        assert!(structure_decompose(&g).is_err());
    }

    #[test]
    fn two_coloring_examples() {
        let b3 = h3(5, &[[0, 1, 2], [0, 1, 3], [0, 1, 4]]);
        let c = two_color_no_one_intersections(&b3).unwrap();
        assert_eq!(c.colors(), &[1, 2, 1, 1, 1]);
        let k = h3(4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]);
        assert_eq!(two_color_no_one_intersections(&k).unwrap().colors(), &[1, 1, 2, 2]);
        let both = h3(10, &[[0, 1, 2], [0, 1, 3], [0, 1, 4], [5, 6, 7], [5, 6, 8], [5, 7, 8], [6, 7, 8]]);
        let c = two_color_no_one_intersections(&both).unwrap();
        assert!(is_proper(&both, &c).unwrap());
        assert_eq!(c.num_colors(), 2);
        assert!(two_color_no_one_intersections(&Hypergraph::edgeless(3, 3)).is_err());
    }
}
