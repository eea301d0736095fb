use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Hypergraph;
use crate::error::{Error, Result};

/// A vertex coloring with colors `1..=m`, where `m` is the largest color used.
///
/// Not every color in `1..=m` has to appear.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct VertexColoring {
    colors: Vec<u32>,
    m: u32,
}

impl TryFrom<Vec<u32>> for VertexColoring {
    type Error = Error;

    fn try_from(colors: Vec<u32>) -> Result<Self> {
        VertexColoring::new(colors)
    }
}

impl From<VertexColoring> for Vec<u32> {
    fn from(c: VertexColoring) -> Self {
        c.colors
    }
}

impl VertexColoring {
    pub fn new(colors: Vec<u32>) -> Result<Self> {
        if let Some(pos) = colors.iter().position(|&c| c == 0) {
            return Err(Error::input(format!("vertex {pos} has color 0; colors start at 1")));
        }
        let m = colors.iter().copied().max().unwrap_or(0);
        Ok(VertexColoring { colors, m })
    }

    /// Every vertex colored 1.
    pub fn monochrome(n: usize) -> Self {
        VertexColoring { colors: vec![1; n], m: u32::from(n > 0) }
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    /// Largest color in use.
    pub fn num_colors(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

/// A partition of the edge set into classes `1..=t`; classes may be empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPartition")]
pub struct EdgePartition {
    class_of: Vec<u32>,
    t: u32,
}

#[derive(Deserialize)]
struct RawPartition {
    class_of: Vec<u32>,
    t: u32,
}

impl TryFrom<RawPartition> for EdgePartition {
    type Error = Error;

    fn try_from(raw: RawPartition) -> Result<Self> {
        EdgePartition::new(raw.class_of, raw.t)
    }
}

impl EdgePartition {
    pub fn new(class_of: Vec<u32>, t: u32) -> Result<Self> {
        if t == 0 {
            return Err(Error::input("an edge partition needs at least one class"));
        }
        if let Some((i, &c)) = class_of.iter().enumerate().find(|(_, &c)| c == 0 || c > t) {
            return Err(Error::input(format!("edge {i} has class {c}, outside 1..={t}")));
        }
        Ok(EdgePartition { class_of, t })
    }

    /// All edges in class 1.
    pub fn single_class(num_edges: usize) -> Self {
        EdgePartition { class_of: vec![1; num_edges], t: 1 }
    }

    pub fn class_of(&self) -> &[u32] {
        &self.class_of
    }

    pub fn class(&self, edge: usize) -> u32 {
        self.class_of[edge]
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    /// Edge indices of class `i` (1-based), ascending.
    pub fn members(&self, i: u32) -> Vec<usize> {
        self.class_of.iter().enumerate().filter(|(_, &c)| c == i).map(|(e, _)| e).collect()
    }

    /// Checks that the partition covers exactly the edges of `h`.
    pub fn check_against(&self, h: &Hypergraph) -> Result<()> {
        if self.class_of.len() != h.num_edges() {
            return Err(Error::input(format!(
                "partition covers {} edges but the hypergraph has {}",
                self.class_of.len(),
                h.num_edges()
            )));
        }
        Ok(())
    }

    /// The spanning sub-hypergraph `(V, E_i)`.
    pub fn class_hypergraph(&self, h: &Hypergraph, i: u32) -> Hypergraph {
        h.edge_subset(&self.members(i))
    }
}

/// True iff no edge of `h` is monochromatic under `c`.
pub fn is_proper(h: &Hypergraph, c: &VertexColoring) -> Result<bool> {
    if c.len() != h.n() {
        return Err(Error::input(format!("coloring has {} entries for {} vertices", c.len(), h.n())));
    }
    Ok(h.edges().iter().all(|e| {
        let first = c.color(e[0]);
        e[1..].iter().any(|&v| c.color(v) != first)
    }))
}

/// A greedy coloring together with the edges that forced each color step.
///
/// An entry `(i, j) -> e` means that edge `e` has exactly one vertex of color
/// `j` and all its other vertices colored `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyWitnesses {
    pub coloring: VertexColoring,
    pub witnesses: BTreeMap<(u32, u32), usize>,
}

impl GreedyWitnesses {
    pub fn witness(&self, i: u32, j: u32) -> Option<usize> {
        self.witnesses.get(&(i, j)).copied()
    }
}

fn check_order(n: usize, order: &[usize]) -> Result<()> {
    if order.len() != n {
        return Err(Error::input(format!("order has {} entries for {n} vertices", order.len())));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::input("order is not a permutation of the vertices"));
        }
    }
    Ok(())
}

/// Greedy coloring in the given vertex order, recording for each refused
/// color the lexicographically first edge that refused it.
pub fn greedy_coloring_with_witnesses(h: &Hypergraph, order: &[usize]) -> Result<GreedyWitnesses> {
    check_order(h.n(), order)?;
    let inc = h.incidence();
    let mut colors = vec![0u32; h.n()];
    let mut witnesses = BTreeMap::new();
    let mut refusing: Vec<Option<usize>> = Vec::new();
    for &v in order {
        refusing.clear();
        for &ei in &inc[v] {
            let e = h.edge(ei);
            let mut others = e.iter().copied().filter(|&u| u != v);
            let Some(first) = others.next() else { continue };
            let c = colors[first];
            if c == 0 || !others.all(|u| colors[u] == c) {
                continue;
            }
            let slot = c as usize;
            if refusing.len() <= slot {
                refusing.resize(slot + 1, None);
            }
            refusing[slot].get_or_insert(ei);
        }
        let mut j = 1u32;
        while refusing.get(j as usize).is_some_and(|r| r.is_some()) {
            j += 1;
        }
        colors[v] = j;
        for i in 1..j {
            let e = refusing[i as usize].expect("every smaller color was refused");
            witnesses.entry((i, j)).or_insert(e);
        }
    }
    Ok(GreedyWitnesses { coloring: VertexColoring::new(colors)?, witnesses })
}

/// Plain greedy coloring in the given order.
pub fn greedy_coloring(h: &Hypergraph, order: &[usize]) -> Result<VertexColoring> {
    Ok(greedy_coloring_with_witnesses(h, order)?.coloring)
}
