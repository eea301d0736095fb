//! Monochromatic matchings, stars and trees in edge-colored hypergraphs, and
//! edge colorings that avoid them.

mod generators;
mod matching;
mod star;
mod tree;

use serde::{Deserialize, Serialize};

pub use generators::{
    assemble_lower_witness, gen_matching_extremal, gen_star_witness, gen_two_factor_split, LowerKind, LowerWitness,
};
pub use matching::{find_mono_matching, find_mono_matching_2col};
pub use star::find_mono_star;
pub use tree::{embed_tree, find_mono_tree, TreeEmbedding};

use crate::error::{Error, Result};
use crate::hypercore::{components, EdgePartition, Hypergraph};
use crate::intersect::intersection_size;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    Matching,
    Star,
    Tree,
}

/// An `r`-uniform tree: connected, and Berge-acyclic, i.e. its vertex-edge
/// incidence graph is a tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTree", into = "RawTree")]
pub struct TreePattern {
    shape: Hypergraph,
}

#[derive(Serialize, Deserialize)]
struct RawTree {
    r: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<RawTree> for TreePattern {
    type Error = Error;
    fn try_from(raw: RawTree) -> Result<Self> {
        TreePattern::new(raw.r, raw.edges)
    }
}

impl From<TreePattern> for RawTree {
    fn from(t: TreePattern) -> Self {
        RawTree { r: t.shape.r(), edges: t.shape.edges().to_vec() }
    }
}

impl TreePattern {
    /// Builds a tree from its edges; the vertices are `0..n` where `n - 1`
    /// is the largest index used, and every one of them must be covered.
    pub fn new(r: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::input("a tree needs at least one edge"));
        }
        let n = edges.iter().flatten().max().map_or(0, |&v| v + 1);
        let shape = Hypergraph::new(n, r, edges)?;
        if components(&shape).len() != 1 {
            return Err(Error::input("tree pattern is not connected"));
        }
        if shape.num_edges() * (r - 1) + 1 != n {
            return Err(Error::input("tree pattern contains a cycle"));
        }
        Ok(TreePattern { shape })
    }

    /// `S_k^r`: `k` edges through vertex 0, otherwise disjoint.
    pub fn star(r: usize, k: usize) -> Result<Self> {
        let edges =
            (0..k).map(|i| std::iter::once(0).chain((0..r - 1).map(|j| 1 + i * (r - 1) + j)).collect()).collect();
        TreePattern::new(r, edges)
    }

    /// Loose path: consecutive edges share one vertex.
    pub fn path(r: usize, k: usize) -> Result<Self> {
        let edges = (0..k).map(|i| (i * (r - 1)..i * (r - 1) + r).collect()).collect();
        TreePattern::new(r, edges)
    }

    pub fn r(&self) -> usize {
        self.shape.r()
    }

    pub fn num_vertices(&self) -> usize {
        self.shape.n()
    }

    pub fn num_edges(&self) -> usize {
        self.shape.num_edges()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        self.shape.edges()
    }

    pub fn as_hypergraph(&self) -> &Hypergraph {
        &self.shape
    }
}

/// A pattern to look for in one class of an edge coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Pattern {
    /// `k` pairwise disjoint edges.
    Matching {
        k: usize,
    },
    /// `k` edges pairwise meeting in exactly one common vertex.
    Star {
        k: usize,
    },
    Tree {
        tree: TreePattern,
    },
}

impl Pattern {
    pub fn kind(&self) -> PatternKind {
        match self {
            Pattern::Matching { .. } => PatternKind::Matching,
            Pattern::Star { .. } => PatternKind::Star,
            Pattern::Tree { .. } => PatternKind::Tree,
        }
    }

    pub fn num_edges(&self) -> usize {
        match self {
            Pattern::Matching { k } | Pattern::Star { k } => *k,
            Pattern::Tree { tree } => tree.num_edges(),
        }
    }
}

/// A monochromatic copy of a pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoWitness {
    pub kind: PatternKind,
    pub class_index: u32,
    /// Host edge indices; for trees, `edge_indices[i]` is the image of tree edge `i`.
    pub edge_indices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<usize>,
    /// Tree vertex `i` maps to host vertex `embedding[i]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Vec<usize>>,
}

/// Checks a witness against the host, the partition and the pattern.
pub fn validate_witness(h: &Hypergraph, p: &EdgePartition, pattern: &Pattern, w: &MonoWitness) -> Result<()> {
    let fail = |m: String| Err(Error::invariant(m));
    if w.kind != pattern.kind() {
        return fail(format!("witness kind {:?} does not match pattern {:?}", w.kind, pattern.kind()));
    }
    if w.edge_indices.len() != pattern.num_edges() {
        return fail(format!("witness has {} edges, pattern {}", w.edge_indices.len(), pattern.num_edges()));
    }
    if p.len() != h.num_edges() {
        return Err(Error::input("partition does not match the host"));
    }
    for &e in &w.edge_indices {
        if e >= h.num_edges() {
            return fail(format!("edge index {e} out of range"));
        }
        if p.class(e) != w.class_index {
            return fail(format!("edge {e} is in class {}, not {}", p.class(e), w.class_index));
        }
    }
    let mut sorted = w.edge_indices.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != w.edge_indices.len() {
        return fail("witness repeats an edge".into());
    }
    let edges: Vec<&[usize]> = w.edge_indices.iter().map(|&e| h.edge(e)).collect();
    match pattern {
        Pattern::Matching { .. } => {
            for (i, a) in edges.iter().enumerate() {
                for b in &edges[i + 1..] {
                    if intersection_size(a, b) != 0 {
                        return fail(format!("matching edges {a:?} and {b:?} intersect"));
                    }
                }
            }
        }
        Pattern::Star { .. } => {
            let Some(c) = w.center else {
                return fail("star witness has no center".into());
            };
            for (i, a) in edges.iter().enumerate() {
                if !a.contains(&c) {
                    return fail(format!("star edge {a:?} misses the center {c}"));
                }
                for b in &edges[i + 1..] {
                    if intersection_size(a, b) != 1 {
                        return fail(format!("star edges {a:?} and {b:?} share more than the center"));
                    }
                }
            }
        }
        Pattern::Tree { tree } => {
            let Some(map) = &w.embedding else {
                return fail("tree witness has no embedding".into());
            };
            if map.len() != tree.num_vertices() {
                return fail("embedding has the wrong length".into());
            }
            let mut image = map.clone();
            image.sort_unstable();
            image.dedup();
            if image.len() != map.len() || image.last().is_some_and(|&v| v >= h.n()) {
                return fail("embedding is not injective into the host".into());
            }
            for (te, &he) in tree.edges().iter().zip(&w.edge_indices) {
                let mut img: Vec<usize> = te.iter().map(|&v| map[v]).collect();
                img.sort_unstable();
                if img != h.edge(he) {
                    return fail(format!("tree edge {te:?} maps to {img:?}, not host edge {he}"));
                }
            }
        }
    }
    Ok(())
}
