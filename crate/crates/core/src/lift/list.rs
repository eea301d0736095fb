use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::Hypergraph;

/// A set of colors from `1..=64`, bit `c - 1` standing for color `c`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColorSet(pub u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    /// Colors `lo..=hi`.
    pub fn range(lo: u32, hi: u32) -> Self {
        (lo..=hi).collect()
    }

    pub fn contains(self, c: u32) -> bool {
        (1..=64).contains(&c) && self.0 & (1 << (c - 1)) != 0
    }

    pub fn insert(&mut self, c: u32) {
        assert!((1..=64).contains(&c), "color {c} outside 1..=64");
        self.0 |= 1 << (c - 1);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn without(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let c = bits.trailing_zeros();
            bits &= bits - 1;
            Some(c + 1)
        })
    }

    pub fn min(self) -> Option<u32> {
        self.iter().next()
    }
}

impl FromIterator<u32> for ColorSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let mut s = ColorSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

/// A list coloring and the size of the part that needed search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListColoring {
    pub colors: Vec<u32>,
    /// Vertices left after peeling, colored by backtracking.
    pub residue: usize,
}

/// Proper coloring of the graph `g` with `colors[v] ∈ lists[v]`.
///
/// Vertices with fewer live neighbours than list entries are peeled off and
/// colored last; whatever remains is colored by backtracking, most
/// constrained vertex first.
pub fn list_color(g: &Hypergraph, lists: &[ColorSet]) -> Result<ListColoring> {
    if g.r() != 2 {
        return Err(Error::input("list_color expects a graph"));
    }
    if lists.len() != g.n() {
        return Err(Error::input(format!("{} lists for {} vertices", lists.len(), g.n())));
    }
    let adj = g.adjacency();
    let n = g.n();
    let mut live_deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut peeled = vec![false; n];
    let mut stack = Vec::new();
    let mut frontier: Vec<usize> = (0..n).filter(|&v| live_deg[v] < lists[v].len()).collect();
    while let Some(v) = frontier.pop() {
        if peeled[v] {
            continue;
        }
        peeled[v] = true;
        stack.push(v);
        for &u in &adj[v] {
            if !peeled[u] {
                live_deg[u] -= 1;
                if live_deg[u] < lists[u].len() {
                    frontier.push(u);
                }
            }
        }
    }
    let residue: Vec<usize> = (0..n).filter(|&v| !peeled[v]).collect();
    let mut colors = vec![0u32; n];
    if !residue.is_empty() && !backtrack(&adj, lists, &residue, &mut colors) {
        return Err(Error::invariant(format!("no list coloring of the {}-vertex residue exists", residue.len())));
    }
    for &v in stack.iter().rev() {
        let used: ColorSet = adj[v].iter().filter(|&&u| colors[u] != 0).map(|&u| colors[u]).collect();
        colors[v] = lists[v]
            .without(used)
            .min()
            .ok_or_else(|| Error::invariant(format!("peeled vertex {v} has no free color")))?;
    }
    Ok(ListColoring { colors, residue: residue.len() })
}

fn available(adj: &[Vec<usize>], lists: &[ColorSet], colors: &[u32], v: usize) -> ColorSet {
    let used: ColorSet = adj[v].iter().filter(|&&u| colors[u] != 0).map(|&u| colors[u]).collect();
    lists[v].without(used)
}

fn backtrack(adj: &[Vec<usize>], lists: &[ColorSet], residue: &[usize], colors: &mut [u32]) -> bool {
    let pick = residue
        .iter()
        .filter(|&&v| colors[v] == 0)
        .map(|&v| (available(adj, lists, colors, v), v))
        .min_by_key(|(a, v)| (a.len(), *v));
    let Some((avail, v)) = pick else { return true };
    for c in avail.iter() {
        colors[v] = c;
        if backtrack(adj, lists, residue, colors) {
            return true;
        }
    }
    colors[v] = 0;
    false
}
