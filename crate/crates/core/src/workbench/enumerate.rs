use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::hypercore::{binomial, chromatic_number, combinations, Hypergraph};

/// Largest number of candidate edges the subset enumeration accepts.
pub const MAX_ENUM_EDGES: usize = 24;

/// Every nonempty `r`-uniform hypergraph on `n` labelled vertices, one per
/// nonempty subset of the `C(n, r)` possible edges, in increasing order of
/// the subset bitmask (bit `i` is the `i`-th `r`-set in lexicographic order).
pub fn enumerate_hypergraphs(r: usize, n: usize) -> Result<Enumeration> {
    if r < 2 {
        return Err(Error::input("r must be at least 2"));
    }
    let m = binomial(n as u64, r as u64);
    if m as usize > MAX_ENUM_EDGES {
        return Err(Error::resource(format!(
            "C({n},{r}) = {m} candidate edges exceeds the enumeration cap of {MAX_ENUM_EDGES}"
        )));
    }
    Ok(Enumeration { n, r, all: combinations(n, r), next: 1 })
}

/// Iterator behind [`enumerate_hypergraphs`].
pub struct Enumeration {
    n: usize,
    r: usize,
    all: Vec<Vec<usize>>,
    next: u64,
}

impl Enumeration {
    pub fn candidate_edges(&self) -> &[Vec<usize>] {
        &self.all
    }

    /// Number of hypergraphs in the full enumeration.
    pub fn total(&self) -> u64 {
        (1u64 << self.all.len()) - 1
    }

    /// The hypergraph for one subset mask.
    pub fn get(&self, mask: u64) -> Hypergraph {
        let edges: Vec<Vec<usize>> =
            (0..self.all.len()).filter(|&i| mask >> i & 1 == 1).map(|i| self.all[i].clone()).collect();
        Hypergraph::new(self.n, self.r, edges).expect("subsets of the complete hypergraph are valid")
    }

    /// Keeps the first hypergraph of each (edge count, sorted degrees,
    /// chromatic number) fingerprint. Non-isomorphic hypergraphs can share
    /// a fingerprint, so this thins the stream rather than listing
    /// isomorphism classes.
    pub fn dedup(self) -> impl Iterator<Item = Hypergraph> {
        let mut seen = HashSet::new();
        self.filter(move |h| seen.insert(fingerprint(h)))
    }
}

impl Iterator for Enumeration {
    type Item = Hypergraph;

    fn next(&mut self) -> Option<Hypergraph> {
        if self.next > self.total() {
            return None;
        }
        let h = self.get(self.next);
        self.next += 1;
        Some(h)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total() + 1 - self.next) as usize;
        (left, Some(left))
    }
}

fn fingerprint(h: &Hypergraph) -> (usize, Vec<usize>, usize) {
    let mut deg = h.degrees();
    deg.sort_unstable();
    let chi = chromatic_number(h).map(|(m, _)| m).unwrap_or(0);
    (h.num_edges(), deg, chi)
}
