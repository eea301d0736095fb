use std::time::Instant;

use super::{components, greedy_coloring, induced, Hypergraph, VertexColoring, DEFAULT_VERTEX_CAP};
use crate::error::{Error, Result};

/// Guards for the exponential searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    /// Largest vertex count an exhaustive search will accept.
    pub vertex_cap: usize,
    /// Searches give up with a resource error once this instant has passed.
    pub deadline: Option<Instant>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { vertex_cap: DEFAULT_VERTEX_CAP, deadline: None }
    }
}

impl SearchLimits {
    pub fn with_cap(vertex_cap: usize) -> Self {
        SearchLimits { vertex_cap, ..Default::default() }
    }

    pub(crate) fn check_cap(&self, n: usize) -> Result<()> {
        if n > self.vertex_cap {
            return Err(Error::resource(format!("{n} vertices exceeds the search cap of {}", self.vertex_cap)));
        }
        Ok(())
    }

    pub(crate) fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::resource("search deadline reached")),
            _ => Ok(()),
        }
    }
}

/// Colors beyond this many do not fit the search's bitmasks.
const MAX_SEARCH_COLORS: usize = 64;

/// Exact chromatic number with a witness coloring, under default limits.
///
/// An edgeless hypergraph has chromatic number 1.
pub fn chromatic_number(h: &Hypergraph) -> Result<(usize, VertexColoring)> {
    chromatic_number_with(h, &SearchLimits::default())
}

pub fn chromatic_number_with(h: &Hypergraph, limits: &SearchLimits) -> Result<(usize, VertexColoring)> {
    limits.check_cap(h.n())?;
    let mut colors = vec![1u32; h.n()];
    let mut best = 1usize;
    for comp in components(h) {
        let (sub, map) = induced(h, &comp);
        if sub.is_edgeless() {
            continue;
        }
        let mut search = ColoringSearch::new(&sub);
        let upper = search.greedy.num_colors() as usize;
        let mut k = best.max(2);
        let local = loop {
            if k >= upper {
                break search.greedy.colors().to_vec();
            }
            if let Some(c) = search.run(k, limits)? {
                break c;
            }
            k += 1;
        };
        best = best.max(k.min(upper));
        for (i, &v) in map.iter().enumerate() {
            colors[v] = local[i];
        }
    }
    let coloring = VertexColoring::new(colors)?;
    debug_assert!(coloring.num_colors() as usize <= best);
    Ok((best, coloring))
}

/// A proper coloring with at most `k` colors, if one exists.
pub fn find_coloring(h: &Hypergraph, k: usize, limits: &SearchLimits) -> Result<Option<VertexColoring>> {
    limits.check_cap(h.n())?;
    if k == 0 {
        return Ok(if h.n() == 0 { Some(VertexColoring::monochrome(0)) } else { None });
    }
    let mut colors = vec![1u32; h.n()];
    for comp in components(h) {
        let (sub, map) = induced(h, &comp);
        if sub.is_edgeless() {
            continue;
        }
        let mut search = ColoringSearch::new(&sub);
        let local = if search.greedy.num_colors() as usize <= k {
            search.greedy.colors().to_vec()
        } else {
            match search.run(k, limits)? {
                Some(c) => c,
                None => return Ok(None),
            }
        };
        for (i, &v) in map.iter().enumerate() {
            colors[v] = local[i];
        }
    }
    Ok(Some(VertexColoring::new(colors)?))
}

/// True iff `chi(h) >= bound`.
pub fn chromatic_at_least(h: &Hypergraph, bound: usize, limits: &SearchLimits) -> Result<bool> {
    if bound <= 1 {
        return Ok(true);
    }
    Ok(find_coloring(h, bound - 1, limits)?.is_none())
}

/// Backtracking k-colorability over a fixed vertex order.
///
/// Every edge has an anchor (its earliest vertex in the order) and a closing
/// vertex (its latest). `agree[e]` counts colored non-anchor vertices of `e`
/// that share the anchor's color; the closing vertex may not take the
/// anchor's color once all other non-anchor vertices agree.
struct ColoringSearch {
    order: Vec<usize>,
    r: usize,
    anchor: Vec<usize>,
    /// Per vertex: edges where it is neither the anchor nor the closing vertex.
    tracked: Vec<Vec<usize>>,
    closing: Vec<Vec<usize>>,
    agree: Vec<usize>,
    colors: Vec<u32>,
    greedy: VertexColoring,
    nodes: u64,
}

impl ColoringSearch {
    fn new(h: &Hypergraph) -> Self {
        let order = search_order(h);
        let mut pos = vec![0; h.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut anchor = Vec::with_capacity(h.num_edges());
        let mut tracked = vec![Vec::new(); h.n()];
        let mut closing = vec![Vec::new(); h.n()];
        for (ei, e) in h.edges().iter().enumerate() {
            let a = *e.iter().min_by_key(|&&v| pos[v]).unwrap();
            let z = *e.iter().max_by_key(|&&v| pos[v]).unwrap();
            anchor.push(a);
            closing[z].push(ei);
            for &v in e {
                if v != a && v != z {
                    tracked[v].push(ei);
                }
            }
        }
        let greedy = greedy_coloring(h, &order).expect("search order is a permutation");
        ColoringSearch {
            order,
            r: h.r(),
            anchor,
            tracked,
            closing,
            agree: vec![0; h.num_edges()],
            colors: vec![0; h.n()],
            greedy,
            nodes: 0,
        }
    }

    fn run(&mut self, k: usize, limits: &SearchLimits) -> Result<Option<Vec<u32>>> {
        if k > MAX_SEARCH_COLORS {
            return Err(Error::resource(format!("{k} colors exceed the search width")));
        }
        limits.check_deadline()?;
        self.colors.iter_mut().for_each(|c| *c = 0);
        self.agree.iter_mut().for_each(|a| *a = 0);
        if self.descend(0, 0, k as u32, limits)? {
            Ok(Some(self.colors.clone()))
        } else {
            Ok(None)
        }
    }

    fn descend(&mut self, depth: usize, max_used: u32, k: u32, limits: &SearchLimits) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes & 0xFFF == 0 {
            limits.check_deadline()?;
        }
        let v = self.order[depth];
        let mut forbidden = 0u64;
        for &e in &self.closing[v] {
            if self.agree[e] + 2 == self.r {
                forbidden |= 1 << (self.colors[self.anchor[e]] - 1);
            }
        }
        let top = k.min(max_used + 1);
        for c in 1..=top {
            if forbidden & (1 << (c - 1)) != 0 {
                continue;
            }
            self.colors[v] = c;
            for i in 0..self.tracked[v].len() {
                let e = self.tracked[v][i];
                if self.colors[self.anchor[e]] == c {
                    self.agree[e] += 1;
                }
            }
            if self.descend(depth + 1, max_used.max(c), k, limits)? {
                return Ok(true);
            }
            for i in 0..self.tracked[v].len() {
                let e = self.tracked[v][i];
                if self.colors[self.anchor[e]] == c {
                    self.agree[e] -= 1;
                }
            }
        }
        self.colors[v] = 0;
        Ok(false)
    }
}

/// Orders vertices so that edges close as early as possible: repeatedly pick
/// the vertex that completes the most edges, then the one touching the most
/// edges already started, then the highest degree.
fn search_order(h: &Hypergraph) -> Vec<usize> {
    let n = h.n();
    let inc = h.incidence();
    let mut placed = vec![false; n];
    let mut seen_in_edge = vec![0usize; h.num_edges()];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for v in (0..n).filter(|&v| !placed[v]) {
            let closes = inc[v].iter().filter(|&&e| seen_in_edge[e] + 1 == h.r()).count();
            let touches = inc[v].iter().filter(|&&e| seen_in_edge[e] > 0).count();
            let key = (closes, touches, inc[v].len(), usize::MAX - v);
            if best.is_none_or(|b| key > b) {
                best = Some(key);
            }
        }
        let v = usize::MAX - best.expect("an unplaced vertex remains").3;
        placed[v] = true;
        for &e in &inc[v] {
            seen_in_edge[e] += 1;
        }
        order.push(v);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::{complete_hypergraph, is_proper};

    /// Independent oracle: try every coloring with `k` colors.
    fn brute_colorable(h: &Hypergraph, k: u32) -> bool {
        let n = h.n();
        let mut c = vec![1u32; n];
        loop {
            let col = VertexColoring::new(c.clone()).unwrap();
            if is_proper(h, &col).unwrap() {
                return true;
            }
            let mut i = 0;
            while i < n && c[i] == k {
                c[i] = 1;
                i += 1;
            }
            if i == n {
                return false;
            }
            c[i] += 1;
        }
    }

    fn fano() -> Hypergraph {
        Hypergraph::new(
            7,
            3,
            vec![
                vec![0, 1, 2],
                vec![0, 3, 4],
                vec![0, 5, 6],
                vec![1, 3, 5],
                vec![1, 4, 6],
                vec![2, 3, 6],
                vec![2, 4, 5],
            ],
        )
        .unwrap()
    }

    #[test]
    fn fano_is_three_chromatic() {
        let h = fano();
        assert!(!brute_colorable(&h, 2));
        assert!(brute_colorable(&h, 3));
        let (m, c) = chromatic_number(&h).unwrap();
        assert_eq!(m, 3);
        assert!(is_proper(&h, &c).unwrap());
        assert_eq!(c.num_colors(), 3);
    }

    #[test]
    fn small_cases() {
        assert_eq!(chromatic_number(&complete_hypergraph(6, 3).unwrap()).unwrap().0, 3);
        let t = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(chromatic_number(&t).unwrap().0, 2);
        assert_eq!(chromatic_number(&Hypergraph::edgeless(4, 3)).unwrap().0, 1);
        assert_eq!(chromatic_number(&complete_hypergraph(7, 2).unwrap()).unwrap().0, 7);
    }

    #[test]
    fn cap_is_enforced() {
        let h = Hypergraph::edgeless(10, 3);
        assert!(matches!(chromatic_number_with(&h, &SearchLimits::with_cap(5)), Err(Error::Resource(_))));
    }

    #[test]
    fn expired_deadline_aborts_hard_search() {
        let h = complete_hypergraph(9, 2).unwrap();
        let limits = SearchLimits { deadline: Some(Instant::now()), ..Default::default() };
        let err = find_coloring(&h, 8, &limits);
        assert!(matches!(err, Err(Error::Resource(_))));
    }

    #[test]
    fn find_coloring_matches_oracle() {
        let h = fano();
        assert!(find_coloring(&h, 2, &SearchLimits::default()).unwrap().is_none());
        let c = find_coloring(&h, 3, &SearchLimits::default()).unwrap().unwrap();
        assert!(is_proper(&h, &c).unwrap());
        assert!(chromatic_at_least(&h, 3, &SearchLimits::default()).unwrap());
        assert!(!chromatic_at_least(&h, 4, &SearchLimits::default()).unwrap());
    }
}
