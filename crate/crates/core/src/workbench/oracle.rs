//! Brute-force searches used to check the finders and generators. They share
//! nothing with [`crate::ramsey`] beyond the pattern and witness types.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hypercore::{find_coloring, EdgePartition, Hypergraph, SearchLimits};
use crate::ramsey::{MonoWitness, Pattern, PatternKind, TreePattern};

fn mask_of(e: &[usize]) -> u64 {
    e.iter().fold(0, |m, &v| m | 1 << v)
}

fn check_width(h: &Hypergraph) -> Result<()> {
    if h.n() > 64 {
        return Err(Error::resource(format!("{} vertices exceed the oracle's 64-bit masks", h.n())));
    }
    Ok(())
}

/// `k` pairwise disjoint sets among `masks`, as positions into `masks`.
fn disjoint_sets(masks: &[u64], k: usize) -> Option<Vec<usize>> {
    fn go(masks: &[u64], from: usize, used: u64, k: usize, out: &mut Vec<usize>) -> bool {
        if k == 0 {
            return true;
        }
        for i in from..masks.len() {
            if masks.len() - i < k {
                break;
            }
            if masks[i] & used == 0 {
                out.push(i);
                if go(masks, i + 1, used | masks[i], k - 1, out) {
                    return true;
                }
                out.pop();
            }
        }
        false
    }
    let mut out = Vec::with_capacity(k);
    go(masks, 0, 0, k, &mut out).then_some(out)
}

/// A monochromatic copy of `pattern`, by exhaustive search within each
/// class in turn.
pub fn oracle_has_mono(h: &Hypergraph, p: &EdgePartition, pattern: &Pattern) -> Result<Option<MonoWitness>> {
    p.check_against(h)?;
    check_width(h)?;
    for c in 1..=p.t() {
        let members = p.members(c);
        if let Some(w) = class_has(h, &members, pattern) {
            return Ok(Some(MonoWitness { class_index: c, ..w }));
        }
    }
    Ok(None)
}

/// Pattern search inside the edges `members` of `h`; the class index of the
/// result is left at 0.
fn class_has(h: &Hypergraph, members: &[usize], pattern: &Pattern) -> Option<MonoWitness> {
    let masks: Vec<u64> = members.iter().map(|&e| mask_of(h.edge(e))).collect();
    let blank =
        |kind, edges, center, embedding| MonoWitness { kind, class_index: 0, edge_indices: edges, center, embedding };
    match pattern {
        Pattern::Matching { k } => disjoint_sets(&masks, *k)
            .map(|pos| blank(PatternKind::Matching, pos.iter().map(|&i| members[i]).collect(), None, None)),
        Pattern::Star { k } => (0..h.n()).find_map(|v| {
            let bit = 1u64 << v;
            let (link, idx): (Vec<u64>, Vec<usize>) =
                masks.iter().zip(members).filter(|(m, _)| *m & bit != 0).map(|(m, &e)| (m & !bit, e)).unzip();
            disjoint_sets(&link, *k)
                .map(|pos| blank(PatternKind::Star, pos.iter().map(|&i| idx[i]).collect(), Some(v), None))
        }),
        Pattern::Tree { tree } => tree_by_vertices(h, members, &masks, tree)
            .map(|(edges, map)| blank(PatternKind::Tree, edges, None, Some(map))),
    }
}

/// Assigns host vertices to tree vertices one at a time (in breadth-first
/// order) and checks each tree edge once its last vertex is placed.
fn tree_by_vertices(
    h: &Hypergraph,
    members: &[usize],
    masks: &[u64],
    tree: &TreePattern,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let lookup: HashMap<u64, usize> = masks.iter().zip(members).map(|(&m, &e)| (m, e)).collect();
    let shape = tree.as_hypergraph();
    let tn = shape.n();
    // breadth-first vertex order from vertex 0
    let adj = {
        let mut adj = vec![Vec::new(); tn];
        for e in shape.edges() {
            for &a in e {
                for &b in e {
                    if a != b {
                        adj[a].push(b);
                    }
                }
            }
        }
        adj
    };
    let mut order = vec![0usize];
    let mut seen = vec![false; tn];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        for &u in &adj[order[i]] {
            if !seen[u] {
                seen[u] = true;
                order.push(u);
            }
        }
        i += 1;
    }
    let mut pos = vec![0; tn];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // edges completed at each depth
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); tn];
    for (ei, e) in shape.edges().iter().enumerate() {
        let last = e.iter().map(|&v| pos[v]).max().expect("nonempty edge");
        closes[last].push(ei);
    }
    struct St<'a> {
        h_n: usize,
        order: &'a [usize],
        closes: &'a [Vec<usize>],
        shape: &'a Hypergraph,
        lookup: &'a HashMap<u64, usize>,
        map: Vec<usize>,
        used: u64,
    }
    fn go(st: &mut St, depth: usize) -> bool {
        if depth == st.order.len() {
            return true;
        }
        let tv = st.order[depth];
        for hv in 0..st.h_n {
            if st.used >> hv & 1 == 1 {
                continue;
            }
            st.map[tv] = hv;
            let ok = st.closes[depth]
                .iter()
                .all(|&ei| st.lookup.contains_key(&st.shape.edge(ei).iter().fold(0u64, |m, &v| m | 1 << st.map[v])));
            if ok {
                st.used |= 1 << hv;
                if go(st, depth + 1) {
                    return true;
                }
                st.used &= !(1 << hv);
            }
        }
        false
    }
    let mut st = St { h_n: h.n(), order: &order, closes: &closes, shape, lookup: &lookup, map: vec![0; tn], used: 0 };
    if !go(&mut st, 0) {
        return None;
    }
    let edges = shape.edges().iter().map(|e| lookup[&e.iter().fold(0u64, |m, &v| m | 1 << st.map[v])]).collect();
    Some((edges, st.map))
}

/// Two edges forming the pattern when `pattern` has exactly two edges.
fn pair_conflicts(a: u64, b: u64, kind: PatternKind) -> bool {
    let common = (a & b).count_ones();
    match kind {
        PatternKind::Matching => common == 0,
        // a two-edge tree is a two-edge star
        PatternKind::Star | PatternKind::Tree => common == 1,
    }
}

/// A `t`-edge-coloring of `h` with no monochromatic copy of `pattern`.
///
/// Two-edge patterns reduce to properly `t`-coloring the graph of edge
/// pairs that form the pattern. Larger patterns are searched edge by edge,
/// trying classes in order with the usual first-use symmetry breaking and
/// rejecting any class that has just acquired a copy.
pub fn oracle_exists_avoiding_partition(
    h: &Hypergraph,
    pattern: &Pattern,
    t: usize,
    limits: &SearchLimits,
) -> Result<Option<EdgePartition>> {
    check_width(h)?;
    if t == 0 {
        return Err(Error::input("t must be at least 1"));
    }
    if let Pattern::Tree { tree } = pattern {
        if tree.r() != h.r() {
            return Err(Error::input("pattern and host differ in uniformity"));
        }
    }
    let m = h.num_edges();
    let k = pattern.num_edges();
    if k == 1 {
        return Ok((m == 0).then(|| EdgePartition::new(Vec::new(), t as u32).expect("t >= 1")));
    }
    let masks: Vec<u64> = h.edges().iter().map(|e| mask_of(e)).collect();
    if k == 2 {
        let mut pairs = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if pair_conflicts(masks[i], masks[j], pattern.kind()) {
                    pairs.push(vec![i, j]);
                }
            }
        }
        let conflict = Hypergraph::new(m, 2, pairs)?;
        let limits = SearchLimits { vertex_cap: limits.vertex_cap.max(m), ..*limits };
        return Ok(match find_coloring(&conflict, t, &limits)? {
            Some(c) => Some(EdgePartition::new(c.colors().to_vec(), t as u32)?),
            None => None,
        });
    }
    let mut classes = vec![0u32; m];
    let mut nodes = 0u64;
    if avoid(h, pattern, t as u32, 0, 0, &mut classes, &mut nodes, limits)? {
        Ok(Some(EdgePartition::new(classes, t as u32)?))
    } else {
        Ok(None)
    }
}

#[allow(clippy::too_many_arguments)]
fn avoid(
    h: &Hypergraph,
    pattern: &Pattern,
    t: u32,
    e: usize,
    max_used: u32,
    classes: &mut [u32],
    nodes: &mut u64,
    limits: &SearchLimits,
) -> Result<bool> {
    if e == classes.len() {
        return Ok(true);
    }
    *nodes += 1;
    if *nodes & 0xFFF == 0 {
        limits.check_deadline()?;
    }
    for c in 1..=t.min(max_used + 1) {
        classes[e] = c;
        let members: Vec<usize> = (0..=e).filter(|&i| classes[i] == c).collect();
        if class_has(h, &members, pattern).is_none()
            && avoid(h, pattern, t, e + 1, max_used.max(c), classes, nodes, limits)?
        {
            return Ok(true);
        }
    }
    classes[e] = 0;
    Ok(false)
}
