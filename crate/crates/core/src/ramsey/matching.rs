use super::{MonoWitness, PatternKind};
use crate::error::{Error, Result};
use crate::hypercore::{
    chromatic_at_least, find_coloring, greedy_coloring_with_witnesses, induced, remove, EdgePartition, Hypergraph,
    SearchLimits,
};
use crate::intersect::intersection_size;

/// `k` disjoint edges of one class whenever `χ(h) ≥ (t-1)(k-1) + 2k`.
///
/// Greedy-colors `h` in the given order (identity when `None`), reads the
/// edges that refused each color as a `t`-edge-colored complete graph on the
/// colors, finds a monochromatic `k`-matching there and pulls it back.
pub fn find_mono_matching(h: &Hypergraph, p: &EdgePartition, k: usize, order: Option<&[usize]>) -> Result<MonoWitness> {
    p.check_against(h)?;
    if k == 0 {
        return Err(Error::input("k must be at least 1"));
    }
    let t = p.t() as usize;
    let bound = (t - 1) * (k - 1) + 2 * k;
    let natural: Vec<usize> = (0..h.n()).collect();
    let order = order.unwrap_or(&natural);
    match via_greedy(h, |e| p.class(e), bound, k, order)? {
        Some((class_index, edges)) => Ok(matching_witness(class_index, edges)),
        // the greedy coloring is proper, so χ(h) is at most its color count
        None => Err(Error::precondition(format!("chromatic number below {bound}"))),
    }
}

fn matching_witness(class_index: u32, edge_indices: Vec<usize>) -> MonoWitness {
    MonoWitness { kind: PatternKind::Matching, class_index, edge_indices, center: None, embedding: None }
}

/// `None` when the greedy coloring uses fewer than `bound` colors.
fn via_greedy(
    h: &Hypergraph,
    class: impl Fn(usize) -> u32,
    bound: usize,
    k: usize,
    order: &[usize],
) -> Result<Option<(u32, Vec<usize>)>> {
    let gw = greedy_coloring_with_witnesses(h, order)?;
    if (gw.coloring.num_colors() as usize) < bound {
        return Ok(None);
    }
    if bound > 64 {
        return Err(Error::resource(format!("{bound} colors exceed the auxiliary search width")));
    }
    // Auxiliary complete graph on colors 1..=bound, pair {i,j} colored by e_ij.
    let mut pair_class = vec![vec![0u32; bound]; bound];
    let mut classes = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for i in 0..bound {
        for j in i + 1..bound {
            let e = gw
                .witness(i as u32 + 1, j as u32 + 1)
                .ok_or_else(|| Error::invariant(format!("missing greedy witness for colors {} < {}", i + 1, j + 1)))?;
            let c = class(e);
            pair_class[i][j] = c;
            pair_class[j][i] = c;
            classes.push(c);
        }
    }
    classes.sort_unstable();
    classes.dedup();
    for c in classes {
        if let Some(pairs) = graph_matching(bound, |i, j| pair_class[i][j] == c, k) {
            let edges = pairs
                .into_iter()
                .map(|(i, j)| gw.witness(i as u32 + 1, j as u32 + 1).expect("checked above"))
                .collect();
            return Ok(Some((c, edges)));
        }
    }
    Err(Error::invariant(format!("no monochromatic {k}-matching among {bound} greedy colors")))
}

/// A matching of size `k` in the graph on `0..n` given by `adj`, found by
/// backtracking over the least undecided vertex.
fn graph_matching(n: usize, adj: impl Fn(usize, usize) -> bool, k: usize) -> Option<Vec<(usize, usize)>> {
    fn go(
        n: usize,
        adj: &dyn Fn(usize, usize) -> bool,
        used: &mut [bool],
        start: usize,
        k: usize,
        out: &mut Vec<(usize, usize)>,
    ) -> bool {
        if k == 0 {
            return true;
        }
        let free = (start..n).filter(|&v| !used[v]).count();
        if free < 2 * k {
            return false;
        }
        let i = (start..n).find(|&v| !used[v]).expect("free vertices remain");
        used[i] = true;
        for j in i + 1..n {
            if !used[j] && adj(i, j) {
                used[j] = true;
                out.push((i, j));
                if go(n, adj, used, i + 1, k - 1, out) {
                    return true;
                }
                out.pop();
                used[j] = false;
            }
        }
        used[i] = false;
        go(n, adj, used, i + 1, k, out)
    }
    let mut used = vec![false; n];
    let mut out = Vec::with_capacity(k);
    go(n, &adj, &mut used, 0, k, &mut out).then_some(out)
}

/// A sub-hypergraph of the host: vertex and edge maps back to it.
struct Sub {
    h: Hypergraph,
    emap: Vec<usize>,
}

impl Sub {
    fn without(&self, host: &Hypergraph, vmap: &[usize], a: &[usize]) -> (Sub, Vec<usize>) {
        let (h, local) = remove(&self.h, a);
        let vmap2: Vec<usize> = local.iter().map(|&v| vmap[v]).collect();
        let emap = h
            .edges()
            .iter()
            .map(|e| {
                let img: Vec<usize> = e.iter().map(|&v| vmap2[v]).collect();
                host.edge_index(&img).expect("sub-hypergraph edges come from the host")
            })
            .collect();
        (Sub { h, emap }, vmap2)
    }
}

/// Why the inductive construction stopped; classified against `χ(h)` by the caller.
struct Stuck(String);

/// `k` disjoint edges of one class in a 2-edge-colored `r`-uniform `h`,
/// `r ≥ 3`, whenever `χ(h) ≥ 2k`.
///
/// Follows the induction on `k`: pick a red edge `e` and a blue edge `f`,
/// and while `H[e ∪ f]` is not 2-colorable replace one of them by an edge
/// meeting the other more; then recurse on `H - (e ∪ f)`.
pub fn find_mono_matching_2col(
    h: &Hypergraph,
    p: &EdgePartition,
    k: usize,
    limits: &SearchLimits,
) -> Result<MonoWitness> {
    p.check_against(h)?;
    if h.r() < 3 {
        return Err(Error::precondition(format!("needs r >= 3, got r = {}", h.r())));
    }
    if p.t() != 2 {
        return Err(Error::precondition(format!("needs exactly 2 classes, got {}", p.t())));
    }
    if k == 0 {
        return Err(Error::input("k must be at least 1"));
    }
    let root = Sub { h: h.clone(), emap: (0..h.num_edges()).collect() };
    let vmap: Vec<usize> = (0..h.n()).collect();
    match two_col(h, p, &root, &vmap, k, limits)? {
        Ok(edges) => Ok(matching_witness(p.class(edges[0]), edges)),
        Err(Stuck(why)) => {
            if chromatic_at_least(h, 2 * k, limits)? {
                Err(Error::invariant(format!("two-class matching search failed: {why}")))
            } else {
                Err(Error::precondition(format!("chromatic number below {}", 2 * k)))
            }
        }
    }
}

fn two_col(
    host: &Hypergraph,
    p: &EdgePartition,
    cur: &Sub,
    vmap: &[usize],
    k: usize,
    limits: &SearchLimits,
) -> Result<std::result::Result<Vec<usize>, Stuck>> {
    let m = cur.h.num_edges();
    if m == 0 {
        return Ok(Err(Stuck(format!("no edges left with {k} still to find"))));
    }
    if k == 1 {
        return Ok(Ok(vec![cur.emap[0]]));
    }
    let cls = |e: usize| p.class(cur.emap[e]);
    let red: Vec<usize> = (0..m).filter(|&e| cls(e) == 1).collect();
    let blue: Vec<usize> = (0..m).filter(|&e| cls(e) == 2).collect();
    if red.is_empty() || blue.is_empty() {
        let order: Vec<usize> = (0..cur.h.n()).collect();
        return Ok(match via_greedy(&cur.h, cls, 2 * k, k, &order)? {
            Some((_, edges)) => Ok(edges.into_iter().map(|e| cur.emap[e]).collect()),
            None => Err(Stuck(format!("single class with fewer than {} greedy colors", 2 * k))),
        });
    }
    let (mut e, mut f) = pick_pair(&cur.h, &red, &blue);
    for _ in 0..4 {
        let (ee, fe) = (cur.h.edge(e), cur.h.edge(f));
        let s = intersection_size(ee, fe);
        let mut a: Vec<usize> = ee.iter().chain(fe).copied().collect();
        a.sort_unstable();
        a.dedup();
        let two_colorable = s >= 2 || find_coloring(&induced(&cur.h, &a).0, 2, limits)?.is_some();
        if two_colorable {
            let (sub, vmap2) = cur.without(host, vmap, &a);
            return Ok(match two_col(host, p, &sub, &vmap2, k - 1, limits)? {
                Ok(mut edges) => {
                    let c = p.class(edges[0]);
                    edges.push(cur.emap[if cls(e) == c { e } else { f }]);
                    Ok(edges)
                }
                stuck => stuck,
            });
        }
        let g = if s == 1 {
            let w = *ee.iter().find(|v| fe.contains(v)).expect("s = 1");
            let u: Vec<usize> = ee.iter().copied().filter(|&x| x != w).collect();
            let v: Vec<usize> = fe.iter().copied().filter(|&x| x != w).collect();
            let mut g: Vec<usize> = std::iter::once(w)
                .chain(u.iter().step_by(2).copied())
                .chain(v.iter().skip(1).step_by(2).copied())
                .collect();
            g.sort_unstable();
            match cur.h.edge_index(&g) {
                Some(gi) => gi,
                None => return Ok(Err(Stuck(format!("{g:?} is missing from a non-2-colorable H[e ∪ f]")))),
            }
        } else {
            let inside = induced(&cur.h, &a).0;
            let found = inside.edges().iter().find_map(|ge| {
                let img: Vec<usize> = ge.iter().map(|&i| a[i]).collect();
                (intersection_size(&img, ee) > 0 && intersection_size(&img, fe) > 0)
                    .then(|| cur.h.edge_index(&img).expect("induced edge"))
            });
            match found {
                Some(gi) => gi,
                None => return Ok(Err(Stuck("no edge of H[e ∪ f] meets both e and f".into()))),
            }
        };
        if cls(g) == 1 {
            e = g;
        } else {
            f = g;
        }
    }
    Ok(Err(Stuck("edge replacement did not settle".into())))
}

/// First red/blue pair meeting in at least two vertices, else in one, else any.
fn pick_pair(h: &Hypergraph, red: &[usize], blue: &[usize]) -> (usize, usize) {
    let mut best = (red[0], blue[0], 0);
    for &e in red {
        for &f in blue {
            let s = intersection_size(h.edge(e), h.edge(f));
            if s >= 2 {
                return (e, f);
            }
            if s > best.2 {
                best = (e, f, s);
            }
        }
    }
    (best.0, best.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::complete_hypergraph;
    use crate::ramsey::{validate_witness, Pattern};
    use rand::{Rng, SeedableRng};

    fn random_partition(m: usize, t: u32, rng: &mut impl Rng) -> EdgePartition {
        EdgePartition::new((0..m).map(|_| rng.gen_range(1..=t)).collect(), t).unwrap()
    }

    #[test]
    fn single_class_k7() {
        let h = complete_hypergraph(7, 3).unwrap();
        let p = EdgePartition::single_class(h.num_edges());
        let w = find_mono_matching(&h, &p, 2, None).unwrap();
        validate_witness(&h, &p, &Pattern::Matching { k: 2 }, &w).unwrap();
    }

    #[test]
    fn k5_graph_every_two_coloring() {
        let h = complete_hypergraph(5, 2).unwrap();
        for mask in 0u32..1 << 10 {
            let cls = (0..10).map(|i| 1 + (mask >> i & 1)).collect();
            let p = EdgePartition::new(cls, 2).unwrap();
            let w = find_mono_matching(&h, &p, 2, None).unwrap();
            validate_witness(&h, &p, &Pattern::Matching { k: 2 }, &w).unwrap();
        }
    }

    #[test]
    fn too_few_colors_is_a_precondition_error() {
        let h = complete_hypergraph(4, 2).unwrap();
        let p = EdgePartition::single_class(6);
        assert!(matches!(find_mono_matching(&h, &p, 3, None), Err(Error::Precondition(_))));
        let h = complete_hypergraph(6, 3).unwrap();
        let p = EdgePartition::new(vec![1; 20], 2).unwrap();
        assert!(matches!(find_mono_matching_2col(&h, &p, 2, &SearchLimits::default()), Err(Error::Precondition(_))));
    }

    #[test]
    fn two_classes_on_k7() {
        let h = complete_hypergraph(7, 3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let p = random_partition(h.num_edges(), 2, &mut rng);
            let w = find_mono_matching_2col(&h, &p, 2, &SearchLimits::default()).unwrap();
            validate_witness(&h, &p, &Pattern::Matching { k: 2 }, &w).unwrap();
        }
    }

    #[test]
    fn replacement_edge_meets_f_twice() {
        // e = {w,u1,u2}, f = {w,v1,v2} ⇒ g = {w,u1,v2}
        let (w, u1, u2, v1, v2) = (0, 1, 2, 3, 4);
        let u = [u1, u2];
        let v = [v1, v2];
        let mut g: Vec<usize> = std::iter::once(w)
            .chain(u.iter().step_by(2).copied())
            .chain(v.iter().skip(1).step_by(2).copied())
            .collect();
        g.sort_unstable();
        assert_eq!(g, vec![w, u1, v2]);
        assert_eq!(intersection_size(&g, &[w, v1, v2]), 2);
    }

    #[test]
    fn lone_red_edge() {
        let h = complete_hypergraph(7, 3).unwrap();
        let e = h.edge_index(&[0, 1, 2]).unwrap();
        let mut cls = vec![2u32; h.num_edges()];
        cls[e] = 1;
        let p = EdgePartition::new(cls, 2).unwrap();
        let w = find_mono_matching_2col(&h, &p, 2, &SearchLimits::default()).unwrap();
        validate_witness(&h, &p, &Pattern::Matching { k: 2 }, &w).unwrap();
    }

    #[test]
    fn graph_matching_backtracks() {
        // path 0-1-2-3: the greedy choice (0,1) still leads to (2,3)
        let adj = |i: usize, j: usize| j == i + 1;
        assert_eq!(graph_matching(4, adj, 2), Some(vec![(0, 1), (2, 3)]));
        // star has no 2-matching
        assert_eq!(graph_matching(4, |i, _| i == 0, 2), None);
    }
}
