//! From a proper `t`-coloring of the 1-intersection graph of a triple system
//! to a proper `t`-coloring of the triple system.
//!
//! The partition is turned into a skeleton (see [`crate::skeleton`]); every
//! skeleton component other than a `K_{t+1}` is colored with at most `t`
//! colors by Brooks' theorem. For odd `t` the `K_{t+1}` components are
//! colored by hand, with the marked B-base doubled up on color 1, and the
//! rest of the skeleton is list colored so that no third vertex of a marked
//! base gets color 1.

mod brooks;
mod list;

use serde::{Deserialize, Serialize};

pub use brooks::brooks_color;
pub use list::{list_color, ColorSet, ListColoring};

use crate::error::{Error, Result};
use crate::hypercore::{
    chromatic_number_with, components, induced, is_proper, EdgePartition, Hypergraph, SearchLimits, VertexColoring,
};
use crate::intersect::{one_intersection_graph, partition_from_igraph_coloring, two_color_no_one_intersections, Part};
use crate::skeleton::{build_skeleton_traced, Provenance, Skeleton, SwitchTrace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// No `K_{t+1}` component: Brooks coloring per component.
    Brooks,
    /// Odd `t` with `K_{t+1}` components: marked bases plus list coloring.
    OddList,
}

/// State of the odd branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftContext {
    /// Vertex sets of the `K_{t+1}` components.
    pub kcomps: Vec<Vec<usize>>,
    /// The marked class-1 B-base of each component, same order.
    pub marked: Vec<(usize, usize)>,
    /// Union of the component vertex sets, ascending.
    pub x: Vec<usize>,
    /// Vertices outside `x` completing a marked base to a class-1 triple.
    pub z: Vec<usize>,
    /// Skeleton graph on the vertices outside `x`; vertex `i` is `f_map[i]`.
    pub f: Hypergraph,
    pub f_map: Vec<usize>,
    /// `lists[i]` is the list of `f_map[i]`.
    pub lists: Vec<ColorSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lift {
    pub t: u32,
    pub coloring: VertexColoring,
    pub skeleton: Skeleton,
    pub trace: SwitchTrace,
    pub branch: Branch,
    pub context: Option<LiftContext>,
    /// Vertices the list coloring had to search over.
    pub residue: usize,
}

/// A proper coloring of the triple system `h` with at most `p.t()` colors,
/// given a partition of its triples into classes without 1-intersections.
pub fn lift_coloring(h: &Hypergraph, p: &EdgePartition) -> Result<Lift> {
    let (skeleton, trace) = build_skeleton_traced(h, p)?;
    let t = p.t();
    let g = skeleton.simple_graph();
    let comps = components(&g);
    let complete = skeleton.complete_components();
    if t.is_multiple_of(2) && !complete.is_empty() {
        return Err(Error::invariant(format!("K_{} component with even t = {t}", t + 1)));
    }
    let mut colors = vec![0u32; h.n()];
    let (branch, context, residue) = if complete.is_empty() {
        for comp in &comps {
            color_component(&g, comp, t, &mut colors)?;
        }
        (Branch::Brooks, None, 0)
    } else {
        let (ctx, residue) = odd_branch(h, &skeleton, &g, &comps, &complete, &mut colors)?;
        (Branch::OddList, Some(ctx), residue)
    };
    let coloring = VertexColoring::new(colors)?;
    check_lift(h, t, &coloring, context.as_ref())?;
    Ok(Lift { t, coloring, skeleton, trace, branch, context, residue })
}

/// Colors one skeleton component with at most `t` colors.
fn color_component(g: &Hypergraph, comp: &[usize], t: u32, colors: &mut [u32]) -> Result<()> {
    if comp.len() == 1 {
        colors[comp[0]] = 1;
        return Ok(());
    }
    let (sub, map) = induced(g, comp);
    let adj = sub.adjacency();
    let delta = adj.iter().map(Vec::len).max().unwrap_or(0);
    let local = match delta.cmp(&(t as usize)) {
        std::cmp::Ordering::Less => greedy(&adj),
        std::cmp::Ordering::Equal => brooks::brooks_adjacency(&adj, delta)
            .map_err(|e| Error::invariant(format!("skeleton component {comp:?}: {e}")))?,
        std::cmp::Ordering::Greater => {
            return Err(Error::invariant(format!("skeleton component {comp:?} has degree {delta} > {t}")));
        }
    };
    for (i, &v) in map.iter().enumerate() {
        colors[v] = local[i];
    }
    Ok(())
}

fn greedy(adj: &[Vec<usize>]) -> Vec<u32> {
    let mut colors = vec![0u32; adj.len()];
    for v in 0..adj.len() {
        let used: ColorSet = adj[v].iter().filter(|&&u| colors[u] != 0).map(|&u| colors[u]).collect();
        colors[v] = ColorSet::range(1, adj[v].len() as u32 + 1).without(used).min().expect("degree + 1 colors");
    }
    colors
}

fn odd_branch(
    h: &Hypergraph,
    s: &Skeleton,
    g: &Hypergraph,
    comps: &[Vec<usize>],
    complete: &[usize],
    colors: &mut [u32],
) -> Result<(LiftContext, usize)> {
    let t = s.t;
    let n = h.n();
    let class1 = &s.decompositions[0];
    let mut in_x = vec![false; n];
    let mut kcomps = Vec::new();
    let mut marked = Vec::new();
    let mut z_mark = vec![false; n];
    for &id in complete {
        let comp = &comps[id];
        let base = s
            .matching(1)
            .find(|e| matches!(e.provenance, Provenance::BBase(_)) && comp.binary_search(&e.u).is_ok())
            .ok_or_else(|| Error::invariant(format!("K_{} component {comp:?} has no class-1 B-base", t + 1)))?;
        let (x, y) = (base.u, base.v);
        colors[x] = 1;
        colors[y] = 1;
        let mut next = 2;
        for &v in comp {
            in_x[v] = true;
            if v != x && v != y {
                colors[v] = next;
                next += 1;
            }
        }
        let Part::B { edges, .. } = &class1.parts[base.provenance.component()] else {
            return Err(Error::invariant("B-base provenance points at a non-B part"));
        };
        for &e in edges {
            for &w in h.edge(e) {
                if w != x && w != y {
                    z_mark[w] = true;
                }
            }
        }
        kcomps.push(comp.clone());
        marked.push((x, y));
    }
    for v in 0..n {
        if in_x[v] {
            z_mark[v] = false;
        }
    }
    let x: Vec<usize> = (0..n).filter(|&v| in_x[v]).collect();
    let z: Vec<usize> = (0..n).filter(|&v| z_mark[v]).collect();
    let deg = s.degrees();
    if let Some(&bad) = z.iter().find(|&&v| deg[v] + 1 > t as usize) {
        return Err(Error::invariant(format!("vertex {bad} of Z has skeleton degree {}", deg[bad])));
    }
    let rest: Vec<usize> = (0..n).filter(|&v| !in_x[v]).collect();
    let (f, f_map) = induced(g, &rest);
    let lists: Vec<ColorSet> =
        f_map.iter().map(|&v| if z_mark[v] { ColorSet::range(2, t) } else { ColorSet::range(1, t) }).collect();
    let mut residue = 0;
    for comp in components(&f) {
        if comp.iter().any(|&i| z_mark[f_map[i]]) {
            let (sub, map) = induced(&f, &comp);
            let sub_lists: Vec<ColorSet> = map.iter().map(|&i| lists[i]).collect();
            let out = list_color(&sub, &sub_lists)?;
            residue += out.residue;
            for (j, &i) in map.iter().enumerate() {
                colors[f_map[i]] = out.colors[j];
            }
        } else {
            let mut local = vec![0u32; f.n()];
            color_component(&f, &comp, t, &mut local)?;
            for &i in &comp {
                colors[f_map[i]] = local[i];
            }
        }
    }
    Ok((LiftContext { kcomps, marked, x, z, f, f_map, lists }, residue))
}

fn check_lift(h: &Hypergraph, t: u32, c: &VertexColoring, ctx: Option<&LiftContext>) -> Result<()> {
    if c.num_colors() > t {
        return Err(Error::invariant(format!("lift used {} > {t} colors", c.num_colors())));
    }
    if let Some(ctx) = ctx {
        if let Some(&z) = ctx.z.iter().find(|&&z| c.color(z) < 2) {
            return Err(Error::invariant(format!("vertex {z} of Z got color 1")));
        }
        for &(x, y) in &ctx.marked {
            for e in h.edges() {
                if e.contains(&x) && e.contains(&y) {
                    let w = e.iter().copied().find(|&w| w != x && w != y).expect("triple");
                    if c.color(w) == 1 {
                        return Err(Error::invariant(format!("third vertex {w} of base ({x},{y}) got color 1")));
                    }
                }
            }
        }
    }
    if !is_proper(h, c)? {
        return Err(Error::invariant("lifted coloring is not proper"));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// The 1-intersection graph is edgeless; colored from the structure.
    Structure,
    /// Exact coloring of the 1-intersection graph, then lifted.
    Lift,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionColoring {
    /// Chromatic number of the 1-intersection graph, or 2 on the structure route.
    pub t: u32,
    pub coloring: VertexColoring,
    pub route: Route,
}

/// Colors a triple system with at most `max(χ(H^[1]), 2)` colors.
pub fn color_via_intersection(h: &Hypergraph, limits: &SearchLimits) -> Result<IntersectionColoring> {
    if h.r() != 3 {
        return Err(Error::precondition(format!("expected a triple system, got r = {}", h.r())));
    }
    if h.is_edgeless() {
        return Err(Error::precondition("hypergraph has no edges"));
    }
    let ig = one_intersection_graph(h);
    if ig.is_edgeless() {
        let coloring = two_color_no_one_intersections(h)?;
        return Ok(IntersectionColoring { t: 2, coloring, route: Route::Structure });
    }
    let (_, c) = chromatic_number_with(&ig, limits)?;
    let p = partition_from_igraph_coloring(h, &c)?;
    let lift = lift_coloring(h, &p)?;
    Ok(IntersectionColoring { t: lift.t, coloring: lift.coloring, route: Route::Lift })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::{chromatic_number, complete_hypergraph};
    use crate::skeleton::tests::bad_k4_fixture;

    fn h3(n: usize, edges: &[[usize; 3]]) -> Hypergraph {
        Hypergraph::new(n, 3, edges.iter().map(|e| e.to_vec())).unwrap()
    }

    fn partition(h: &Hypergraph, classes: &[([usize; 3], u32)], t: u32) -> EdgePartition {
        let mut cls = vec![0; h.num_edges()];
        for (e, c) in classes {
            cls[h.edge_index(&e[..]).unwrap()] = *c;
        }
        EdgePartition::new(cls, t).unwrap()
    }

    #[test]
    fn k5_via_petersen() {
        let h = complete_hypergraph(5, 3).unwrap();
        let (t, c) = chromatic_number(&one_intersection_graph(&h)).unwrap();
        assert_eq!(t, 3);
        let p = partition_from_igraph_coloring(&h, &c).unwrap();
        let lift = lift_coloring(&h, &p).unwrap();
        assert!(is_proper(&h, &lift.coloring).unwrap());
        assert_eq!(lift.coloring.num_colors(), 3);
        let out = color_via_intersection(&h, &SearchLimits::default()).unwrap();
        assert_eq!((out.t, out.route), (3, Route::Lift));
    }

    #[test]
    fn b3_takes_structure_route() {
        let h = h3(5, &[[0, 1, 2], [0, 1, 3], [0, 1, 4]]);
        let out = color_via_intersection(&h, &SearchLimits::default()).unwrap();
        assert_eq!((out.t, out.route), (2, Route::Structure));
        assert!(is_proper(&h, &out.coloring).unwrap());
    }

    #[test]
    fn disjoint_union_uses_the_larger_t() {
        let mut edges: Vec<[usize; 3]> =
            complete_hypergraph(5, 3).unwrap().edges().iter().map(|e| [e[0], e[1], e[2]]).collect();
        edges.extend([[5, 6, 7], [5, 6, 8], [5, 6, 9]]);
        let h = h3(10, &edges);
        let out = color_via_intersection(&h, &SearchLimits::default()).unwrap();
        assert_eq!(out.t, 3);
        assert!(is_proper(&h, &out.coloring).unwrap());
        assert!(out.coloring.num_colors() <= 3);
    }

    #[test]
    fn odd_branch_marks_the_base() {
        // K_4 skeleton on {0,1,2,3}: class 1 B_1 bases (0,1) and (2,3),
        // classes 2 and 3 supply the other two perfect matchings.
        let edges = [[0, 1, 4], [2, 3, 5], [0, 2, 6], [1, 3, 7], [0, 3, 8], [1, 2, 9]];
        let h = h3(10, &edges);
        let p = partition(&h, &edges.iter().zip([1, 1, 2, 2, 3, 3]).map(|(e, c)| (*e, c)).collect::<Vec<_>>(), 3);
        let lift = lift_coloring(&h, &p).unwrap();
        assert_eq!(lift.branch, Branch::OddList);
        let ctx = lift.context.as_ref().unwrap();
        assert_eq!(ctx.kcomps, vec![vec![0, 1, 2, 3]]);
        assert_eq!(ctx.marked, vec![(0, 1)]);
        assert_eq!(ctx.x, vec![0, 1, 2, 3]);
        assert_eq!(ctx.z, vec![4]);
        let c = lift.coloring.colors();
        assert_eq!(&c[..4], &[1, 1, 2, 3]);
        assert!(c[4] >= 2);
        assert!(is_proper(&h, &lift.coloring).unwrap());
    }

    #[test]
    fn switched_fixture_lifts() {
        let (h, p) = bad_k4_fixture();
        let lift = lift_coloring(&h, &p).unwrap();
        assert_eq!(lift.trace.switches, 1);
        assert!(is_proper(&h, &lift.coloring).unwrap());
        assert!(lift.coloring.num_colors() <= 3);
    }

    #[test]
    fn even_t_uses_brooks() {
        let h = h3(6, &[[0, 1, 2], [0, 4, 5], [2, 3, 4]]);
        let p = EdgePartition::new(vec![1, 2, 2], 2).unwrap();
        // {0,4,5} and {2,3,4} share one vertex but sit in the same class
        assert!(matches!(lift_coloring(&h, &p), Err(Error::Precondition(_))));
        let h = h3(7, &[[0, 1, 2], [2, 3, 4], [4, 5, 6]]);
        let p = EdgePartition::new(vec![1, 2, 1], 2).unwrap();
        let lift = lift_coloring(&h, &p).unwrap();
        assert_eq!(lift.branch, Branch::Brooks);
        assert!(is_proper(&h, &lift.coloring).unwrap());
        assert!(lift.coloring.num_colors() <= 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(color_via_intersection(&Hypergraph::edgeless(4, 3), &SearchLimits::default()).is_err());
        let g = Hypergraph::new(3, 2, vec![vec![0, 1]]).unwrap();
        assert!(matches!(color_via_intersection(&g, &SearchLimits::default()), Err(Error::Precondition(_))));
    }
}
