use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{MonoWitness, PatternKind, TreePattern};
use crate::error::{Error, Result};
use crate::hypercore::{chromatic_at_least, EdgePartition, Hypergraph, SearchLimits};

/// A copy of a tree inside a host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEmbedding {
    /// Tree vertex `i` maps to host vertex `vertex_map[i]`.
    pub vertex_map: Vec<usize>,
    /// Tree edge `i` maps to host edge `edge_indices[i]`.
    pub edge_indices: Vec<usize>,
}

/// One step of the search: place tree edge `edge`, attached at `attach`
/// (`None` for the root edge), assigning its `fresh` vertices.
struct Step {
    edge: usize,
    attach: Option<usize>,
    fresh: Vec<usize>,
    /// Assignments of `fresh` to host slots; leaf vertices go in increasing order.
    perms: Vec<Vec<usize>>,
    /// Earlier step with an interchangeable edge; its host edge must be smaller.
    twin: Option<usize>,
}

fn plan(tree: &TreePattern) -> Vec<Step> {
    let shape = tree.as_hypergraph();
    let inc = shape.incidence();
    let deg: Vec<usize> = inc.iter().map(Vec::len).collect();
    let mut placed_edge = vec![false; shape.num_edges()];
    let mut seen = vec![false; shape.n()];
    let mut steps: Vec<Step> = Vec::new();
    let mut queue = VecDeque::new();
    let mut push = |edge: usize, attach: Option<usize>, seen: &mut Vec<bool>, queue: &mut VecDeque<usize>| {
        let fresh: Vec<usize> = shape.edge(edge).iter().copied().filter(|&v| Some(v) != attach).collect();
        for &v in &fresh {
            seen[v] = true;
            queue.push_back(v);
        }
        let leaf_fresh = fresh.iter().all(|&v| deg[v] == 1);
        let twin = if attach.is_some() && leaf_fresh {
            steps.iter().rposition(|s| s.attach == attach && s.fresh.iter().all(|&v| deg[v] == 1))
        } else {
            None
        };
        let perms = permutations(fresh.len())
            .into_iter()
            .filter(|perm| {
                // leaves among `fresh` are interchangeable: keep them sorted
                let leaf_slots: Vec<usize> =
                    fresh.iter().zip(perm).filter(|(&v, _)| deg[v] == 1).map(|(_, &s)| s).collect();
                leaf_slots.windows(2).all(|w| w[0] < w[1])
            })
            .collect();
        steps.push(Step { edge, attach, fresh, perms, twin });
    };
    placed_edge[0] = true;
    push(0, None, &mut seen, &mut queue);
    while let Some(v) = queue.pop_front() {
        for &e in &inc[v] {
            if !placed_edge[e] {
                placed_edge[e] = true;
                push(e, Some(v), &mut seen, &mut queue);
            }
        }
    }
    steps
}

fn permutations(len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(len);
    let mut used = vec![false; len];
    fn go(len: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in 0..len {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(len, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    go(len, &mut cur, &mut used, &mut out);
    out
}

struct Search<'a> {
    h: &'a Hypergraph,
    inc: Vec<Vec<usize>>,
    steps: Vec<Step>,
    map: Vec<usize>,
    used: Vec<bool>,
    chosen: Vec<usize>,
    limits: &'a SearchLimits,
    nodes: u64,
}

impl Search<'_> {
    fn place(&mut self, pos: usize) -> Result<bool> {
        if pos == self.steps.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes & 0xFFF == 0 {
            self.limits.check_deadline()?;
        }
        let candidates: Vec<usize> = match self.steps[pos].attach {
            Some(a) => self.inc[self.map[a]].clone(),
            None => (0..self.h.num_edges()).collect(),
        };
        let floor = self.steps[pos].twin.map(|q| self.chosen[q]);
        for he in candidates {
            if floor.is_some_and(|f| he <= f) {
                continue;
            }
            let anchor = self.steps[pos].attach.map(|a| self.map[a]);
            let slots: Vec<usize> = self.h.edge(he).iter().copied().filter(|&v| Some(v) != anchor).collect();
            if slots.iter().any(|&v| self.used[v]) {
                continue;
            }
            self.chosen[pos] = he;
            for &v in &slots {
                self.used[v] = true;
            }
            for pi in 0..self.steps[pos].perms.len() {
                for (i, &s) in self.steps[pos].perms[pi].iter().enumerate() {
                    let tv = self.steps[pos].fresh[i];
                    self.map[tv] = slots[s];
                }
                if self.place(pos + 1)? {
                    return Ok(true);
                }
            }
            for &v in &slots {
                self.used[v] = false;
            }
        }
        Ok(false)
    }
}

/// Backtracking search for a copy of `tree` in `h`, with no guarantee.
pub(crate) fn search_embedding(
    h: &Hypergraph,
    tree: &TreePattern,
    limits: &SearchLimits,
) -> Result<Option<TreeEmbedding>> {
    if tree.r() != h.r() {
        return Err(Error::input(format!("tree is {}-uniform, host is {}-uniform", tree.r(), h.r())));
    }
    let steps = plan(tree);
    let mut s = Search {
        h,
        inc: h.incidence(),
        map: vec![usize::MAX; tree.num_vertices()],
        used: vec![false; h.n()],
        chosen: vec![0; steps.len()],
        steps,
        limits,
        nodes: 0,
    };
    if !s.place(0)? {
        return Ok(None);
    }
    let mut edge_indices = vec![0; tree.num_edges()];
    for (pos, step) in s.steps.iter().enumerate() {
        edge_indices[step.edge] = s.chosen[pos];
    }
    Ok(Some(TreeEmbedding { vertex_map: s.map, edge_indices }))
}

/// A copy of `tree` in `h`.
///
/// `Ok(None)` means no copy exists and `χ(h)` is at most the number of tree
/// edges, so none was promised; a miss on a host of larger chromatic number
/// is an invariant failure.
pub fn embed_tree(h: &Hypergraph, tree: &TreePattern, limits: &SearchLimits) -> Result<Option<TreeEmbedding>> {
    if let Some(found) = search_embedding(h, tree, limits)? {
        return Ok(Some(found));
    }
    if chromatic_at_least(h, tree.num_edges() + 1, limits)? {
        return Err(Error::invariant(format!(
            "no copy of a {}-edge tree in a host of chromatic number above {}",
            tree.num_edges(),
            tree.num_edges()
        )));
    }
    Ok(None)
}

/// A monochromatic copy of `tree` whenever `χ(h) ≥ k^t + 1`, `k` its edge
/// count: some class then has chromatic number above `k` and holds a copy.
pub fn find_mono_tree(
    h: &Hypergraph,
    p: &EdgePartition,
    tree: &TreePattern,
    limits: &SearchLimits,
) -> Result<MonoWitness> {
    p.check_against(h)?;
    let k = tree.num_edges();
    for i in 1..=p.t() {
        let members = p.members(i);
        let class = h.edge_subset(&members);
        if !chromatic_at_least(&class, k + 1, limits)? {
            continue;
        }
        let found = embed_tree(&class, tree, limits)?
            .ok_or_else(|| Error::invariant(format!("class {i} has chromatic number above {k} but no copy")))?;
        return Ok(MonoWitness {
            kind: PatternKind::Tree,
            class_index: i,
            edge_indices: found.edge_indices.iter().map(|&e| members[e]).collect(),
            center: None,
            embedding: Some(found.vertex_map),
        });
    }
    // χ(h) is at most the product of the class chromatic numbers, each ≤ k
    Err(Error::precondition(format!("every class has chromatic number at most {k}, so χ(H) ≤ {k}^{}", p.t())))
}
