use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::hypercore::{components, Hypergraph, VertexColoring};

/// Colors a connected graph with at most `Δ` colors, where `Δ` is its
/// maximum degree.
///
/// Rejects complete graphs and odd cycles, the two cases where `Δ` colors do
/// not suffice.
pub fn brooks_color(g: &Hypergraph) -> Result<VertexColoring> {
    if g.r() != 2 {
        return Err(Error::input("brooks_color expects a graph"));
    }
    if g.n() == 0 {
        return Err(Error::precondition("graph has no vertices"));
    }
    if components(g).len() != 1 {
        return Err(Error::precondition("graph is not connected"));
    }
    let adj = g.adjacency();
    let delta = adj.iter().map(Vec::len).max().unwrap_or(0);
    let colors = brooks_adjacency(&adj, delta)?;
    VertexColoring::new(colors)
}

/// Brooks coloring on adjacency lists of a connected graph with maximum
/// degree `delta`.
pub(crate) fn brooks_adjacency(adj: &[Vec<usize>], delta: usize) -> Result<Vec<u32>> {
    let n = adj.len();
    let regular = adj.iter().all(|a| a.len() == delta);
    if regular && n == delta + 1 {
        return Err(Error::precondition(format!("graph is complete (K_{n})")));
    }
    if !regular {
        let root = (0..n).find(|&v| adj[v].len() < delta).expect("not regular");
        let alive = vec![true; n];
        let mut colors = vec![0; n];
        reverse_bfs_greedy(adj, &alive, root, &mut colors);
        return finish(colors, delta);
    }
    if delta == 2 {
        if n % 2 == 1 {
            return Err(Error::precondition(format!("graph is an odd cycle (C_{n})")));
        }
        return finish(two_color_cycle(adj), delta);
    }
    if let Some(cut) = find_cut_vertex(adj) {
        return finish(color_through_cut_vertex(adj, cut), delta);
    }
    let (v, a, b) = find_anchor_triple(adj)
        .ok_or_else(|| Error::invariant("no vertex with two non-adjacent neighbours leaving the graph connected"))?;
    let mut colors = vec![0; n];
    colors[a] = 1;
    colors[b] = 1;
    let mut alive = vec![true; n];
    alive[a] = false;
    alive[b] = false;
    reverse_bfs_greedy(adj, &alive, v, &mut colors);
    finish(colors, delta)
}

fn finish(colors: Vec<u32>, delta: usize) -> Result<Vec<u32>> {
    if colors.iter().any(|&c| c == 0 || c as usize > delta) {
        return Err(Error::invariant(format!("Brooks coloring used more than {delta} colors")));
    }
    Ok(colors)
}

/// BFS from `root` over `alive` vertices, then colors them greedily from the
/// farthest back to `root`, so every vertex but the root still has an
/// uncolored neighbour (its BFS parent) when it is colored.
fn reverse_bfs_greedy(adj: &[Vec<usize>], alive: &[bool], root: usize, colors: &mut [u32]) {
    let order = bfs_order(adj, alive, root);
    for &v in order.iter().rev() {
        colors[v] = least_free(adj, colors, v);
    }
}

fn least_free(adj: &[Vec<usize>], colors: &[u32], v: usize) -> u32 {
    let mut used = vec![false; adj[v].len() + 2];
    for &u in &adj[v] {
        let c = colors[u] as usize;
        if c < used.len() {
            used[c] = true;
        }
    }
    (1..used.len()).find(|&c| !used[c]).unwrap_or(used.len()) as u32
}

fn bfs_order(adj: &[Vec<usize>], alive: &[bool], root: usize) -> Vec<usize> {
    let mut seen = vec![false; adj.len()];
    let mut order = Vec::with_capacity(adj.len());
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &u in &adj[v] {
            if alive[u] && !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    order
}

fn connected_without(adj: &[Vec<usize>], removed: &[usize]) -> bool {
    let mut alive = vec![true; adj.len()];
    for &r in removed {
        alive[r] = false;
    }
    let Some(start) = (0..adj.len()).find(|&v| alive[v]) else {
        return true;
    };
    bfs_order(adj, &alive, start).len() == adj.len() - removed.len()
}

fn two_color_cycle(adj: &[Vec<usize>]) -> Vec<u32> {
    let order = bfs_order(adj, &vec![true; adj.len()], 0);
    let mut colors = vec![0; adj.len()];
    for &v in &order {
        colors[v] = least_free(adj, &colors, v);
    }
    colors
}

fn find_cut_vertex(adj: &[Vec<usize>]) -> Option<usize> {
    (0..adj.len()).find(|&v| !connected_without(adj, &[v]))
}

/// Colors each piece `C ∪ {cut}` separately (the cut vertex has spare
/// degree there), then aligns the pieces on the cut vertex's color.
fn color_through_cut_vertex(adj: &[Vec<usize>], cut: usize) -> Vec<u32> {
    let n = adj.len();
    let mut colors = vec![0u32; n];
    let mut assigned = vec![false; n];
    assigned[cut] = true;
    let mut alive_rest = vec![true; n];
    alive_rest[cut] = false;
    for start in 0..n {
        if assigned[start] {
            continue;
        }
        let piece = bfs_order(adj, &alive_rest, start);
        let mut alive = vec![false; n];
        alive[cut] = true;
        for &v in &piece {
            alive[v] = true;
        }
        let mut local = vec![0u32; n];
        let order = bfs_order(adj, &alive, cut);
        for &v in order.iter().rev() {
            let mut used = vec![false; adj[v].len() + 2];
            for &u in &adj[v] {
                let c = local[u] as usize;
                if alive[u] && c < used.len() {
                    used[c] = true;
                }
            }
            local[v] = (1..used.len()).find(|&c| !used[c]).unwrap_or(used.len()) as u32;
        }
        let pivot = local[cut];
        for &v in &piece {
            let c = local[v];
            colors[v] = if c == pivot {
                1
            } else if c == 1 {
                pivot
            } else {
                c
            };
            assigned[v] = true;
        }
    }
    colors[cut] = 1;
    colors
}

/// A vertex `v` with non-adjacent neighbours `a`, `b` such that removing
/// `a` and `b` leaves the graph connected.
fn find_anchor_triple(adj: &[Vec<usize>]) -> Option<(usize, usize, usize)> {
    for v in 0..adj.len() {
        for (i, &a) in adj[v].iter().enumerate() {
            for &b in &adj[v][i + 1..] {
                if adj[a].binary_search(&b).is_err() && connected_without(adj, &[a, b]) {
                    return Some((v, a, b));
                }
            }
        }
    }
    None
}
