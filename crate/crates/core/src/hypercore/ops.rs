use super::Hypergraph;

/// Connected components as ascending vertex lists, ordered by least vertex.
///
/// Vertices on no edge form singleton (trivial) components.
pub fn components(h: &Hypergraph) -> Vec<Vec<usize>> {
    let n = h.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in h.edges() {
        for &v in &e[1..] {
            let a = find(&mut parent, e[0]);
            let b = find(&mut parent, v);
            if a < b {
                parent[b] = a;
            } else if b < a {
                parent[a] = b;
            }
        }
    }
    let mut slot = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let root = find(&mut parent, v);
        if slot[root] == usize::MAX {
            slot[root] = out.len();
            out.push(Vec::new());
        }
        out[slot[root]].push(v);
    }
    out
}

fn restrict(h: &Hypergraph, keep: &[bool], edge_ok: impl Fn(&[usize]) -> bool) -> (Hypergraph, Vec<usize>) {
    let map: Vec<usize> = (0..h.n()).filter(|&v| keep[v]).collect();
    let mut new_index = vec![usize::MAX; h.n()];
    for (i, &v) in map.iter().enumerate() {
        new_index[v] = i;
    }
    let edges: Vec<Vec<usize>> =
        h.edges().iter().filter(|e| edge_ok(e)).map(|e| e.iter().map(|&v| new_index[v]).collect()).collect();
    // Relabelling is monotone, so canonical order is preserved.
    (Hypergraph::from_canonical(map.len(), h.r(), edges), map)
}

fn membership(n: usize, a: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; n];
    for &v in a {
        if v < n {
            inside[v] = true;
        }
    }
    inside
}

/// `H[A]`: edges entirely inside `a`, vertices renumbered in ascending order.
///
/// The second value maps new vertex indices back to the original ones.
pub fn induced(h: &Hypergraph, a: &[usize]) -> (Hypergraph, Vec<usize>) {
    let inside = membership(h.n(), a);
    restrict(h, &inside, |e| e.iter().all(|&v| inside[v]))
}

/// `H - A`: drops the vertices of `a` and every edge meeting them.
pub fn remove(h: &Hypergraph, a: &[usize]) -> (Hypergraph, Vec<usize>) {
    let inside = membership(h.n(), a);
    let keep: Vec<bool> = inside.iter().map(|&x| !x).collect();
    restrict(h, &keep, |e| e.iter().all(|&v| !inside[v]))
}
