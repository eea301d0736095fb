use super::tree::search_embedding;
use super::{MonoWitness, PatternKind, TreePattern};
use crate::error::{Error, Result};
use crate::hypercore::{chromatic_at_least, EdgePartition, Hypergraph, SearchLimits};
use crate::intersect::{first_one_intersection, intersection_size};

/// `k` edges of one class sharing exactly one common vertex.
///
/// Embeds a star with `p - 1` edges, `p = t(k-1) + 2`, and keeps the first
/// class holding `k` of them (pigeonhole). For triple systems and `k = 2`,
/// `t ≥ 2`, a pair of same-class triples meeting in one vertex already
/// suffices once `χ(H) ≥ t + 1`, so that is looked for when no big star
/// exists.
pub fn find_mono_star(h: &Hypergraph, p: &EdgePartition, k: usize, limits: &SearchLimits) -> Result<MonoWitness> {
    p.check_against(h)?;
    if k == 0 {
        return Err(Error::input("k must be at least 1"));
    }
    let t = p.t() as usize;
    let bound = t * (k - 1) + 2;
    let big = TreePattern::star(h.r(), bound - 1)?;
    if let Some(found) = search_embedding(h, &big, limits)? {
        let center = found.vertex_map[0];
        for c in 1..=p.t() {
            let same: Vec<usize> = found.edge_indices.iter().copied().filter(|&e| p.class(e) == c).collect();
            if same.len() >= k {
                return Ok(star_witness(c, center, same[..k].to_vec()));
            }
        }
        return Err(Error::invariant("pigeonhole failed on the embedded star"));
    }
    let pair_route = h.r() == 3 && k == 2 && t >= 2;
    if pair_route {
        if let Some(w) = same_class_pair(h, p) {
            return Ok(w);
        }
    }
    let needed = if pair_route { t + 1 } else { bound };
    if chromatic_at_least(h, needed, limits)? {
        Err(Error::invariant(format!("no monochromatic S_{k} although χ(H) ≥ {needed}")))
    } else {
        Err(Error::precondition(format!("chromatic number below {needed}")))
    }
}

fn star_witness(class_index: u32, center: usize, edge_indices: Vec<usize>) -> MonoWitness {
    MonoWitness { kind: PatternKind::Star, class_index, edge_indices, center: Some(center), embedding: None }
}

/// Two same-class edges meeting in exactly one vertex.
fn same_class_pair(h: &Hypergraph, p: &EdgePartition) -> Option<MonoWitness> {
    for c in 1..=p.t() {
        let members = p.members(c);
        let class = h.edge_subset(&members);
        if let Some((i, j)) = first_one_intersection(&class) {
            let (a, b) = (class.edge(i), class.edge(j));
            debug_assert_eq!(intersection_size(a, b), 1);
            let center = *a.iter().find(|v| b.contains(v)).expect("one common vertex");
            return Some(star_witness(c, center, vec![members[i], members[j]]));
        }
    }
    None
}
