//! Seeded instance generators for the campaigns.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hypercore::{chromatic_at_least, combinations, EdgePartition, Hypergraph, SearchLimits};

/// Each `r`-subset of `0..n` becomes an edge with probability `density`.
pub fn random_hypergraph<R: Rng + ?Sized>(rng: &mut R, n: usize, r: usize, density: f64) -> Result<Hypergraph> {
    let edges: Vec<Vec<usize>> = combinations(n, r).into_iter().filter(|_| rng.gen_bool(density)).collect();
    Hypergraph::new(n, r, edges)
}

/// Every edge gets a class drawn uniformly from `1..=t`.
pub fn random_partition<R: Rng + ?Sized>(rng: &mut R, num_edges: usize, t: u32) -> Result<EdgePartition> {
    if t == 0 {
        return Err(Error::input("t must be at least 1"));
    }
    EdgePartition::new((0..num_edges).map(|_| rng.gen_range(1..=t)).collect(), t)
}

/// A uniformly random permutation of `0..n`.
pub fn random_order<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order
}

/// A random `r`-uniform host on at most `n_max` vertices with `χ ≥ min_chi`.
///
/// Draws a vertex count no smaller than `(min_chi - 1)(r - 1) + 1`, the
/// least order of a complete host with that chromatic number, and an edge
/// density between 1/2 and 1, and keeps the first draw that passes the
/// exact test.
pub fn random_host_with_chi<R: Rng + ?Sized>(
    rng: &mut R,
    r: usize,
    n_max: usize,
    min_chi: usize,
    limits: &SearchLimits,
) -> Result<Hypergraph> {
    if r < 2 {
        return Err(Error::input("r must be at least 2"));
    }
    let n_min = (min_chi.max(1) - 1) * (r - 1) + 1;
    if n_min > n_max {
        return Err(Error::input(format!("χ ≥ {min_chi} needs at least {n_min} vertices, above n_max = {n_max}")));
    }
    const ATTEMPTS: usize = 10_000;
    for _ in 0..ATTEMPTS {
        let n = rng.gen_range(n_min.max(r)..=n_max);
        let density = rng.gen_range(0.5..=1.0);
        let h = random_hypergraph(rng, n, r, density)?;
        if chromatic_at_least(&h, min_chi, limits)? {
            return Ok(h);
        }
    }
    Err(Error::resource(format!("no host with χ ≥ {min_chi} in {ATTEMPTS} draws")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::chromatic_number;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded_draws_repeat() {
        let a = random_hypergraph(&mut ChaCha8Rng::seed_from_u64(5), 7, 3, 0.4).unwrap();
        let b = random_hypergraph(&mut ChaCha8Rng::seed_from_u64(5), 7, 3, 0.4).unwrap();
        assert_eq!(a, b);
        let p = random_partition(&mut ChaCha8Rng::seed_from_u64(1), 30, 3).unwrap();
        assert!(p.class_of().iter().all(|&c| (1..=3).contains(&c)));
        let mut o = random_order(&mut ChaCha8Rng::seed_from_u64(2), 9);
        o.sort_unstable();
        assert_eq!(o, (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn hosts_meet_the_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let lim = SearchLimits::default();
        for _ in 0..10 {
            let h = random_host_with_chi(&mut rng, 3, 10, 4, &lim).unwrap();
            assert!(h.n() >= 7 && h.n() <= 10);
            assert!(chromatic_number(&h).unwrap().0 >= 4);
        }
        assert!(random_host_with_chi(&mut rng, 3, 8, 5, &lim).is_err());
    }
}
