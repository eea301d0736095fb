//! Seeded verification campaigns over enumerated or random instances.
//!
//! Instance `i` of a campaign draws its randomness from ChaCha8 seeded with
//! the campaign seed on stream `i`, so a report depends only on the seed and
//! the configuration, not on the number of worker threads.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::enumerate_hypergraphs;
use super::oracle::oracle_has_mono;
use super::random::{random_host_with_chi, random_order, random_partition};
use crate::error::{Error, Result};
use crate::hypercore::{
    chromatic_at_least, chromatic_number_with, find_coloring, is_proper, EdgePartition, Hypergraph, SearchLimits,
    VertexColoring,
};
use crate::intersect::{one_intersection_graph, partition_from_igraph_coloring};
use crate::lift::{lift_coloring, Branch};
use crate::ramsey::{
    find_mono_matching, find_mono_matching_2col, find_mono_star, find_mono_tree, validate_witness, MonoWitness,
    Pattern, TreePattern,
};

/// Shared campaign settings.
#[derive(Clone, Debug, Default)]
pub struct CampaignConfig {
    pub seed: u64,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
    pub limits: SearchLimits,
    /// Record wall-clock time in the report (which then no longer repeats
    /// byte for byte).
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: u64,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub campaign: String,
    pub seed: u64,
    pub instances: u64,
    /// Empty on success; ordered by instance.
    pub failures: Vec<Failure>,
    pub tallies: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn tally(&self, key: &str) -> u64 {
        self.tallies.get(key).copied().unwrap_or(0)
    }
}

/// Per-instance counters.
#[derive(Default)]
pub struct Tally(BTreeMap<String, u64>);

impl Tally {
    pub fn add(&mut self, key: &str, by: u64) {
        *self.0.entry(key.to_string()).or_default() += by;
    }

    pub fn bump(&mut self, key: &str) {
        self.add(key, 1);
    }
}

#[derive(Default)]
struct Partial {
    failures: Vec<Failure>,
    tallies: BTreeMap<String, u64>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.failures.extend(other.failures);
        for (k, v) in other.tallies {
            *self.tallies.entry(k).or_default() += v;
        }
        self
    }
}

/// Fresh randomness for instance `i`.
pub fn instance_rng(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

/// Runs `check` on instances `0..count` over a pool of `cfg.jobs` threads.
/// An error from an instance becomes a failure entry; counters are summed.
pub fn run_campaign<F>(name: &str, count: u64, cfg: &CampaignConfig, check: F) -> Result<CampaignReport>
where
    F: Fn(u64, &mut Tally) -> Result<()> + Sync,
{
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::resource(format!("thread pool: {e}")))?;
    let merged = pool.install(|| {
        (0..count)
            .into_par_iter()
            .fold(Partial::default, |mut acc, i| {
                let mut tally = Tally::default();
                if let Err(e) = check(i, &mut tally) {
                    acc.failures.push(Failure { instance: i, message: e.to_string() });
                }
                for (k, v) in tally.0 {
                    *acc.tallies.entry(k).or_default() += v;
                }
                acc
            })
            .reduce(Partial::default, Partial::merge)
    });
    let mut failures = merged.failures;
    failures.sort_by_key(|f| f.instance);
    Ok(CampaignReport {
        campaign: name.to_string(),
        seed: cfg.seed,
        instances: count,
        failures,
        tallies: merged.tallies,
        elapsed_ms: cfg.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

/// Bitmask view of a small hypergraph for the fast passes.
struct Masks {
    n: usize,
    edges: Vec<u64>,
}

impl Masks {
    fn new(h: &Hypergraph) -> Self {
        Masks { n: h.n(), edges: h.edges().iter().map(|e| e.iter().fold(0, |m, &v| m | 1 << v)).collect() }
    }

    /// Whether some 2-coloring leaves no edge monochromatic; vertex `n - 1`
    /// is fixed to the second color.
    fn two_colorable(&self) -> bool {
        let full = (1u64 << self.n) - 1;
        let half = 1u64 << (self.n - 1);
        (0..half).any(|side| {
            let other = full & !side;
            self.edges.iter().all(|&e| e & side != 0 && e & other != 0)
        })
    }

    /// Proper 2-coloring of the 1-intersection graph by breadth-first
    /// search, `Ok(None)` when the graph has no edges, `Err(())` when it has
    /// an odd cycle.
    fn igraph_bipartition(&self) -> std::result::Result<Option<Vec<u32>>, ()> {
        let m = self.edges.len();
        let adj: Vec<Vec<usize>> =
            (0..m).map(|i| (0..m).filter(|&j| (self.edges[i] & self.edges[j]).count_ones() == 1).collect()).collect();
        if adj.iter().all(Vec::is_empty) {
            return Ok(None);
        }
        let mut side = vec![0u32; m];
        let mut queue = Vec::with_capacity(m);
        for s in 0..m {
            if side[s] != 0 {
                continue;
            }
            side[s] = 1;
            queue.clear();
            queue.push(s);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                for &w in &adj[u] {
                    if side[w] == 0 {
                        side[w] = 3 - side[u];
                        queue.push(w);
                    } else if side[w] == side[u] {
                        return Err(());
                    }
                }
            }
        }
        Ok(Some(side))
    }
}

/// Every 3-uniform hypergraph on `n_max` labelled vertices (hence, up to
/// isolated vertices, every one on fewer): none may combine a bipartite
/// 1-intersection graph with chromatic number 3, and every instance with
/// `χ(H^[1]) = t ≥ 2` must lift to a proper coloring with at most `t`
/// colors and satisfy `χ(H) ≤ t`.
pub fn verify_lift_exhaustive(n_max: usize, cfg: &CampaignConfig) -> Result<CampaignReport> {
    if !(3..=6).contains(&n_max) {
        return Err(Error::input(format!("n_max must be between 3 and 6, got {n_max}")));
    }
    let all = enumerate_hypergraphs(3, n_max)?;
    let total = all.total();
    let limits = cfg.limits;
    run_campaign(&format!("lift-exhaustive-n{n_max}"), total, cfg, |i, tally| {
        let h = all.get(i + 1);
        let masks = Masks::new(&h);
        let two_col = masks.two_colorable();
        let (t, igc) = match masks.igraph_bipartition() {
            Ok(None) => {
                tally.bump("igraph_edgeless");
                if !two_col {
                    return Err(Error::invariant("1-intersection-free system is not 2-colorable"));
                }
                return Ok(());
            }
            Ok(Some(side)) => {
                tally.bump("igraph_bipartite");
                if !two_col {
                    return Err(Error::invariant("bipartite 1-intersection graph but χ(H) = 3"));
                }
                (2, VertexColoring::new(side)?)
            }
            Err(()) => {
                let ig = one_intersection_graph(&h);
                let (t, c) = chromatic_number_with(&ig, &limits)?;
                (t, c)
            }
        };
        tally.bump(&format!("igraph_chi_{t}"));
        let p = partition_from_igraph_coloring(&h, &igc)?;
        let lift = lift_coloring(&h, &p)?;
        if !is_proper(&h, &lift.coloring)? || lift.coloring.num_colors() as usize > t {
            return Err(Error::invariant(format!("lift is not a proper {t}-coloring")));
        }
        if lift.branch == Branch::OddList {
            tally.bump("odd_branch");
        }
        tally.add("switches", lift.trace.switches as u64);
        tally.add("residue_vertices", lift.residue as u64);
        if lift.residue > 0 {
            tally.bump("residue_nonempty");
        }
        // exact check of χ(H) ≤ t, independent of the lift
        if !two_col && h.n().div_ceil(2) > t && find_coloring(&h, t, &limits)?.is_none() {
            return Err(Error::invariant(format!("χ(H) exceeds χ(H^[1]) = {t}")));
        }
        Ok(())
    })
}

/// The bound a [`verify_bound`] campaign exercises.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundKind {
    /// Monochromatic `M_k` via greedy witnesses, `χ ≥ (t-1)(k-1) + 2k`.
    Matching { k: usize, t: u32 },
    /// Monochromatic `M_k` in two classes, `r ≥ 3`, `χ ≥ 2k`.
    Matching2 { k: usize },
    /// Monochromatic `S_k`, `χ ≥ t(k-1) + 2`, or `χ ≥ t + 1` for `S_2` in
    /// triple systems with `t ≥ 2`.
    Star { k: usize, t: u32 },
    /// Monochromatic copy of a tree with `k` edges, `χ ≥ k^t + 1`.
    Tree { tree: TreePattern, t: u32 },
}

impl BoundKind {
    pub fn t(&self) -> u32 {
        match self {
            BoundKind::Matching2 { .. } => 2,
            BoundKind::Matching { t, .. } | BoundKind::Star { t, .. } | BoundKind::Tree { t, .. } => *t,
        }
    }

    pub fn pattern(&self) -> Pattern {
        match self {
            BoundKind::Matching { k, .. } | BoundKind::Matching2 { k } => Pattern::Matching { k: *k },
            BoundKind::Star { k, .. } => Pattern::Star { k: *k },
            BoundKind::Tree { tree, .. } => Pattern::Tree { tree: tree.clone() },
        }
    }

    /// Least host chromatic number that guarantees a monochromatic copy.
    pub fn chi_bound(&self, r: usize) -> usize {
        match *self {
            BoundKind::Matching { k, t } => (t as usize - 1) * (k - 1) + 2 * k,
            BoundKind::Matching2 { k } => 2 * k,
            BoundKind::Star { k, t } if r == 3 && k == 2 && t >= 2 => t as usize + 1,
            BoundKind::Star { k, t } => t as usize * (k - 1) + 2,
            BoundKind::Tree { ref tree, t } => tree.num_edges().pow(t) + 1,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self {
            BoundKind::Matching { k, t } | BoundKind::Star { k, t } => *k >= 1 && *t >= 1,
            BoundKind::Matching2 { k } => *k >= 1,
            BoundKind::Tree { t, .. } => *t >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::input("k and t must be at least 1"))
        }
    }
}

/// Hosts and partitions for [`verify_bound`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Corpus {
    /// Every host on `n` vertices meeting the bound, under every partition.
    Exhaustive { r: usize, n: usize },
    /// `hosts` random hosts on at most `n_max` vertices meeting the bound,
    /// each under `partitions` random partitions.
    Random { r: usize, n_max: usize, hosts: u64, partitions: usize },
    /// One host under `partitions` random partitions.
    Fixed { host: Hypergraph, partitions: u64 },
}

/// Largest number of partitions one exhaustive host may have.
const MAX_PARTITIONS: u64 = 1 << 22;

/// Runs the finder for `kind` on every corpus instance that meets its
/// chromatic bound, validates each witness and confirms it with the
/// brute-force oracle.
pub fn verify_bound(kind: &BoundKind, corpus: &Corpus, cfg: &CampaignConfig) -> Result<CampaignReport> {
    kind.validate()?;
    let t = kind.t();
    let pattern = kind.pattern();
    let limits = cfg.limits;
    let name = format!("bound-{}", serde_json::to_string(kind).unwrap_or_default());
    let check_one = |h: &Hypergraph, p: &EdgePartition, rng: Option<&mut ChaCha8Rng>, tally: &mut Tally| {
        let w = run_finder(kind, h, p, rng, &limits)?;
        validate_witness(h, p, &pattern, &w)?;
        match oracle_has_mono(h, p, &pattern)? {
            Some(o) => validate_witness(h, p, &pattern, &o)?,
            None => return Err(Error::invariant("finder witness not confirmed by the oracle")),
        }
        tally.bump("witnesses");
        Ok(())
    };
    match corpus {
        Corpus::Exhaustive { r, n } => {
            let all = enumerate_hypergraphs(*r, *n)?;
            let bound = kind.chi_bound(*r);
            run_campaign(&name, all.total(), cfg, |i, tally| {
                let h = all.get(i + 1);
                if !chromatic_at_least(&h, bound, &limits)? {
                    tally.bump("below_bound");
                    return Ok(());
                }
                tally.bump("hosts");
                let m = h.num_edges() as u32;
                let count = (t as u64)
                    .checked_pow(m)
                    .filter(|&c| c <= MAX_PARTITIONS)
                    .ok_or_else(|| Error::resource(format!("{t}^{m} partitions exceed the cap of {MAX_PARTITIONS}")))?;
                let mut classes = vec![1u32; m as usize];
                for mut code in 0..count {
                    for c in classes.iter_mut() {
                        *c = (code % t as u64) as u32 + 1;
                        code /= t as u64;
                    }
                    let p = EdgePartition::new(classes.clone(), t)?;
                    check_one(&h, &p, None, tally)?;
                }
                Ok(())
            })
        }
        Corpus::Random { r, n_max, hosts, partitions } => {
            let bound = kind.chi_bound(*r);
            run_campaign(&name, *hosts, cfg, |i, tally| {
                let mut rng = instance_rng(cfg.seed, i);
                let h = random_host_with_chi(&mut rng, *r, *n_max, bound, &limits)?;
                tally.bump("hosts");
                for _ in 0..*partitions {
                    let p = random_partition(&mut rng, h.num_edges(), t)?;
                    check_one(&h, &p, Some(&mut rng), tally)?;
                }
                Ok(())
            })
        }
        Corpus::Fixed { host, partitions } => {
            let bound = kind.chi_bound(host.r());
            if !chromatic_at_least(host, bound, &limits)? {
                return Err(Error::precondition(format!("host chromatic number is below {bound}")));
            }
            run_campaign(&name, *partitions, cfg, |i, tally| {
                let mut rng = instance_rng(cfg.seed, i);
                let p = random_partition(&mut rng, host.num_edges(), t)?;
                check_one(host, &p, Some(&mut rng), tally)
            })
        }
    }
}

fn run_finder(
    kind: &BoundKind,
    h: &Hypergraph,
    p: &EdgePartition,
    rng: Option<&mut ChaCha8Rng>,
    limits: &SearchLimits,
) -> Result<MonoWitness> {
    match kind {
        BoundKind::Matching { k, .. } => {
            let order = rng.map(|rng| random_order(rng, h.n()));
            find_mono_matching(h, p, *k, order.as_deref())
        }
        BoundKind::Matching2 { k } => find_mono_matching_2col(h, p, *k, limits),
        BoundKind::Star { k, .. } => find_mono_star(h, p, *k, limits),
        BoundKind::Tree { tree, .. } => find_mono_tree(h, p, tree, limits),
    }
}
