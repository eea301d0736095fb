//! Acceptance criteria 1-9. Each test writes one `criterion N: PASS|FAIL`
//! line straight to stderr (bypassing output capture) and then asserts.

use std::io::Write as _;
use std::time::{Duration, Instant};

use chromram::workbench::{
    instance_rng, oracle_exists_avoiding_partition, oracle_has_mono, random_hypergraph, random_partition, run_campaign,
    verify_bound, verify_lift_exhaustive, BoundKind, CampaignConfig, CampaignReport, Corpus,
};
use chromram::{
    assemble_lower_witness, build_skeleton_traced, chromatic_number, chromatic_number_with, combinations,
    complete_hypergraph, embed_tree, gen_matching_extremal, gen_two_factor_split, is_proper, lift_coloring,
    one_intersection_graph, partition_from_igraph_coloring, structure_decompose, verify_skeleton, Branch,
    EdgePartition, Error, Hypergraph, LowerKind, Pattern, SearchLimits, TreePattern,
};
use rand::seq::SliceRandom;
use rand::Rng;

const SEED: u64 = 20_240_601;

fn report(n: u32, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "criterion {n}: {verdict} {detail}");
}

fn cfg() -> CampaignConfig {
    CampaignConfig { seed: SEED, jobs: 0, ..Default::default() }
}

fn summary(r: &CampaignReport) -> String {
    let first = r.failures.first().map(|f| format!(" first failure #{}: {}", f.instance, f.message));
    format!("{}: {} instances, {} failures{}", r.campaign, r.instances, r.failures.len(), first.unwrap_or_default())
}

/// Largest number of pairwise disjoint edges in class `c`.
fn class_matching_number(h: &Hypergraph, p: &EdgePartition, c: u32) -> usize {
    let class = p.class_hypergraph(h, c);
    let one = EdgePartition::single_class(class.num_edges());
    (1..).find(|&k| oracle_has_mono(&class, &one, &Pattern::Matching { k }).unwrap().is_none()).expect("finite") - 1
}

#[test]
fn criterion_1_complete_hypergraph_chromatic_numbers() {
    let start = Instant::now();
    let mut wrong = Vec::new();
    for r in 2..=4 {
        for n in 1..=10 {
            let h = complete_hypergraph(n, r).unwrap();
            let (chi, c) = chromatic_number(&h).unwrap();
            if chi != n.div_ceil(r - 1) || !is_proper(&h, &c).unwrap() {
                wrong.push((n, r, chi));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = wrong.is_empty() && elapsed < Duration::from_secs(10);
    report(1, pass, &format!("30 complete hypergraphs in {elapsed:.2?}, mismatches {wrong:?}"));
    assert!(pass);
}

#[test]
fn criterion_2_lift_exhaustive() {
    let five = verify_lift_exhaustive(5, &cfg()).unwrap();
    let start = Instant::now();
    let six = verify_lift_exhaustive(6, &cfg()).unwrap();
    let elapsed = start.elapsed();
    let pass = five.passed() && six.passed() && five.instances == 1023 && six.instances == (1 << 20) - 1;
    report(
        2,
        pass,
        &format!(
            "{}; {} in {elapsed:.1?}; odd branch {} times, nonempty list residue {} times",
            summary(&five),
            summary(&six),
            six.tally("odd_branch"),
            six.tally("residue_nonempty")
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_3_two_color_matchings() {
    let lim = SearchLimits::default();
    // lower: the extremal coloring of K_6^3 has no monochromatic M_2^3
    let (k6, p) = gen_matching_extremal(3, 2, 2).unwrap();
    let absent = oracle_has_mono(&k6, &p, &Pattern::Matching { k: 2 }).unwrap().is_none();
    let chi6 = chromatic_number(&k6).unwrap().0;
    // upper: every tried 2-partition of a 4-chromatic host has one
    let k7 = complete_hypergraph(7, 3).unwrap();
    let fixed =
        verify_bound(&BoundKind::Matching2 { k: 2 }, &Corpus::Fixed { host: k7, partitions: 2000 }, &cfg()).unwrap();
    let random = verify_bound(
        &BoundKind::Matching2 { k: 2 },
        &Corpus::Random { r: 3, n_max: 10, hosts: 500, partitions: 200 },
        &cfg(),
    )
    .unwrap();
    let lower = assemble_lower_witness(&LowerKind::Matching { r: 3, k: 2, t: 2 }, &lim).unwrap();
    let pass = absent && chi6 == 3 && lower.lower_bound == 4 && fixed.passed() && random.passed();
    report(
        3,
        pass,
        &format!(
            "lower: K_6^3 avoids={absent} chi={chi6} bound={}; upper: {}; {}",
            lower.lower_bound,
            summary(&fixed),
            summary(&random)
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_4_two_color_stars() {
    let exhaustive = verify_bound(&BoundKind::Star { k: 2, t: 2 }, &Corpus::Exhaustive { r: 3, n: 5 }, &cfg()).unwrap();
    // lower witness: two disjoint triples
    let h = Hypergraph::new(6, 3, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
    let chi = chromatic_number(&h).unwrap().0;
    let p = EdgePartition::new(vec![1, 2], 2).unwrap();
    let avoids = oracle_has_mono(&h, &p, &Pattern::Star { k: 2 }).unwrap().is_none();
    let pass = exhaustive.passed() && exhaustive.tally("hosts") > 0 && chi == 2 && avoids;
    report(
        4,
        pass,
        &format!(
            "{} ({} 3-chromatic hosts, {} witnesses); two disjoint triples chi={chi} avoid={avoids}",
            summary(&exhaustive),
            exhaustive.tally("hosts"),
            exhaustive.tally("witnesses")
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_5_three_color_stars() {
    let lim = SearchLimits::default();
    let k5 = complete_hypergraph(5, 3).unwrap();
    let avoiding = oracle_exists_avoiding_partition(&k5, &Pattern::Star { k: 2 }, 3, &lim).unwrap();
    let confirmed =
        avoiding.as_ref().map(|p| oracle_has_mono(&k5, p, &Pattern::Star { k: 2 }).unwrap().is_none()).unwrap_or(false);
    let lower_bound = k5.n().div_ceil(2) + 1;
    let upper = verify_bound(
        &BoundKind::Star { k: 2, t: 3 },
        &Corpus::Random { r: 3, n_max: 9, hosts: 500, partitions: 1 },
        &cfg(),
    )
    .unwrap();
    let pass = confirmed && lower_bound == 4 && upper.passed();
    report(5, pass, &format!("K_5^3 avoiding 3-partition={confirmed}, lower bound {lower_bound}; {}", summary(&upper)));
    assert!(pass);
}

#[test]
fn criterion_6_matching_ramsey_number() {
    let lim = SearchLimits::default();
    let start = Instant::now();
    let m2 = Pattern::Matching { k: 2 };
    let k6 = complete_hypergraph(6, 3).unwrap();
    let k7 = complete_hypergraph(7, 3).unwrap();
    let six = oracle_exists_avoiding_partition(&k6, &m2, 2, &lim).unwrap();
    let six_ok = six.as_ref().is_some_and(|p| oracle_has_mono(&k6, p, &m2).unwrap().is_none());
    let seven = oracle_exists_avoiding_partition(&k7, &m2, 2, &lim).unwrap();
    let sampled =
        verify_bound(&BoundKind::Matching2 { k: 2 }, &Corpus::Fixed { host: k7, partitions: 10_000 }, &cfg()).unwrap();
    let elapsed = start.elapsed();
    let pass = six_ok && seven.is_none() && sampled.passed();
    report(
        6,
        pass,
        &format!(
            "K_6^3 has an avoiding 2-partition={six_ok}, K_7^3 has none={}; {} ({elapsed:.2?})",
            seven.is_none(),
            summary(&sampled)
        ),
    );
    assert!(pass);
}

/// A factorized `K_4` skeleton on vertices `0..4` whose matchings are all
/// bases of single-triple components, one class per perfect matching.
const ODD_FIXTURE: [([usize; 3], u32); 6] =
    [([0, 1, 4], 1), ([2, 3, 5], 1), ([0, 2, 6], 2), ([1, 3, 7], 2), ([0, 3, 8], 3), ([1, 2, 9], 3)];

/// A K-component in class 1 whose initial pairs close a `K_4` with the
/// bases of classes 2 and 3, which switching must repair.
const BAD_FIXTURE: [([usize; 3], u32); 8] = [
    ([0, 1, 2], 1),
    ([0, 1, 3], 1),
    ([0, 2, 3], 1),
    ([1, 2, 3], 1),
    ([0, 2, 4], 2),
    ([1, 3, 5], 2),
    ([0, 3, 6], 3),
    ([1, 2, 7], 3),
];

/// Places a fixture on random labels in `0..12`. The four core vertices get
/// the smallest labels drawn, so every single-triple component keeps its
/// base, and keep their relative order when `ordered_core` is set, so the
/// K-component keeps its initial pairs.
fn plant<R: Rng>(rng: &mut R, fixture: &[([usize; 3], u32)], ordered_core: bool) -> (Hypergraph, EdgePartition) {
    let size = fixture.iter().flat_map(|(e, _)| e).max().unwrap() + 1;
    let mut labels: Vec<usize> = (0..12).collect::<Vec<_>>().choose_multiple(rng, size).copied().collect();
    labels.sort_unstable();
    if !ordered_core {
        labels[..4].shuffle(rng);
    }
    labels[4..].shuffle(rng);
    let mut edges: Vec<(Vec<usize>, u32)> = fixture
        .iter()
        .map(|(e, c)| {
            let mut e: Vec<usize> = e.iter().map(|&v| labels[v]).collect();
            e.sort_unstable();
            (e, *c)
        })
        .collect();
    edges.sort();
    let h = Hypergraph::new(12, 3, edges.iter().map(|(e, _)| e.clone())).unwrap();
    let p = EdgePartition::new(edges.iter().map(|(_, c)| *c).collect(), 3).unwrap();
    (h, p)
}

#[test]
fn criterion_7_skeleton_and_structure_suite() {
    let lim = SearchLimits::default();
    let run = run_campaign("skeleton-suite", 10_000, &cfg(), |i, tally| {
        let mut rng = instance_rng(SEED, i);
        let (h, p, t) = match i % 4 {
            0 | 1 => {
                let (h, p) =
                    if i % 4 == 0 { plant(&mut rng, &ODD_FIXTURE, false) } else { plant(&mut rng, &BAD_FIXTURE, true) };
                let t = chromatic_number_with(&one_intersection_graph(&h), &lim)?.0;
                if t != 3 {
                    return Err(Error::invariant(format!("planted instance has χ(H^[1]) = {t}")));
                }
                tally.bump("planted");
                (h, p, t)
            }
            _ => {
                let n = rng.gen_range(4..=12);
                let all = combinations(n, 3);
                let m = rng.gen_range(1..=all.len().min(30));
                let h = Hypergraph::new(n, 3, all.choose_multiple(&mut rng, m).cloned().collect::<Vec<_>>())?;
                let (t, c) = chromatic_number_with(&one_intersection_graph(&h), &lim)?;
                (h.clone(), partition_from_igraph_coloring(&h, &c)?, t)
            }
        };
        for class in 1..=p.t() {
            let sub = p.class_hypergraph(&h, class);
            if structure_decompose(&sub)?.reassemble(&sub) != sub {
                return Err(Error::invariant(format!("class {class} does not reassemble")));
            }
        }
        if t < 2 {
            tally.bump("igraph_edgeless");
            return Ok(());
        }
        let (s, trace) = build_skeleton_traced(&h, &p)?;
        verify_skeleton(&h, &p, &s)?;
        if trace.switches > trace.initial_bad {
            return Err(Error::invariant(format!(
                "{} switches for {} bad components",
                trace.switches, trace.initial_bad
            )));
        }
        tally.add("switches", trace.switches as u64);
        let lift = lift_coloring(&h, &p)?;
        if !is_proper(&h, &lift.coloring)? || lift.coloring.num_colors() as usize > t {
            return Err(Error::invariant("lift is not a proper t-coloring"));
        }
        if lift.branch == Branch::OddList {
            tally.bump("odd_branch");
        }
        tally.bump("lifted");
        Ok(())
    })
    .unwrap();
    let pass = run.passed() && run.tally("odd_branch") > 0;
    report(
        7,
        pass,
        &format!(
            "{}; lifted {}, odd branch {}, switches {}",
            summary(&run),
            run.tally("lifted"),
            run.tally("odd_branch"),
            run.tally("switches")
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_8_finders_agree_with_oracle() {
    let lim = SearchLimits::default();
    let path2 = TreePattern::path(3, 2).unwrap();
    let runs: Vec<CampaignReport> = [
        (BoundKind::Matching { k: 2, t: 2 }, 10),
        (BoundKind::Matching2 { k: 2 }, 10),
        (BoundKind::Star { k: 2, t: 2 }, 8),
        (BoundKind::Tree { tree: path2, t: 2 }, 10),
    ]
    .into_iter()
    .map(|(kind, n_max)| {
        verify_bound(&kind, &Corpus::Random { r: 3, n_max, hosts: 1000, partitions: 1 }, &cfg()).unwrap()
    })
    .collect();
    // embedding agrees with the oracle everywhere and never misses above the bound
    let embed = run_campaign("embed-tree", 1000, &cfg(), |i, tally| {
        let mut rng = instance_rng(SEED ^ 0xE, i);
        let n = rng.gen_range(4..=9);
        let density = rng.gen_range(0.1..0.9);
        let h = random_hypergraph(&mut rng, n, 3, density)?;
        let chi = chromatic_number(&h)?.0;
        let k = rng.gen_range(1..=chi.max(2));
        let tree = if rng.gen_bool(0.5) { TreePattern::star(3, k)? } else { TreePattern::path(3, k)? };
        let found = embed_tree(&h, &tree, &lim)?;
        let one = EdgePartition::single_class(h.num_edges());
        let oracle = oracle_has_mono(&h, &one, &Pattern::Tree { tree: tree.clone() })?;
        if found.is_some() != oracle.is_some() {
            return Err(Error::invariant("embedding and oracle disagree"));
        }
        if chi > k {
            tally.bump("above_bound");
        }
        Ok(())
    })
    .unwrap();
    let pass = runs.iter().all(CampaignReport::passed) && embed.passed();
    let lines: Vec<String> = runs.iter().map(summary).collect();
    report(8, pass, &format!("{}; {}", lines.join("; "), summary(&embed)));
    assert!(pass);
}

#[test]
fn criterion_9_generators() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut checked = 0;
    for r in 2..=4 {
        for k in 1..=3 {
            for t in 1..=3 {
                let n = (t - 1) * (k - 1) + k * r - 1;
                if n > 12 {
                    continue;
                }
                let (h, p) = gen_matching_extremal(r, k, t).unwrap();
                checked += 1;
                let tight = (1..=t as u32).all(|c| class_matching_number(&h, &p, c) == k - 1);
                if !tight {
                    bad.push(format!("matching r={r} k={k} t={t}"));
                }
            }
        }
    }
    for k in [3, 5, 7] {
        let (h, p) = gen_two_factor_split(k).unwrap();
        let regular = (1..=2).all(|c| p.class_hypergraph(&h, c).degrees().iter().all(|&d| d == k - 1));
        let complete = h == complete_hypergraph(2 * k - 1, 2).unwrap();
        let avoids = oracle_has_mono(&h, &p, &Pattern::Star { k }).unwrap().is_none();
        if !(regular && complete && avoids) {
            bad.push(format!("two-factor k={k}"));
        }
    }
    let pass = bad.is_empty() && checked > 0;
    report(
        9,
        pass,
        &format!("{checked} extremal colorings, 3 two-factor splits in {:.2?}; bad {bad:?}", start.elapsed()),
    );
    assert!(pass);
}

#[test]
fn random_partitions_are_reproducible() {
    let a = random_partition(&mut instance_rng(SEED, 3), 20, 3).unwrap();
    let b = random_partition(&mut instance_rng(SEED, 3), 20, 3).unwrap();
    assert_eq!(a, b);
}
