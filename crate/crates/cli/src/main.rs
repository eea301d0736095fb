//! `chromram`: command-line workbench over the `chromram` library.
//!
//! Exit codes: 0 success, 1 bad input or unmet precondition, 2 internal
//! invariant failure (including failed campaign instances), 3 resource cap.

use std::fmt::Write as _;
use std::io::{Read, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context};
use chromram::workbench::{
    enumerate_hypergraphs, oracle_exists_avoiding_partition, oracle_has_mono, random_order, verify_bound,
    verify_lift_exhaustive, BoundKind, CampaignConfig, CampaignReport, Corpus, HypergraphFile,
};
use chromram::{
    assemble_lower_witness, build_skeleton_traced, chromatic_number_with, color_via_intersection, find_coloring,
    find_mono_matching, find_mono_matching_2col, find_mono_star, find_mono_tree, gen_matching_extremal,
    gen_star_witness, gen_two_factor_split, is_proper, one_intersection_graph, partition_from_igraph_coloring,
    structure_decompose, validate_witness, EdgePartition, Error, Hypergraph, LowerKind, MonoWitness, Part, Pattern,
    Provenance, Route, SearchLimits, TreePattern, VertexColoring,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "chromram", version, about = "Chromatic Ramsey workbench for uniform hypergraphs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Input file (text or JSON); standard input when absent or `-`.
    #[arg(short, long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for campaigns; 0 picks one per core.
    #[arg(long, global = true, env = "CHROMRAM_JOBS", default_value_t = 1)]
    jobs: usize,
    /// Largest vertex count the exact searches accept.
    #[arg(long, global = true, default_value_t = chromram::hypercore::DEFAULT_VERTEX_CAP)]
    cap: usize,
    /// Give up on exact searches after this many seconds.
    #[arg(long, global = true)]
    timeout_sec: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Exact chromatic number with a witness coloring.
    Chi,
    /// The 1-intersection graph.
    Igraph,
    /// Structure of a triple system without 1-intersections.
    Decompose,
    /// Union-of-matchings skeleton of a partitioned triple system.
    Skeleton,
    /// Proper coloring of a triple system through its 1-intersection graph.
    Lift,
    /// Monochromatic substructure in a partitioned hypergraph.
    Find {
        #[command(subcommand)]
        what: FindCmd,
    },
    /// Extremal colorings certifying lower bounds.
    Witness {
        #[command(subcommand)]
        what: WitnessCmd,
    },
    /// Brute-force searches.
    Oracle {
        #[command(subcommand)]
        what: OracleCmd,
    },
    /// Seeded verification campaigns.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// All nonempty r-uniform hypergraphs on n labelled vertices.
    Enum {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        /// Keep one hypergraph per (edge count, degrees, chromatic number).
        #[arg(long)]
        dedup: bool,
        /// Print only the number of hypergraphs.
        #[arg(long)]
        count: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Order {
    Natural,
    Random,
    Degree,
}

#[derive(Subcommand)]
enum FindCmd {
    /// Greedy-witness matching finder, any number of classes.
    Matching {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Order::Natural)]
        order: Order,
    },
    /// Two-class matching finder for r >= 3.
    Matching2 {
        #[arg(long)]
        k: usize,
    },
    Star {
        #[arg(long)]
        k: usize,
    },
    Tree {
        #[command(flatten)]
        tree: TreeArgs,
    },
}

#[derive(Args)]
struct TreeArgs {
    /// Built-in tree shape.
    #[arg(long, value_enum, default_value_t = Shape::Path)]
    shape: Shape,
    /// Edge count of the built-in shape.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// JSON tree `{"r": .., "edges": [[..], ..]}`; overrides the shape.
    #[arg(long)]
    tree_json: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Shape {
    Path,
    Star,
}

#[derive(Subcommand)]
enum WitnessCmd {
    /// K_N^r colored so that no class has k disjoint edges.
    MatchingExtremal {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
    },
    /// K_{k(r-1)}^r, which has no S_k^r.
    Star {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
    },
    /// K_{2k-1} split into two (k-1)-regular classes, k odd.
    TwoFactor {
        #[arg(long)]
        k: usize,
    },
    /// A colored complete host with its chromatic lower bound.
    Lower {
        #[arg(long, value_enum)]
        kind: LowerArg,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Host order for `star-pairs`.
        #[arg(long, default_value_t = 5)]
        n: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LowerArg {
    Matching,
    Star,
    TwoFactor,
    StarPairs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PatternArg {
    Matching,
    Star,
    Tree,
}

#[derive(Args)]
struct PatternArgs {
    #[arg(long, value_enum)]
    pattern: PatternArg,
    /// Edge count (matchings, stars and built-in trees).
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Shape::Path)]
    shape: Shape,
    #[arg(long)]
    tree_json: Option<String>,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Exhaustive search for a monochromatic copy under the input partition.
    Mono {
        #[command(flatten)]
        pattern: PatternArgs,
    },
    /// A t-partition of the input hypergraph avoiding the pattern, if any.
    Avoid {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        t: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Every triple system on n labelled vertices against the lift.
    Thm6 {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long)]
        timing: bool,
    },
    /// A finder on a corpus of hosts above its chromatic bound.
    Bounds {
        #[arg(long, value_enum)]
        bound: BoundArg,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        t: u32,
        #[arg(long, value_enum, default_value_t = Shape::Path)]
        shape: Shape,
        #[arg(long, value_enum, default_value_t = CorpusArg::Random)]
        corpus: CorpusArg,
        #[arg(long, default_value_t = 3)]
        r: usize,
        /// Vertex count for the exhaustive corpus.
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 9)]
        n_max: usize,
        #[arg(long, default_value_t = 100)]
        hosts: u64,
        #[arg(long, default_value_t = 10)]
        partitions: u64,
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundArg {
    Matching,
    Matching2,
    Star,
    Tree,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CorpusArg {
    Exhaustive,
    Random,
    /// Random partitions of the input hypergraph.
    Fixed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(Error::Invariant(_)) => 2,
        Some(Error::Resource(_)) => 3,
        _ => 1,
    }
}

impl Global {
    fn limits(&self) -> SearchLimits {
        SearchLimits {
            vertex_cap: self.cap,
            deadline: self.timeout_sec.map(|s| Instant::now() + Duration::from_secs(s)),
        }
    }

    fn read(&self) -> anyhow::Result<HypergraphFile> {
        let text = match &self.input {
            Some(p) if p.as_os_str() != "-" => {
                std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
            }
            _ => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
                s
            }
        };
        if text.trim_start().starts_with('{') {
            serde_json::from_str(&text).map_err(|e| Error::input(format!("JSON input: {e}")).into())
        } else {
            Ok(HypergraphFile::parse(&text)?)
        }
    }

    fn campaign(&self, timing: bool) -> CampaignConfig {
        CampaignConfig { seed: self.seed, jobs: self.jobs, limits: self.limits(), timing }
    }
}

/// Prints `value` as pretty JSON or as the given text.
fn emit<T: Serialize>(g: &Global, value: &T, text: impl FnOnce() -> String) -> anyhow::Result<()> {
    match g.format {
        Format::Json => say(&format!("{}\n", serde_json::to_string_pretty(value)?)),
        Format::Text => say(&text()),
    }
}

/// Writes to standard output; a closed pipe ends the program quietly.
fn say(s: &str) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(s.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        r => Ok(r?),
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let g = &cli.global;
    match cli.command {
        Command::Chi => {
            let f = g.read()?;
            let (chi, c) = chromatic_number_with(&f.hypergraph, &g.limits())?;
            #[derive(Serialize)]
            struct Out<'a> {
                chi: usize,
                coloring: &'a VertexColoring,
            }
            emit(g, &Out { chi, coloring: &c }, || format!("chi {chi}\ncoloring {}\n", join(c.colors())))?;
        }
        Command::Igraph => {
            let f = g.read()?;
            let out = HypergraphFile::new(one_intersection_graph(&f.hypergraph));
            emit(g, &out, || out.to_text())?;
        }
        Command::Decompose => {
            let f = g.read()?;
            let d = structure_decompose(&f.hypergraph)?;
            emit(g, &d, || {
                let mut s = String::new();
                for part in &d.parts {
                    let line = match part {
                        Part::B { base, edges } => format!("B base {} {} edges {}", base.0, base.1, join(edges)),
                        Part::K { quad, edges } => format!("K quad {} edges {}", join(quad), join(edges)),
                        Part::Trivial { vertex } => format!("trivial {vertex}"),
                    };
                    writeln!(s, "{line}").unwrap();
                }
                s
            })?;
        }
        Command::Skeleton => {
            let f = g.read()?;
            let p = partition_or_igraph(&f, &g.limits())?;
            let (s, trace) = build_skeleton_traced(&f.hypergraph, &p)?;
            #[derive(Serialize)]
            struct Out<'a> {
                skeleton: &'a chromram::Skeleton,
                trace: chromram::SwitchTrace,
            }
            emit(g, &Out { skeleton: &s, trace }, || {
                let mut out = format!("skeleton n {} t {}\n", s.n, s.t);
                for e in &s.edges {
                    let prov = match e.provenance {
                        Provenance::BBase(c) => format!("bbase {c}"),
                        Provenance::KPair(c) => format!("kpair {c}"),
                    };
                    writeln!(out, "{} {} M{} {prov}", e.u, e.v, e.matching).unwrap();
                }
                writeln!(out, "bad {} switches {}", trace.initial_bad, trace.switches).unwrap();
                out
            })?;
        }
        Command::Lift => {
            let f = g.read()?;
            let h = &f.hypergraph;
            let (t, coloring, route) = match &f.partition {
                Some(p) => {
                    let lift = chromram::lift_coloring(h, p)?;
                    (lift.t, lift.coloring, Route::Lift)
                }
                None => {
                    let c = color_via_intersection(h, &g.limits())?;
                    (c.t, c.coloring, c.route)
                }
            };
            if !is_proper(h, &coloring)? {
                return Err(Error::invariant("lifted coloring is not proper").into());
            }
            // per edge, two of its vertices with different colors
            let certificate: Vec<(usize, usize)> = h
                .edges()
                .iter()
                .map(|e| {
                    let a = e[0];
                    let b = *e.iter().find(|&&v| coloring.color(v) != coloring.color(a)).expect("proper");
                    (a, b)
                })
                .collect();
            #[derive(Serialize)]
            struct Out<'a> {
                t: u32,
                route: Route,
                coloring: &'a VertexColoring,
                certificate: &'a [(usize, usize)],
            }
            let out = Out { t, route, coloring: &coloring, certificate: &certificate };
            emit(g, &out, || {
                let mut s = format!("t {t}\nroute {route:?}\ncoloring {}\n", join(coloring.colors()));
                for (i, (a, b)) in certificate.iter().enumerate() {
                    writeln!(s, "edge {i}: {a}={} {b}={}", coloring.color(*a), coloring.color(*b)).unwrap();
                }
                s
            })?;
        }
        Command::Find { what } => {
            let f = g.read()?;
            let h = &f.hypergraph;
            let p = f.partition.as_ref().ok_or_else(|| Error::input("input needs a `colors` block"))?;
            let limits = g.limits();
            let (pattern, w) = match what {
                FindCmd::Matching { k, order } => {
                    let order = match order {
                        Order::Natural => None,
                        Order::Random => Some(random_order(&mut ChaCha8Rng::seed_from_u64(g.seed), h.n())),
                        Order::Degree => {
                            let deg = h.degrees();
                            let mut o: Vec<usize> = (0..h.n()).collect();
                            o.sort_by_key(|&v| std::cmp::Reverse(deg[v]));
                            Some(o)
                        }
                    };
                    (Pattern::Matching { k }, find_mono_matching(h, p, k, order.as_deref())?)
                }
                FindCmd::Matching2 { k } => (Pattern::Matching { k }, find_mono_matching_2col(h, p, k, &limits)?),
                FindCmd::Star { k } => (Pattern::Star { k }, find_mono_star(h, p, k, &limits)?),
                FindCmd::Tree { tree } => {
                    let tree = tree_from(h.r(), tree.shape, tree.k, tree.tree_json.as_deref())?;
                    let w = find_mono_tree(h, p, &tree, &limits)?;
                    (Pattern::Tree { tree }, w)
                }
            };
            validate_witness(h, p, &pattern, &w)?;
            emit(g, &w, || witness_text(h, &w))?;
        }
        Command::Witness { what } => witness(g, what)?,
        Command::Oracle { what } => {
            let f = g.read()?;
            let h = &f.hypergraph;
            match what {
                OracleCmd::Mono { pattern } => {
                    let p = f.partition.as_ref().ok_or_else(|| Error::input("input needs a `colors` block"))?;
                    let pattern = pattern_from(h.r(), &pattern)?;
                    let w = oracle_has_mono(h, p, &pattern)?;
                    emit(g, &w, || match &w {
                        Some(w) => format!("found\n{}", witness_text(h, w)),
                        None => "none\n".to_string(),
                    })?;
                }
                OracleCmd::Avoid { pattern, t } => {
                    let pattern = pattern_from(h.r(), &pattern)?;
                    let p = oracle_exists_avoiding_partition(h, &pattern, t, &g.limits())?;
                    let out = p.map(|p| HypergraphFile { hypergraph: h.clone(), partition: Some(p), coloring: None });
                    emit(g, &out, || match &out {
                        Some(f) => f.to_text(),
                        None => "none\n".to_string(),
                    })?;
                }
            }
        }
        Command::Verify { what } => {
            let report = match what {
                VerifyCmd::Thm6 { n_max, timing } => verify_lift_exhaustive(n_max, &g.campaign(timing))?,
                VerifyCmd::Bounds { bound, k, t, shape, corpus, r, n, n_max, hosts, partitions, timing } => {
                    let kind = match bound {
                        BoundArg::Matching => BoundKind::Matching { k, t },
                        BoundArg::Matching2 => BoundKind::Matching2 { k },
                        BoundArg::Star => BoundKind::Star { k, t },
                        BoundArg::Tree => BoundKind::Tree { tree: tree_from(r, shape, k, None)?, t },
                    };
                    let corpus = match corpus {
                        CorpusArg::Exhaustive => Corpus::Exhaustive { r, n },
                        CorpusArg::Random => Corpus::Random { r, n_max, hosts, partitions: partitions as usize },
                        CorpusArg::Fixed => Corpus::Fixed { host: g.read()?.hypergraph, partitions },
                    };
                    verify_bound(&kind, &corpus, &g.campaign(timing))?
                }
            };
            emit(g, &report, || report_text(&report))?;
            if !report.passed() {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Enum { r, n, dedup, count } => {
            let all = enumerate_hypergraphs(r, n)?;
            let stream: Box<dyn Iterator<Item = Hypergraph>> =
                if dedup { Box::new(all.dedup()) } else { Box::new(all) };
            if count {
                say(&format!("{}\n", stream.count()))?;
            } else {
                for h in stream {
                    match g.format {
                        Format::Json => say(&format!("{}\n", serde_json::to_string(&h)?))?,
                        Format::Text => {
                            let edges: Vec<String> = h.edges().iter().map(join).collect();
                            say(&format!("{}\n", edges.join(", ")))?;
                        }
                    }
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn partition_or_igraph(f: &HypergraphFile, limits: &SearchLimits) -> anyhow::Result<EdgePartition> {
    if let Some(p) = &f.partition {
        return Ok(p.clone());
    }
    let (_, c) = chromatic_number_with(&one_intersection_graph(&f.hypergraph), limits)?;
    Ok(partition_from_igraph_coloring(&f.hypergraph, &c)?)
}

fn tree_from(r: usize, shape: Shape, k: usize, json: Option<&str>) -> anyhow::Result<TreePattern> {
    if let Some(json) = json {
        return serde_json::from_str(json).map_err(|e| Error::input(format!("tree JSON: {e}")).into());
    }
    Ok(match shape {
        Shape::Path => TreePattern::path(r, k)?,
        Shape::Star => TreePattern::star(r, k)?,
    })
}

fn pattern_from(r: usize, a: &PatternArgs) -> anyhow::Result<Pattern> {
    Ok(match a.pattern {
        PatternArg::Matching => Pattern::Matching { k: a.k },
        PatternArg::Star => Pattern::Star { k: a.k },
        PatternArg::Tree => Pattern::Tree { tree: tree_from(r, a.shape, a.k, a.tree_json.as_deref())? },
    })
}

fn witness_text(h: &Hypergraph, w: &MonoWitness) -> String {
    let mut s = format!("class {}\n", w.class_index);
    if let Some(c) = w.center {
        writeln!(s, "center {c}").unwrap();
    }
    if let Some(map) = &w.embedding {
        writeln!(s, "embedding {}", join(map)).unwrap();
    }
    for &e in &w.edge_indices {
        writeln!(s, "edge {e}: {}", join(h.edge(e))).unwrap();
    }
    s
}

fn report_text(r: &CampaignReport) -> String {
    let mut s =
        format!("campaign {}\nseed {}\ninstances {}\nfailures {}\n", r.campaign, r.seed, r.instances, r.failures.len());
    for (k, v) in &r.tallies {
        writeln!(s, "tally {k} {v}").unwrap();
    }
    if let Some(ms) = r.elapsed_ms {
        writeln!(s, "elapsed_ms {ms}").unwrap();
    }
    for f in &r.failures {
        writeln!(s, "failure {}: {}", f.instance, f.message).unwrap();
    }
    s
}

fn witness(g: &Global, what: WitnessCmd) -> anyhow::Result<()> {
    let limits = g.limits();
    match what {
        WitnessCmd::MatchingExtremal { r, k, t } => {
            let (h, p) = gen_matching_extremal(r, k, t)?;
            let f = HypergraphFile { hypergraph: h, partition: Some(p), coloring: None };
            emit(g, &f, || f.to_text())
        }
        WitnessCmd::Star { r, k } => {
            let h = gen_star_witness(r, k)?;
            let f = HypergraphFile::new(h);
            emit(g, &f, || f.to_text())
        }
        WitnessCmd::TwoFactor { k } => {
            let (h, p) = gen_two_factor_split(k)?;
            let f = HypergraphFile { hypergraph: h, partition: Some(p), coloring: None };
            emit(g, &f, || f.to_text())
        }
        WitnessCmd::Lower { kind, r, k, t, n } => {
            let kind = match kind {
                LowerArg::Matching => LowerKind::Matching { r, k, t },
                LowerArg::Star => LowerKind::Star { r, k },
                LowerArg::TwoFactor => LowerKind::TwoFactor { k },
                LowerArg::StarPairs => LowerKind::StarPairs { r, n, t },
            };
            let w = assemble_lower_witness(&kind, &limits)?;
            if oracle_has_mono(&w.host, &w.partition, &w.pattern)?.is_some() {
                bail!(Error::invariant("generated coloring contains the pattern"));
            }
            // the claimed chromatic number is the exact one
            let below = find_coloring(&w.host, w.chi.saturating_sub(1), &limits)?;
            if below.is_some() {
                return Err(anyhow!(Error::invariant("host chromatic number is below the claim")));
            }
            emit(g, &w, || {
                let f =
                    HypergraphFile { hypergraph: w.host.clone(), partition: Some(w.partition.clone()), coloring: None };
                format!("# chi {} lower bound {}\n{}", w.chi, w.lower_bound, f.to_text())
            })
        }
    }
}
