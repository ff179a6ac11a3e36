use clap::{Args, Parser, Subcommand, ValueEnum};
use monocover::adversarial::{build_ed0_from_independent_set, verify_lower_bound};
use monocover::auxiliary::{build_auxiliary, build_full};
use monocover::coverability::{
    check_chain, check_cover_family, classify_intersecting_3graph, compute_extremal, refute_4m_coverable,
    search_chain, search_cover_family, ChainSearch, CoverFamily, CoverMode, CoverageChain, ExtremalCaps, Quantity,
};
use monocover::graph::{find_sparse_independent_set, tree_cover_number, IndependentSetQuery, SparseSetOutcome};
use monocover::hypergraph::tau;
use monocover::io::{format_coloured, read_graph, read_hypergraph};
use monocover::lab::{
    run_adversarial_sweep, run_level_ladder_audit, run_oracle_corpus, run_property_audit, ExperimentSpec,
};
use monocover::{Error, Result};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "monocover", version, about = "Monochromatic component covers and partite hypergraph covers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coloured-graph tools.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Colourings built from edge assignments.
    #[command(subcommand)]
    Adversarial(AdversarialCmd),
    /// Cover families, chains and extremal searches.
    #[command(subcommand)]
    Coverability(CoverabilityCmd),
    /// Seeded experiments driven by a JSON spec.
    #[command(subcommand)]
    Lab(LabCmd),
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Exact number of monochromatic components needed to cover a coloured graph.
    Tc {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Dump the auxiliary hypergraph and its vertex/edge maps.
    Aux {
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated witness vertices (default: all vertices).
        #[arg(long, value_delimiter = ',')]
        witness: Option<Vec<usize>>,
    },
}

#[derive(Subcommand)]
enum AdversarialCmd {
    /// Colour a graph from an independent set, a target and a cover family.
    Build {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        covers: PathBuf,
        #[arg(long)]
        k: usize,
        /// Comma-separated independent set (searched for when omitted).
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<usize>>,
        /// Also compute the exact cover number of the colouring.
        #[arg(long)]
        verify: bool,
        /// Write the coloured graph here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Augmented,
}

impl From<ModeArg> for CoverMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Strict => CoverMode::Strict,
            ModeArg::Augmented => CoverMode::Augmented,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantityArg {
    /// hi_r(k)
    #[value(name = "hi")]
    SmallHi,
    /// Hi_r(k), or hi_r(k, m) with --m
    #[value(name = "Hi")]
    BigHi,
    /// kc_r(t)
    #[value(name = "kc")]
    Kc,
}

#[derive(Args)]
struct Caps {
    #[arg(long)]
    max_part: usize,
    #[arg(long)]
    max_edges: Option<usize>,
    #[arg(long)]
    budget: Option<u64>,
}

impl Caps {
    fn caps(&self) -> ExtremalCaps {
        ExtremalCaps { budget: self.budget, ..ExtremalCaps::new(self.max_part, self.max_edges) }
    }
}

#[derive(Subcommand)]
enum CoverabilityCmd {
    /// Check that a family is an intersecting k-cover family of a hypergraph.
    CheckKcovers {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        covers: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "augmented")]
        mode: ModeArg,
    },
    /// Search for an intersecting k-cover family.
    SearchKcovers {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "augmented")]
        mode: ModeArg,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check a chain given as one line of 1-based edge numbers per level (after H_0).
    CheckChain {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        levels: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Search for a (k, m)-coverable chain.
    SearchChain {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_m: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Classify a pairwise intersecting 3-partite 3-graph.
    Classify3 {
        #[arg(long)]
        hypergraph: PathBuf,
    },
    /// Bounded computation of hi, Hi or kc.
    Extremal {
        #[arg(long, value_enum)]
        quantity: QuantityArg,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        k_max: Option<usize>,
        #[command(flatten)]
        caps: Caps,
    },
    /// Look for a (4, m)-coverable 3-graph with cover number at least 4.
    Refute {
        #[command(flatten)]
        caps: Caps,
    },
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Output file (default: the spec's `output`, else stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum LabCmd {
    /// Adversarial colouring sweep over n, p and trials (CSV).
    Sweep(SpecArgs),
    /// Exact oracle corpus (JSON).
    Oracle(SpecArgs),
    /// Multiplicity ladder on a sampled graph (JSON).
    Ladder(SpecArgs),
    /// Random-graph property audit (JSON).
    Audit(SpecArgs),
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn need(name: &str, v: Option<usize>) -> Result<usize> {
    v.ok_or_else(|| Error::Invalid(format!("--{name} is required for this quantity")))
}

fn graph_cmd(cmd: GraphCmd) -> Result<String> {
    match cmd {
        GraphCmd::Tc { graph } => {
            let g = read_graph(&graph)?.into_coloured()?;
            let (tc, cover) = tree_cover_number(&g);
            Ok(pretty(&json!({ "tree_cover_number": tc, "cover": cover })))
        }
        GraphCmd::Aux { graph, witness } => {
            let g = read_graph(&graph)?.into_coloured()?;
            let am = match witness {
                Some(w) => build_auxiliary(&g, &w)?,
                None => build_full(&g),
            };
            let (t, cert) = tau(am.hypergraph());
            Ok(pretty(&json!({ "tau": t, "cover": cert.vertices, "map": am.dump() })))
        }
    }
}

fn adversarial_cmd(cmd: AdversarialCmd) -> Result<String> {
    let AdversarialCmd::Build { graph, hypergraph, covers, k, set, verify, out } = cmd;
    let g = read_graph(&graph)?.graph;
    let h0 = read_hypergraph(&hypergraph)?;
    let covers = read_hypergraph(&covers)?.edges().to_vec();
    let set = match set {
        Some(s) => s,
        None => {
            let query = IndependentSetQuery { size: h0.edge_count(), arity: k + 1, budget: None };
            match find_sparse_independent_set(&g, query)? {
                SparseSetOutcome::Found(s) => s,
                SparseSetOutcome::NotFound { .. } => {
                    return Err(Error::PreconditionViolated("no suitable independent set".into()))
                }
            }
        }
    };
    let ea = build_ed0_from_independent_set(&g, &h0, &set, &covers, k)?;
    let coloured = monocover::adversarial::build_colouring(&g, &ea)?;
    monocover::adversarial::check_refinement(&coloured, &ea)?;
    let (bound, _) = tau(&ea.target);
    let mut report = json!({ "independent_set": set, "bound": bound, "assignment": ea.map });
    if verify {
        let lb = verify_lower_bound(&g, &ea)?;
        report["achieved"] = json!(lb.achieved);
        report["cover"] = json!(lb.cover);
    }
    if let Some(path) = out {
        std::fs::write(path, format_coloured(&coloured))?;
    }
    Ok(pretty(&report))
}

fn parse_levels(text: &str, edges: usize) -> Result<Vec<Vec<usize>>> {
    let mut levels = vec![(0..edges).collect::<Vec<_>>()];
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut level = body
            .split_whitespace()
            .map(|t| match t.parse::<usize>() {
                Ok(x) if x >= 1 => Ok(x - 1),
                _ => Err(Error::Parse { line: i + 1, msg: format!("bad edge number {t:?}") }),
            })
            .collect::<Result<Vec<_>>>()?;
        level.sort_unstable();
        levels.push(level);
    }
    Ok(levels)
}

fn coverability_cmd(cmd: CoverabilityCmd) -> Result<String> {
    match cmd {
        CoverabilityCmd::CheckKcovers { hypergraph, covers, k, mode } => {
            let cf = CoverFamily {
                host: read_hypergraph(&hypergraph)?,
                k,
                family: read_hypergraph(&covers)?.edges().to_vec(),
                mode: mode.into(),
            };
            let verdict = check_cover_family(&cf)?;
            Ok(pretty(&json!({ "accepted": verdict.is_accepted(), "violation": verdict.rejection() })))
        }
        CoverabilityCmd::SearchKcovers { hypergraph, k, mode, budget } => {
            let found = search_cover_family(&read_hypergraph(&hypergraph)?, k, mode.into(), budget)?;
            Ok(pretty(&json!({ "found": found.is_some(), "family": found.map(|f| f.family) })))
        }
        CoverabilityCmd::CheckChain { hypergraph, levels, k } => {
            let host = read_hypergraph(&hypergraph)?;
            let levels = parse_levels(&std::fs::read_to_string(levels)?, host.edge_count())?;
            let verdict = check_chain(&CoverageChain { host, k, levels })?;
            Ok(pretty(&json!({ "accepted": verdict.is_accepted(), "violation": verdict.rejection() })))
        }
        CoverabilityCmd::SearchChain { hypergraph, k, max_m, budget } => {
            let found = search_chain(&read_hypergraph(&hypergraph)?, k, ChainSearch { max_m, budget })?;
            Ok(pretty(&json!({ "found": found.is_some(), "m": found.as_ref().map(|c| c.m()), "levels": found.map(|c| c.levels) })))
        }
        CoverabilityCmd::Classify3 { hypergraph } => {
            Ok(pretty(&classify_intersecting_3graph(&read_hypergraph(&hypergraph)?)?))
        }
        CoverabilityCmd::Extremal { quantity, r, k, m, t, k_max, caps } => {
            let q = match quantity {
                QuantityArg::SmallHi => Quantity::SmallHi { k: need("k", k)? },
                QuantityArg::BigHi => Quantity::BigHi { k: need("k", k)?, m },
                QuantityArg::Kc => Quantity::Kc { t: need("t", t)?, k_max: need("k-max", k_max)? },
            };
            Ok(pretty(&compute_extremal(q, r, caps.caps())?))
        }
        CoverabilityCmd::Refute { caps } => Ok(pretty(&refute_4m_coverable(caps.caps())?)),
    }
}

fn lab_cmd(cmd: LabCmd) -> Result<(String, Option<PathBuf>)> {
    let (args, run): (SpecArgs, fn(&ExperimentSpec) -> Result<String>) = match cmd {
        LabCmd::Sweep(a) => (a, |s| Ok(run_adversarial_sweep(s)?.1)),
        LabCmd::Oracle(a) => (a, |s| Ok(s.header() + &pretty(&run_oracle_corpus(s)?))),
        LabCmd::Ladder(a) => (a, |s| Ok(pretty(&run_level_ladder_audit(s)?))),
        LabCmd::Audit(a) => (a, |s| Ok(pretty(&run_property_audit(s)?))),
    };
    let spec = ExperimentSpec::load(&args.spec)?;
    let text = run(&spec)?;
    let out = args.out.or_else(|| spec.output.as_ref().map(|o| resolve(&args.spec, o)));
    Ok((text, out))
}

/// Spec-relative output paths are resolved against the spec's directory.
fn resolve(spec: &Path, output: &str) -> PathBuf {
    let p = Path::new(output);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        spec.parent().unwrap_or(Path::new(".")).join(p)
    }
}

fn run(cli: Cli) -> Result<()> {
    let (text, out) = match cli.command {
        Command::Graph(c) => (graph_cmd(c)?, None),
        Command::Adversarial(c) => (adversarial_cmd(c)?, None),
        Command::Coverability(c) => (coverability_cmd(c)?, None),
        Command::Lab(c) => lab_cmd(c)?,
    };
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let detail: Value = json!({ "error": e.to_string() });
            eprintln!("{detail}");
            match e {
                Error::CounterexampleFound(_) => ExitCode::from(3),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
