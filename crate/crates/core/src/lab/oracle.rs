//! Exact cross-checks of the graph/hypergraph correspondence on small random
//! coloured graphs, plus a corpus of edge assignments checked against the
//! exact tree cover solver.

use super::{ExperimentKind, ExperimentSpec};
use crate::adversarial::{build_ed0_from_independent_set, verify_lower_bound, EdgeAssignment};
use crate::auxiliary::{
    build_auxiliary, build_full, collapse_cover, covers_graph_to_hyper, covers_hyper_to_graph, example_graph,
    most_frequent_edge, witness_set,
};
use crate::error::{Error, Result};
use crate::graph::{
    components, find_sparse_independent_set, tree_cover_number, ColouredGraph, Graph, IndependentSetQuery,
    SparseSetOutcome,
};
use crate::hypergraph::{bollobas_bound, fixtures, tau, Edge, PartiteHypergraph};
use crate::io::{format_coloured, format_graph, format_hypergraph};
use crate::{rng, VERSION};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Streams at or above this offset feed the assignment corpus.
const ASSIGNMENT_STREAM: u64 = 1 << 32;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleSpec {
    /// Random coloured graphs.
    pub count: usize,
    pub max_n: usize,
    pub max_r: usize,
    /// Generate edgeless graphs only.
    #[serde(default)]
    pub edgeless: bool,
    /// Add the worked example graph to the corpus.
    #[serde(default)]
    pub include_fixture: bool,
    /// Random edge-assignment instances (each also tries the four-disjoint
    /// gadget on a sparse random graph).
    #[serde(default)]
    pub assignments: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub passed: usize,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleFailure {
    pub instance: String,
    pub check: String,
    pub message: String,
    /// The failing input after greedy edge deletion, in `.cg` or `.g` form.
    pub minimized: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub spec_sha256: String,
    pub seed: u64,
    pub generator: String,
    pub version: String,
    pub instances: usize,
    pub checks: BTreeMap<String, Tally>,
    /// Gadget instances whose preconditions did not hold, by reason.
    pub skipped: BTreeMap<String, usize>,
    pub failures: Vec<OracleFailure>,
}

impl OracleReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty() && self.checks.values().all(|t| t.passed == t.total)
    }

    pub fn tally(&self, check: &str) -> Tally {
        self.checks.get(check).copied().unwrap_or_default()
    }
}

/// A coloured graph with the vertex sets used by the restricted checks.
#[derive(Clone, Debug)]
struct Instance {
    name: String,
    graph: ColouredGraph,
    w: Vec<usize>,
    a: Vec<usize>,
}

type Outcome = (String, std::result::Result<(), String>);

fn random_subset<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    if out.is_empty() {
        out.push(rng.gen_range(0..n));
    }
    out
}

fn random_instance(seed: u64, index: usize, spec: &OracleSpec) -> Result<Instance> {
    let mut rng = rng::stream_rng(seed, index as u64);
    let n = rng.gen_range(1..=spec.max_n);
    let r = rng.gen_range(1..=spec.max_r);
    let density: f64 = rng.gen();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !spec.edgeless && rng.gen_bool(density) {
                edges.push((u, v, rng.gen_range(1..=r)));
            }
        }
    }
    let graph = ColouredGraph::new(n, r, edges)?;
    let w = random_subset(&mut rng, n);
    let a = random_subset(&mut rng, n);
    Ok(Instance { name: format!("random-{index}"), graph, w, a })
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn check_cover_number(g: &ColouredGraph) -> std::result::Result<(), String> {
    let (tc, cover) = tree_cover_number(g);
    let full = build_full(g);
    let (t, cert) = tau(full.hypergraph());
    ensure(tc == t, || format!("tree cover number {tc} but tau {t}"))?;
    ensure(cover.verify(g) && cover.len() == tc, || "solver certificate does not verify".into())?;
    let image = covers_graph_to_hyper(&full, &cover).map_err(|e| e.to_string())?;
    ensure(image.len() <= tc, || "image certificate grew".into())?;
    let back = covers_hyper_to_graph(&full, &cert).map_err(|e| e.to_string())?;
    ensure(back.len() <= t, || "pulled-back cover grew".into())
}

fn check_collapse(g: &ColouredGraph, w: &[usize]) -> std::result::Result<(), String> {
    let full = build_full(g);
    let restricted = build_auxiliary(g, w).map_err(|e| e.to_string())?;
    let (t, cert) = tau(full.hypergraph());
    let (tw, _) = tau(restricted.hypergraph());
    ensure(tw <= t, || format!("restricted tau {tw} exceeds {t}"))?;
    let collapsed = collapse_cover(&full, &restricted, &cert).map_err(|e| e.to_string())?;
    ensure(collapsed.len() <= t, || "collapsed certificate grew".into())
}

fn check_witness(g: &ColouredGraph) -> std::result::Result<(), String> {
    let (s, _) = tau(build_full(g).hypergraph());
    if s == 0 {
        return Ok(());
    }
    let w = witness_set(g, s).map_err(|e| e.to_string())?;
    let bound = bollobas_bound(g.r(), s);
    ensure(w.len() as u64 <= bound, || format!("|W| = {} exceeds {bound}", w.len()))?;
    let restricted = build_auxiliary(g, &w).map_err(|e| e.to_string())?;
    let (tw, _) = tau(restricted.hypergraph());
    ensure(tw >= s, || format!("tau(H(G, W, c)) = {tw} < {s} for W = {w:?}"))
}

fn check_neighbours(g: &ColouredGraph, w: &[usize]) -> std::result::Result<(), String> {
    ensure(build_full(g).neighbours_intersect(), || "adjacent vertices with disjoint edges in H(G, c)".into())?;
    let restricted = build_auxiliary(g, w).map_err(|e| e.to_string())?;
    ensure(restricted.neighbours_intersect(), || format!("adjacent vertices with disjoint edges for W = {w:?}"))
}

fn check_frequent_edge(g: &ColouredGraph, w: &[usize], a: &[usize]) -> std::result::Result<(), String> {
    let restricted = build_auxiliary(g, w).map_err(|e| e.to_string())?;
    let (_, count) = most_frequent_edge(&restricted, a).map_err(|e| e.to_string())?;
    let scale = ((w.len() + 1) as u128).pow(g.r() as u32);
    ensure(count as u128 * scale >= a.len() as u128, || format!("most frequent edge has only {count} of {}", a.len()))
}

fn check_colour_local(g: &ColouredGraph) -> std::result::Result<(), String> {
    let cm = components(g);
    for colour in 1..=g.r() {
        let cut = components(&g.without_colour(colour));
        for other in (1..=g.r()).filter(|&c| c != colour) {
            ensure(cut.parts(other) == cm.parts(other), || {
                format!("removing colour {colour} changed colour {other}")
            })?;
        }
        ensure(cut.count(colour) == g.n(), || format!("colour {colour} still has edges"))?;
    }
    Ok(())
}

type Check = fn(&Instance) -> std::result::Result<(), String>;

const GRAPH_CHECKS: [(&str, Check); 6] = [
    ("a:cover-number", |i| check_cover_number(&i.graph)),
    ("b:collapse", |i| check_collapse(&i.graph, &i.w)),
    ("c:witness", |i| check_witness(&i.graph)),
    ("d:neighbours", |i| check_neighbours(&i.graph, &i.w)),
    ("e:frequent-edge", |i| check_frequent_edge(&i.graph, &i.w, &i.a)),
    ("components:colour-local", |i| check_colour_local(&i.graph)),
];

/// Deletes edges (last first, repeatedly) while `check` keeps failing.
fn minimize(inst: &Instance, check: Check) -> ColouredGraph {
    let mut current = inst.graph.clone();
    loop {
        let edges: Vec<(usize, usize, usize)> = current.coloured_edges().collect();
        let smaller = (0..edges.len()).rev().find_map(|skip| {
            let kept = edges.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &e)| e);
            let g = ColouredGraph::new(current.n(), current.r(), kept).expect("subgraph of a valid graph");
            let candidate = Instance { graph: g, ..inst.clone() };
            check(&candidate).is_err().then_some(candidate.graph)
        });
        match smaller {
            Some(g) => current = g,
            None => return current,
        }
    }
}

fn run_graph_checks(inst: &Instance) -> (Vec<Outcome>, Vec<OracleFailure>) {
    let mut outcomes = Vec::new();
    let mut failures = Vec::new();
    for (name, check) in GRAPH_CHECKS {
        let result = check(inst);
        if let Err(message) = &result {
            failures.push(OracleFailure {
                instance: inst.name.clone(),
                check: name.into(),
                message: message.clone(),
                minimized: format_coloured(&minimize(inst, check)),
            });
        }
        outcomes.push((name.to_string(), result));
    }
    (outcomes, failures)
}

/// A random target, a random map onto it, and a random graph using only
/// pairs whose images intersect.
fn random_assignment(seed: u64, index: usize, max_n: usize) -> Result<(Graph, EdgeAssignment)> {
    let mut rng = rng::stream_rng(seed, ASSIGNMENT_STREAM + index as u64);
    let r = rng.gen_range(2..=3);
    let sizes: Vec<usize> = (0..r).map(|_| rng.gen_range(2..=3)).collect();
    let mut all: Vec<Edge> = vec![Vec::new()];
    for &s in &sizes {
        all = all.into_iter().flat_map(|e| (0..s).map(move |x| [e.clone(), vec![x]].concat())).collect();
    }
    all.shuffle(&mut rng);
    let m = rng.gen_range(1..=5.min(all.len()));
    all.truncate(m);
    all.sort();
    let target = PartiteHypergraph::new(sizes, all)?;
    let n = rng.gen_range(m..=max_n.max(m));
    let mut map: Vec<usize> = (0..n).map(|u| if u < m { u } else { rng.gen_range(0..m) }).collect();
    map.shuffle(&mut rng);
    let ea = EdgeAssignment::new(target, map)?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if crate::hypergraph::edges_intersect(ea.image(u), ea.image(v)) && rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    Ok((Graph::new(n, edges)?, ea))
}

fn check_assignment(g: &Graph, ea: &EdgeAssignment) -> std::result::Result<(), String> {
    let lb = verify_lower_bound(g, ea).map_err(|e| e.to_string())?;
    ensure(lb.achieved >= lb.bound, || format!("achieved {} < bound {}", lb.achieved, lb.bound))
}

enum GadgetOutcome {
    Checked(std::result::Result<(), String>, Graph),
    Skipped(String),
}

fn gadget_instance(seed: u64, index: usize, max_n: usize) -> Result<GadgetOutcome> {
    let mut rng = rng::stream_rng(seed, ASSIGNMENT_STREAM + (1 << 31) + index as u64);
    let h0 = fixtures::four_disjoint_edges();
    let covers = fixtures::four_disjoint_covers();
    let k = 3;
    let n = rng.gen_range(4..=max_n.max(4));
    let p: f64 = rng.gen_range(0.0..0.6);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::new(n, edges)?;
    let query = IndependentSetQuery { size: h0.edge_count(), arity: k + 1, budget: None };
    let set = match find_sparse_independent_set(&g, query)? {
        SparseSetOutcome::Found(s) => s,
        SparseSetOutcome::NotFound { .. } => return Ok(GadgetOutcome::Skipped("no sparse independent set".into())),
    };
    match build_ed0_from_independent_set(&g, &h0, &set, &covers, k) {
        Ok(ea) => {
            let result = check_assignment(&g, &ea).and_then(|()| {
                let (t0, _) = tau(&h0);
                let (tc, _) = tree_cover_number(&crate::adversarial::build_colouring(&g, &ea).map_err(|e| e.to_string())?);
                ensure(tc >= t0, || format!("tree cover number {tc} < tau(H_0) = {t0}"))
            });
            Ok(GadgetOutcome::Checked(result, g))
        }
        Err(Error::PreconditionViolated(msg)) => {
            Ok(GadgetOutcome::Skipped(msg.split(':').next().unwrap_or("precondition").to_string()))
        }
        Err(e) => Err(e),
    }
}

/// Runs the corpus; failures are report content, errors only come from bad
/// spec parameters.
pub fn run_oracle_corpus(spec: &ExperimentSpec) -> Result<OracleReport> {
    spec.require(ExperimentKind::OracleCorpus)?;
    let os = spec.oracle.as_ref().ok_or_else(|| Error::Invalid("oracle corpus needs an `oracle` section".into()))?;
    if os.max_n == 0 || os.max_n > 12 || os.max_r == 0 || os.max_r > 4 {
        return Err(Error::Invalid("oracle corpus needs 1 <= max_n <= 12 and 1 <= max_r <= 4".into()));
    }
    let mut instances: Vec<Instance> =
        (0..os.count).map(|i| random_instance(spec.seed, i, os)).collect::<Result<_>>()?;
    if os.include_fixture {
        let graph = example_graph();
        instances.push(Instance { name: "example".into(), w: (0..4).collect(), a: (0..graph.n()).collect(), graph });
    }

    let graph_results: Vec<(Vec<Outcome>, Vec<OracleFailure>)> = instances.par_iter().map(run_graph_checks).collect();

    let assignment_results: Vec<Result<(Outcome, Option<OracleFailure>)>> = (0..os.assignments)
        .into_par_iter()
        .map(|i| {
            let (g, ea) = random_assignment(spec.seed, i, os.max_n)?;
            let result = check_assignment(&g, &ea);
            let failure = result.as_ref().err().map(|message| OracleFailure {
                instance: format!("assignment-{i}"),
                check: "colouring:lower-bound".into(),
                message: message.clone(),
                minimized: format!("{}--\n{}", format_graph(&g), format_hypergraph(&ea.target)),
            });
            Ok((("colouring:lower-bound".to_string(), result), failure))
        })
        .collect();
    let gadget_results: Vec<Result<GadgetOutcome>> =
        (0..os.assignments).into_par_iter().map(|i| gadget_instance(spec.seed, i, os.max_n)).collect();

    let mut checks: BTreeMap<String, Tally> = BTreeMap::new();
    let mut skipped: BTreeMap<String, usize> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut record = |name: &str, ok: bool| {
        let t = checks.entry(name.to_string()).or_default();
        t.total += 1;
        t.passed += usize::from(ok);
    };
    for (outcomes, fails) in graph_results {
        for (name, result) in outcomes {
            record(&name, result.is_ok());
        }
        failures.extend(fails);
    }
    for item in assignment_results {
        let ((name, result), failure) = item?;
        record(&name, result.is_ok());
        failures.extend(failure);
    }
    for (i, item) in gadget_results.into_iter().enumerate() {
        match item? {
            GadgetOutcome::Checked(result, g) => {
                record("colouring:gadget", result.is_ok());
                if let Err(message) = result {
                    failures.push(OracleFailure {
                        instance: format!("gadget-{i}"),
                        check: "colouring:gadget".into(),
                        message,
                        minimized: format_graph(&g),
                    });
                }
            }
            GadgetOutcome::Skipped(reason) => *skipped.entry(reason).or_default() += 1,
        }
    }
    Ok(OracleReport {
        spec_sha256: spec.hash(),
        seed: spec.seed,
        generator: rng::GENERATOR.into(),
        version: VERSION.into(),
        instances: instances.len() + 2 * os.assignments,
        checks,
        skipped,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(body: &str) -> ExperimentSpec {
        ExperimentSpec::from_json(&format!(r#"{{"kind":"oracle-corpus","seed":5,"oracle":{body}}}"#)).unwrap()
    }

    #[test]
    fn small_corpus_passes() {
        let report =
            run_oracle_corpus(&spec(r#"{"count":30,"max_n":6,"max_r":3,"include_fixture":true,"assignments":10}"#))
                .unwrap();
        assert!(report.all_passed(), "{:?}", report.failures);
        assert_eq!(report.tally("a:cover-number").total, 31);
        assert_eq!(report.tally("colouring:lower-bound").total, 10);
    }

    #[test]
    fn edgeless_corpus_needs_every_vertex() {
        let report = run_oracle_corpus(&spec(r#"{"count":10,"max_n":5,"max_r":2,"edgeless":true}"#)).unwrap();
        assert!(report.all_passed());
        for i in 0..10 {
            let inst = random_instance(5, i, &OracleSpec {
                count: 10,
                max_n: 5,
                max_r: 2,
                edgeless: true,
                include_fixture: false,
                assignments: 0,
            })
            .unwrap();
            assert_eq!(tree_cover_number(&inst.graph).0, inst.graph.n());
        }
    }

    #[test]
    fn minimizer_shrinks_to_a_failing_core() {
        let inst = random_instance(9, 0, &OracleSpec {
            count: 1,
            max_n: 6,
            max_r: 2,
            edgeless: false,
            include_fixture: false,
            assignments: 0,
        })
        .unwrap();
        // a check that fails whenever any edge is present
        let min = minimize(&inst, |i| ensure(i.graph.graph().edge_count() == 0, || "edge".into()));
        assert_eq!(min.graph().edge_count(), usize::from(inst.graph.graph().edge_count() > 0));
    }
}
