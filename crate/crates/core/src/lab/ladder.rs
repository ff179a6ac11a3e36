//! The multiplicity ladder on a sampled, coloured graph.
//!
//! With `L = scale · ln n` and `m` the least integer such that
//! `L^(m−1) ≥ 1/p`, the thresholds are `L^i` for `i ≤ m − 2`, then `1/p`,
//! then `L/p`, each rounded up (and bumped where rounding makes two equal).
//! `H_i` keeps the edges of `H(G, W, c)` with at least `n_i` preimages.

use super::{ExperimentKind, ExperimentSpec};
use crate::auxiliary::{build_auxiliary, build_full, witness_set};
use crate::coverability::{build_level_chain, chain_properties, top_edge_matching, ChainViolation};
use crate::error::{Error, Result};
use crate::graph::{sample_gnp, ColouredGraph, Graph, RandomModel};
use crate::hypergraph::tau;
use crate::io::format_hypergraph;
use crate::{rng, VERSION};
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LadderColouring {
    /// Uniform independent colours.
    #[default]
    Random,
    /// Edges at vertex 0 get colour 1, the rest are uniform.
    Dominant,
    /// Every edge gets colour 1.
    Mono,
}

fn default_scale() -> f64 {
    10.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LadderSpec {
    pub n: usize,
    pub p: f64,
    pub r: usize,
    pub k: usize,
    /// `L = scale · ln n`.
    #[serde(default = "default_scale")]
    pub scale: f64,
    /// Overrides the computed thresholds.
    #[serde(default)]
    pub thresholds: Option<Vec<usize>>,
    #[serde(default)]
    pub colouring: LadderColouring,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LadderReport {
    pub spec_sha256: String,
    pub seed: u64,
    pub generator: String,
    pub version: String,
    pub graph_edges: usize,
    /// `τ(H(G, c))`.
    pub tau_full: usize,
    pub witness: Vec<usize>,
    /// `H(G, W, c)` in `.hg` form.
    pub hypergraph: String,
    pub tau_restricted: usize,
    pub thresholds: Vec<usize>,
    pub multiplicities: Vec<usize>,
    pub level_sizes: Vec<usize>,
    pub p1: Option<ChainViolation>,
    pub p2: Option<ChainViolation>,
    pub p3: Option<ChainViolation>,
    /// Set when every property holds and `k = r`.
    pub matching: Option<Vec<usize>>,
}

impl LadderReport {
    pub fn accepted(&self) -> bool {
        self.p1.is_none() && self.p2.is_none() && self.p3.is_none()
    }
}

/// The default thresholds `n_1 < ... < n_m`.
pub fn ladder_thresholds(n: usize, p: f64, scale: f64) -> Result<Vec<usize>> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::Invalid(format!("ladder needs 0 < p <= 1, got {p}")));
    }
    let l = scale * (n.max(2) as f64).ln();
    if l <= 1.0 {
        return Err(Error::Invalid(format!("scale * ln n = {l} must exceed 1")));
    }
    let mut m: usize = 1;
    while l.powi(m as i32 - 1) < 1.0 / p {
        m += 1;
    }
    let mut raw: Vec<f64> = (1..m.saturating_sub(1)).map(|i| l.powi(i as i32)).collect();
    if m >= 2 {
        raw.push(1.0 / p);
    }
    raw.push(l / p);
    let mut out: Vec<usize> = Vec::with_capacity(raw.len());
    for x in raw {
        let t = (x.ceil() as usize).max(1);
        out.push(match out.last() {
            Some(&prev) if t <= prev => prev + 1,
            _ => t,
        });
    }
    Ok(out)
}

fn colour(g: &Graph, r: usize, scheme: LadderColouring, seed: u64) -> Result<ColouredGraph> {
    let mut rng = rng::stream_rng(rng::derive_seed(seed, 1), 0);
    let colours = g
        .edges()
        .iter()
        .map(|&(u, _)| match scheme {
            LadderColouring::Mono => 1,
            LadderColouring::Dominant if u == 0 => 1,
            _ => rng.gen_range(1..=r),
        })
        .collect();
    ColouredGraph::with_colouring(g.clone(), r, colours)
}

pub fn run_level_ladder_audit(spec: &ExperimentSpec) -> Result<LadderReport> {
    spec.require(ExperimentKind::LevelLadder)?;
    let ls = spec.ladder.as_ref().ok_or_else(|| Error::Invalid("ladder run needs a `ladder` section".into()))?;
    if ls.r == 0 || ls.n == 0 {
        return Err(Error::Invalid("ladder needs n >= 1 and r >= 1".into()));
    }
    let thresholds = match &ls.thresholds {
        Some(t) => t.clone(),
        None => ladder_thresholds(ls.n, ls.p, ls.scale)?,
    };
    let sample = sample_gnp(RandomModel::new(ls.n, ls.p, spec.seed)?);
    let coloured = colour(&sample.graph, ls.r, ls.colouring, spec.seed)?;
    let (tau_full, _) = tau(build_full(&coloured).hypergraph());
    let witness = if tau_full == 0 { vec![0] } else { witness_set(&coloured, tau_full)? };
    let am = build_auxiliary(&coloured, &witness)?;
    let (tau_restricted, _) = tau(am.hypergraph());
    let ladder = build_level_chain(&am, ls.k, &thresholds)?;
    let [p1, p2, p3] = chain_properties(&ladder.chain)?;
    let matching = if p1.is_none() && p2.is_none() && p3.is_none() && ls.k == ls.r {
        Some(top_edge_matching(&ladder.chain)?)
    } else {
        None
    };
    Ok(LadderReport {
        spec_sha256: spec.hash(),
        seed: spec.seed,
        generator: rng::GENERATOR.into(),
        version: VERSION.into(),
        graph_edges: sample.graph.edge_count(),
        tau_full,
        witness,
        hypergraph: format_hypergraph(am.hypergraph()),
        tau_restricted,
        thresholds,
        multiplicities: ladder.multiplicities,
        level_sizes: ladder.chain.levels.iter().map(Vec::len).collect(),
        p1,
        p2,
        p3,
        matching,
    })
}
