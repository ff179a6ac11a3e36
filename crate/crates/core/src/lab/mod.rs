//! Seeded experiment drivers.
//!
//! An [`ExperimentSpec`] fully determines a run for a given crate version.
//! Every output starts with `#` header lines carrying the SHA-256 of the
//! spec's JSON form, the seed, the generator and the crate version, so two
//! runs of the same spec produce byte-identical files (wall-clock timings
//! are only written when a spec asks for them).

mod audit;
pub mod golden;
mod ladder;
mod oracle;
mod sweep;

pub use audit::{run_property_audit, AuditOutcome, AuditRow};
pub use ladder::{ladder_thresholds, run_level_ladder_audit, LadderColouring, LadderReport, LadderSpec};
pub use oracle::{run_oracle_corpus, OracleFailure, OracleReport, OracleSpec, Tally};
pub use sweep::{run_adversarial_sweep, success_rates, SweepRow};

use crate::coverability::{check_cover_family, CoverFamily, CoverMode};
use crate::error::{Error, Result};
use crate::hypergraph::{fixtures, Edge, PartiteHypergraph};
use crate::io::parse_hypergraph;
use crate::{rng, VERSION};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    AdversarialSweep,
    PropertyAudit,
    OracleCorpus,
    LevelLadder,
}

/// `p = coefficient · (ln n / n)^(1 / exponent)`, clamped to `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PRule {
    pub exponent: u32,
    pub coefficients: Vec<f64>,
    /// Also run `p = 0` and `p = 1`.
    #[serde(default)]
    pub controls: bool,
    /// Literal values of `p`, run after the coefficients.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fixed: Vec<f64>,
}

impl PRule {
    pub fn p(&self, n: usize, coefficient: f64) -> f64 {
        if n < 2 {
            return coefficient.clamp(0.0, 1.0);
        }
        let x = (n as f64).ln() / n as f64;
        (coefficient * x.powf(1.0 / self.exponent as f64)).clamp(0.0, 1.0)
    }

    /// `(label, p)` pairs in run order: the `p = 0` control, the
    /// coefficients, the fixed values, then the `p = 1` control.
    pub fn points(&self, n: usize) -> Vec<(String, f64)> {
        let mut out = Vec::new();
        if self.controls {
            out.push(("p=0".to_string(), 0.0));
        }
        for &c in &self.coefficients {
            out.push((format!("{c}"), self.p(n, c)));
        }
        for &p in &self.fixed {
            out.push((format!("p={p}"), p.clamp(0.0, 1.0)));
        }
        if self.controls {
            out.push(("p=1".to_string(), 1.0));
        }
        out
    }
}

/// A gadget: a hypergraph `H_0` with a pairwise intersecting family of
/// covers for its k-tuples.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GadgetSpec {
    /// `"four-disjoint"` selects four disjoint edges with their fixed covers.
    #[serde(default)]
    pub builtin: Option<String>,
    /// `.hg` text of `H_0`.
    #[serde(default)]
    pub hypergraph: Option<String>,
    /// `.hg` text listing the covers (same part sizes).
    #[serde(default)]
    pub covers: Option<String>,
    pub k: usize,
}

#[derive(Clone, Debug)]
pub struct Gadget {
    pub hypergraph: PartiteHypergraph,
    pub covers: Vec<Edge>,
    pub k: usize,
}

impl GadgetSpec {
    /// Loads and certifies the gadget (the covers must form an intersecting
    /// k-cover family in augmented mode).
    pub fn resolve(&self) -> Result<Gadget> {
        let (hypergraph, covers) = match (&self.builtin, &self.hypergraph, &self.covers) {
            (Some(name), None, None) if name == "four-disjoint" => {
                (fixtures::four_disjoint_edges(), fixtures::four_disjoint_covers())
            }
            (Some(name), _, _) => return Err(Error::Invalid(format!("unknown builtin gadget {name:?}"))),
            (None, Some(h), Some(c)) => (parse_hypergraph(h)?, parse_hypergraph(c)?.edges().to_vec()),
            _ => return Err(Error::Invalid("gadget needs `builtin` or both `hypergraph` and `covers`".into())),
        };
        let cf = CoverFamily { host: hypergraph.clone(), k: self.k, family: covers.clone(), mode: CoverMode::Augmented };
        if let Some(v) = check_cover_family(&cf)?.rejection() {
            return Err(Error::PreconditionViolated(format!("gadget covers are not an intersecting k-cover family: {v:?}")));
        }
        Ok(Gadget { hypergraph, covers, k: self.k })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    pub seed: u64,
    #[serde(default)]
    pub n: Vec<usize>,
    #[serde(default)]
    pub p_rule: Option<PRule>,
    #[serde(default)]
    pub trials: usize,
    #[serde(default)]
    pub gadget: Option<GadgetSpec>,
    /// Work cap for each independent-set search.
    #[serde(default)]
    pub budget: Option<u64>,
    /// Write wall-clock times (makes the output non-reproducible).
    #[serde(default)]
    pub record_time: bool,
    #[serde(default)]
    pub oracle: Option<OracleSpec>,
    #[serde(default)]
    pub ladder: Option<LadderSpec>,
    /// Constant for the audited properties (`C` in `C ln n / p`).
    #[serde(default)]
    pub constant: Option<f64>,
    #[serde(default)]
    pub output: Option<String>,
}

impl ExperimentSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Hex SHA-256 of the compact JSON serialization.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("spec serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    /// `#`-prefixed provenance lines.
    pub fn header(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# spec_sha256: {}\n", self.hash()));
        out.push_str(&format!("# seed: {}\n", self.seed));
        out.push_str(&format!("# generator: {}\n", rng::GENERATOR));
        out.push_str(&format!("# version: monocover {VERSION}\n"));
        if let Some(rule) = &self.p_rule {
            out.push_str(&format!(
                "# p_rule: coefficient * (ln n / n)^(1/{}), coefficients {:?}, fixed {:?}, controls {}\n",
                rule.exponent, rule.coefficients, rule.fixed, rule.controls
            ));
        }
        out
    }

    fn require(&self, kind: ExperimentKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::Invalid(format!("spec kind is {:?}, expected {kind:?}", self.kind)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_rule_points() {
        let rule = PRule { exponent: 4, coefficients: vec![0.5, 4.0], controls: true, fixed: vec![] };
        let pts = rule.points(1024);
        assert_eq!(pts.len(), 4);
        assert_eq!(pts[0].1, 0.0);
        assert_eq!(pts[3].1, 1.0);
        let base = ((1024f64).ln() / 1024.0).powf(0.25);
        assert!((pts[1].1 - 0.5 * base).abs() < 1e-12);
        assert_eq!(pts[2].1, 1.0);
    }

    #[test]
    fn builtin_gadget_is_certified() {
        let g = GadgetSpec { builtin: Some("four-disjoint".into()), k: 3, ..Default::default() }.resolve().unwrap();
        assert_eq!(g.hypergraph.edge_count(), 4);
        assert!(GadgetSpec { builtin: Some("four-disjoint".into()), k: 4, ..Default::default() }.resolve().is_err());
    }

    #[test]
    fn hash_is_stable() {
        let text = r#"{"kind":"adversarial-sweep","seed":7}"#;
        let a = ExperimentSpec::from_json(text).unwrap();
        assert_eq!(a.hash(), ExperimentSpec::from_json(text).unwrap().hash());
        assert_eq!(a.hash().len(), 64);
    }
}
