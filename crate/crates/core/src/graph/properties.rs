//! Audits of the random-graph properties used by the upper-bound argument.
//!
//! Each property quantifies over exponentially many vertex sets. A check is
//! exhaustive when the number of cases is at most
//! [`AuditConfig::exhaustive_limit`]; otherwise it examines
//! [`AuditConfig::samples`] seeded uniform cases and says so in the report.
//! Thresholds use natural logarithms.

use super::Graph;
use crate::rng;
use fixedbitset::FixedBitSet;
use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditConfig {
    pub exhaustive_limit: u64,
    pub samples: u64,
    pub seed: u64,
    /// Witnesses kept in the report; the violation count is always exact.
    pub max_witnesses: usize,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig { exhaustive_limit: 10_000_000, samples: 10_000, seed: 0, max_witnesses: 16 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    /// The vertex sets forming the witness, in the order the property names them.
    pub sets: Vec<Vec<usize>>,
    /// The measured quantity that fell short (set size or neighbourhood size).
    pub observed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub threshold: f64,
    pub exhaustive: bool,
    pub cases_examined: u64,
    pub violations_found: u64,
    pub witnesses: Vec<Violation>,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.violations_found == 0
    }

    fn record(&mut self, limit: usize, v: Violation) {
        self.violations_found += 1;
        if self.witnesses.len() < limit {
            self.witnesses.push(v);
        }
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u128::MAX;
        }
    }
    acc
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order; stops
/// early when `f` returns false.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn closed_neighbourhood(nbr: &[FixedBitSet], set: &[usize], n: usize) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(n);
    for &v in set {
        out.insert(v);
        out.union_with(&nbr[v]);
    }
    out
}

fn sorted_sample(rng: &mut impl Rng, n: usize, k: usize) -> Vec<usize> {
    let mut s = sample(rng, n, k).into_vec();
    s.sort_unstable();
    s
}

/// Any two disjoint sets of at least `10 ln n / p` vertices are joined by an
/// edge.
///
/// It suffices to look at sets `A` of exactly `s = ceil(10 ln n / p)`
/// vertices: a violation exists for `A` iff at least `s` vertices lie outside
/// the closed neighbourhood of `A`, so the partner set `B` need not be
/// enumerated.
pub fn check_crossing_edges(g: &Graph, p: f64, cfg: &AuditConfig) -> PropertyReport {
    let n = g.n();
    let threshold = 10.0 * (n.max(1) as f64).ln() / p;
    let mut report = PropertyReport {
        property: "crossing-edge".into(),
        threshold,
        exhaustive: true,
        cases_examined: 0,
        violations_found: 0,
        witnesses: Vec::new(),
    };
    let s = (threshold.ceil() as usize).max(1);
    if !threshold.is_finite() || 2 * s > n {
        return report;
    }
    let nbr = g.neighbour_sets();
    let examine = |a: &[usize], report: &mut PropertyReport| {
        report.cases_examined += 1;
        let closed = closed_neighbourhood(&nbr, a, n);
        let outside: Vec<usize> = (0..n).filter(|&v| !closed.contains(v)).collect();
        if outside.len() >= s {
            let b = outside[..s].to_vec();
            report.record(cfg.max_witnesses, Violation { sets: vec![a.to_vec(), b], observed: 0 });
        }
    };
    if binomial(n as u64, s as u64) <= cfg.exhaustive_limit as u128 {
        for_each_subset(n, s, |a| {
            examine(a, &mut report);
            true
        });
    } else {
        report.exhaustive = false;
        let mut rng = rng::stream_rng(cfg.seed, 21);
        for _ in 0..cfg.samples {
            let a = sorted_sample(&mut rng, n, s);
            examine(&a, &mut report);
        }
    }
    report
}

/// Any `tuple_size` vertices have at least `(C/2) ln n / p` common
/// neighbours (open neighbourhoods).
pub fn check_common_neighbourhood(
    g: &Graph,
    tuple_size: usize,
    c: f64,
    p: f64,
    cfg: &AuditConfig,
) -> PropertyReport {
    let n = g.n();
    let threshold = c / 2.0 * (n.max(1) as f64).ln() / p;
    let mut report = PropertyReport {
        property: "common-neighbourhood".into(),
        threshold,
        exhaustive: true,
        cases_examined: 0,
        violations_found: 0,
        witnesses: Vec::new(),
    };
    if tuple_size > n {
        return report;
    }
    let nbr = g.neighbour_sets();
    let examine = |t: &[usize], report: &mut PropertyReport| {
        report.cases_examined += 1;
        let mut common = FixedBitSet::with_capacity(n);
        common.insert_range(..);
        for &v in t {
            common.intersect_with(&nbr[v]);
        }
        let size = common.count_ones(..);
        if (size as f64) < threshold {
            report.record(cfg.max_witnesses, Violation { sets: vec![t.to_vec()], observed: size });
        }
    };
    if binomial(n as u64, tuple_size as u64) <= cfg.exhaustive_limit as u128 {
        for_each_subset(n, tuple_size, |t| {
            examine(t, &mut report);
            true
        });
    } else {
        report.exhaustive = false;
        let mut rng = rng::stream_rng(cfg.seed, 22);
        for _ in 0..cfg.samples {
            let t = sorted_sample(&mut rng, n, tuple_size);
            examine(&t, &mut report);
        }
    }
    report
}

/// For every `U` with `1 <= |U| <= 1/p` and any `k - 1` vertices
/// `v_1, ..., v_{k-1}`, the set `N(U) ∩ N({v_1}) ∩ ... ∩ N({v_{k-1}})` of
/// closed neighbourhoods has at least `(C ln n / 6) |U|` vertices.
///
/// Repeated `v_i` only enlarge the intersection, so distinct tuples of size
/// `min(k - 1, n)` are enough.
pub fn check_expanding_neighbourhood(g: &Graph, k: usize, c: f64, p: f64, cfg: &AuditConfig) -> PropertyReport {
    let n = g.n();
    let per_vertex = c * (n.max(1) as f64).ln() / 6.0;
    let mut report = PropertyReport {
        property: "expanding-neighbourhood".into(),
        threshold: per_vertex,
        exhaustive: true,
        cases_examined: 0,
        violations_found: 0,
        witnesses: Vec::new(),
    };
    let max_u = if p > 0.0 { ((1.0 / p).floor() as usize).min(n) } else { n };
    let tuple = k.saturating_sub(1).min(n);
    if n == 0 || max_u == 0 {
        return report;
    }
    let nbr = g.neighbour_sets();
    let examine = |u: &[usize], vs: &[usize], report: &mut PropertyReport| {
        report.cases_examined += 1;
        let mut set = closed_neighbourhood(&nbr, u, n);
        for &v in vs {
            set.intersect_with(&closed_neighbourhood(&nbr, &[v], n));
        }
        let size = set.count_ones(..);
        if (size as f64) < per_vertex * u.len() as f64 {
            report.record(cfg.max_witnesses, Violation { sets: vec![u.to_vec(), vs.to_vec()], observed: size });
        }
    };
    let tuples = binomial(n as u64, tuple as u64);
    let total: u128 = (1..=max_u)
        .map(|size| binomial(n as u64, size as u64).saturating_mul(tuples))
        .fold(0u128, |a, b| a.saturating_add(b));
    if total <= cfg.exhaustive_limit as u128 {
        for size in 1..=max_u {
            for_each_subset(n, size, |u| {
                for_each_subset(n, tuple, |vs| {
                    examine(u, vs, &mut report);
                    true
                });
                true
            });
        }
    } else {
        report.exhaustive = false;
        let mut rng = rng::stream_rng(cfg.seed, 23);
        for _ in 0..cfg.samples {
            let size = rng.gen_range(1..=max_u);
            let u = sorted_sample(&mut rng, n, size);
            let vs = sorted_sample(&mut rng, n, tuple);
            examine(&u, &vs, &mut report);
        }
    }
    report
}
