//! (k, m)-coverable chains `H_0 ⊇ H_1 ⊇ ... ⊇ H_m`.
//!
//! Conditions, for every choice of `k − 1` edges `U` of `H_0`:
//!
//! * P1: some edge of `H_m` meets every edge of `U`;
//! * P2: for `i < m` and every `e ∈ H_i`, some edge of `H_{i+1}` meets every
//!   edge of `U` and `e`;
//! * P3: the edges of `H_m` pairwise intersect.
//!
//! # Search
//!
//! For `X ⊆ E(H_0)` let `A(X)` be the edges `e` such that every `U` has a
//! member of `X` meeting `U` and `e`. P2 at level `i` says exactly
//! `H_{i+1} ⊆ H_i ⊆ A(H_{i+1})`. `A` is monotone, so given `S = H_m` with
//! `S ⊆ A(S)` the largest admissible levels are `H_{m−j} = A^j(S)`, an
//! increasing sequence. Hence `H_0` is (k, m)-coverable iff some pairwise
//! intersecting `S` satisfies P1, `S ⊆ A(S)` and `A^m(S) = E(H_0)`. The
//! sequence stabilizes after at most `|E(H_0)|` strict steps, and a repeated
//! level can always be dropped (its two copies impose the same conditions as
//! one), so `m ≤ |E(H_0)|` loses nothing.
//!
//! The search runs over pairwise intersecting `S` in lexicographic order. At
//! a node with chosen set `S` and remaining candidates `R`, any completion
//! `S'` satisfies `S' ⊆ A(S ∪ R)`, meets every P1 requirement only if
//! `S ∪ R` does, and reaches `E(H_0)` only if the inflationary iteration
//! `X ↦ X ∪ A(X)` from `S ∪ R` does; each of these prunes the subtree.

use super::{subsets, Verdict};
use crate::auxiliary::AuxiliaryMap;
use crate::error::{Error, Result};
use crate::hypergraph::{edges_intersect, tau, PartiteHypergraph};
use serde::{Deserialize, Serialize};

/// Largest edge count handled by the chain search (edge sets are `u128`).
pub const MAX_CHAIN_EDGES: usize = 128;

/// Levels are ascending edge-index lists into `host`; `levels[0]` lists
/// every edge and `levels.len() - 1` is `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageChain {
    pub host: PartiteHypergraph,
    pub k: usize,
    pub levels: Vec<Vec<usize>>,
}

impl CoverageChain {
    pub fn m(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn top(&self) -> &[usize] {
        self.levels.last().map_or(&[], |l| l.as_slice())
    }

    /// The same chain with its last level repeated.
    pub fn with_repeated_top(&self) -> CoverageChain {
        let mut levels = self.levels.clone();
        levels.push(self.top().to_vec());
        CoverageChain { host: self.host.clone(), k: self.k, levels }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainViolation {
    /// No edge of `H_m` meets every edge of the tuple.
    P1 { tuple: Vec<usize> },
    /// No edge of `H_{level+1}` meets the tuple and `edge ∈ H_level`.
    P2 { level: usize, tuple: Vec<usize>, edge: usize },
    /// Two disjoint edges in `H_m`.
    P3 { a: usize, b: usize },
}

fn validate_levels(chain: &CoverageChain) -> Result<()> {
    let m = chain.host.edge_count();
    if chain.k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    if chain.levels.len() < 2 {
        return Err(Error::Invalid("a chain needs levels H_0 and H_m with m >= 1".into()));
    }
    if chain.levels[0] != (0..m).collect::<Vec<_>>() {
        return Err(Error::Invalid("level 0 must list every host edge".into()));
    }
    for (i, level) in chain.levels.iter().enumerate() {
        if level.windows(2).any(|w| w[0] >= w[1]) || level.iter().any(|&e| e >= m) {
            return Err(Error::Invalid(format!("level {i} is not an ascending list of edge indices")));
        }
        if i > 0 && !level.iter().all(|e| chain.levels[i - 1].binary_search(e).is_ok()) {
            return Err(Error::Invalid(format!("level {i} is not contained in level {}", i - 1)));
        }
    }
    Ok(())
}

/// Checks P1, P2 and P3 directly on the edge lists.
pub fn check_chain(chain: &CoverageChain) -> Result<Verdict<ChainViolation>> {
    let [p1, p2, p3] = chain_properties(chain)?;
    Ok(match p3.or(p1).or(p2) {
        Some(v) => Verdict::Rejected(v),
        None => Verdict::Accepted,
    })
}

/// The first violation of each of P1, P2 and P3, in that order.
pub fn chain_properties(chain: &CoverageChain) -> Result<[Option<ChainViolation>; 3]> {
    validate_levels(chain)?;
    let edges = chain.host.edges();
    let m = edges.len();
    let top = chain.top();
    let mut p3 = None;
    'outer: for (x, &a) in top.iter().enumerate() {
        for &b in &top[x + 1..] {
            if !edges_intersect(&edges[a], &edges[b]) {
                p3 = Some(ChainViolation::P3 { a, b });
                break 'outer;
            }
        }
    }
    if m == 0 {
        return Ok([None, None, p3]);
    }
    let meets_all = |f: usize, tuple: &[usize]| tuple.iter().all(|&e| edges_intersect(&edges[f], &edges[e]));
    let tuples = subsets(m, (chain.k - 1).min(m));
    let p1 = tuples
        .iter()
        .find(|tuple| !top.iter().any(|&f| meets_all(f, tuple)))
        .map(|tuple| ChainViolation::P1 { tuple: tuple.clone() });
    let p2 = (0..chain.m()).find_map(|level| {
        chain.levels[level].iter().find_map(|&e| {
            tuples
                .iter()
                .find(|tuple| {
                    !chain.levels[level + 1]
                        .iter()
                        .any(|&f| meets_all(f, tuple) && edges_intersect(&edges[f], &edges[e]))
                })
                .map(|tuple| ChainViolation::P2 { level, tuple: tuple.clone(), edge: e })
        })
    });
    Ok([p1, p2, p3])
}

fn mask(bits: impl IntoIterator<Item = usize>) -> u128 {
    bits.into_iter().fold(0, |acc, b| acc | 1 << b)
}

fn members(x: u128) -> Vec<usize> {
    (0..128).filter(|&b| x >> b & 1 == 1).collect()
}

/// Precomputed edge-set algebra for one host and arity.
struct Algebra {
    full: u128,
    /// `meets[e]`: edges sharing a vertex with `e` (including `e`).
    meets: Vec<u128>,
    /// For each `(k − 1)`-subset `U`: the edges meeting every member of `U`.
    covers: Vec<u128>,
}

impl Algebra {
    fn new(h: &PartiteHypergraph, k: usize) -> Self {
        let edges = h.edges();
        let m = edges.len();
        let meets: Vec<u128> = edges.iter().map(|e| mask((0..m).filter(|&j| edges_intersect(e, &edges[j])))).collect();
        let covers = if m == 0 {
            Vec::new()
        } else {
            subsets(m, (k - 1).min(m)).iter().map(|u| u.iter().fold(mask(0..m), |acc, &e| acc & meets[e])).collect()
        };
        Algebra { full: mask(0..m), meets, covers }
    }

    fn a(&self, x: u128) -> u128 {
        let mut out = 0;
        for (e, &n) in self.meets.iter().enumerate() {
            if self.covers.iter().all(|&c| c & n & x != 0) {
                out |= 1 << e;
            }
        }
        out
    }

    fn p1(&self, x: u128) -> bool {
        self.covers.iter().all(|&c| c & x != 0)
    }

    fn reaches_full(&self, mut x: u128) -> bool {
        loop {
            if x == self.full {
                return true;
            }
            let y = x | self.a(x);
            if y == x {
                return false;
            }
            x = y;
        }
    }

    /// Least `j ≥ 1` with `A^j(s) = E`, for `s ⊆ A(s)`.
    fn depth(&self, s: u128) -> Option<usize> {
        let mut x = s;
        let mut j = 0;
        while x != self.full {
            let y = self.a(x);
            if y == x {
                return None;
            }
            x = y;
            j += 1;
        }
        Some(j.max(1))
    }
}

/// Search parameters; `max_m: None` means `|E(H_0)|`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSearch {
    pub max_m: Option<usize>,
    pub budget: Option<u64>,
}

struct ChainDfs<'a> {
    alg: &'a Algebra,
    max_m: usize,
    budget: Option<u64>,
    nodes: u64,
}

impl ChainDfs<'_> {
    fn run(&mut self, s: u128, mut r: u128) -> Result<Option<u128>> {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                return Err(Error::BudgetExceeded(format!("chain search visited more than {b} nodes")));
            }
        }
        loop {
            let upper = self.alg.a(s | r);
            if s & !upper != 0 {
                return Ok(None);
            }
            if r & !upper == 0 {
                break;
            }
            r &= upper;
        }
        if !self.alg.p1(s | r) || !self.alg.reaches_full(s | r) {
            return Ok(None);
        }
        if s != 0 && self.alg.p1(s) && s & !self.alg.a(s) == 0 {
            if let Some(d) = self.alg.depth(s) {
                if d <= self.max_m {
                    return Ok(Some(s));
                }
            }
        }
        let mut rest = r;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let later = r & !((1u128 << e << 1).wrapping_sub(1));
            if let Some(found) = self.run(s | 1 << e, later & self.alg.meets[e])? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}

/// Finds a chain certifying (k, m)-coverability for some `m ≤ max_m`, or
/// proves there is none.
pub fn search_chain(h0: &PartiteHypergraph, k: usize, opts: ChainSearch) -> Result<Option<CoverageChain>> {
    if k < h0.r() {
        return Err(Error::ArityTooSmall { k, r: h0.r() });
    }
    let m = h0.edge_count();
    if m > MAX_CHAIN_EDGES {
        return Err(Error::BudgetExceeded(format!("{m} edges exceed the chain search limit {MAX_CHAIN_EDGES}")));
    }
    if m == 0 {
        return Ok(Some(CoverageChain { host: h0.clone(), k, levels: vec![Vec::new(), Vec::new()] }));
    }
    let alg = Algebra::new(h0, k);
    let max_m = opts.max_m.unwrap_or(m).max(1);
    let mut dfs = ChainDfs { alg: &alg, max_m, budget: opts.budget, nodes: 0 };
    let Some(s) = dfs.run(0, alg.full)? else {
        return Ok(None);
    };
    let depth = alg.depth(s).expect("accepted top level reaches every edge");
    let mut levels = vec![members(s)];
    let mut x = s;
    for _ in 0..depth {
        x = alg.a(x);
        levels.push(members(x));
    }
    // levels were built from the top down
    levels.reverse();
    levels[0] = (0..m).collect();
    let chain = CoverageChain { host: h0.clone(), k, levels };
    debug_assert!(check_chain(&chain)?.is_accepted());
    Ok(Some(chain))
}

/// For an accepted chain with `k = r`: a maximal matching of `H_0` of size at
/// most `r` that contains the first edge of `H_m`, built as in the bound
/// `τ(H_0) ≤ r²`. Returns ascending edge indices.
pub fn top_edge_matching(chain: &CoverageChain) -> Result<Vec<usize>> {
    let h = &chain.host;
    let r = h.r();
    if chain.k != r {
        return Err(Error::PreconditionViolated(format!("matching step needs k = r, got k = {}", chain.k)));
    }
    let edges = h.edges();
    let Some(&e) = chain.top().first() else {
        return Ok(Vec::new());
    };
    let mut matching = vec![e];
    if let Some(level) = (0..=chain.m()).rev().find(|&i| chain.levels[i].iter().any(|&f| !edges_intersect(&edges[e], &edges[f]))) {
        let f = *chain.levels[level].iter().find(|&&f| !edges_intersect(&edges[e], &edges[f])).expect("level has one");
        matching.push(f);
    }
    for (g, edge) in edges.iter().enumerate() {
        if matching.iter().all(|&x| !edges_intersect(&edges[x], edge)) {
            matching.push(g);
        }
    }
    matching.sort_unstable();
    if matching.len() > r {
        return Err(Error::CounterexampleFound(format!(
            "maximal matching of size {} > r = {r} through an accepted chain on {h}",
            matching.len()
        )));
    }
    let (t, _) = tau(h);
    if t > r * matching.len() {
        return Err(Error::CounterexampleFound(format!("cover number {t} exceeds r times the matching size on {h}")));
    }
    Ok(matching)
}

/// The multiplicity-threshold chain: `H_i` keeps the edges of `H(G, W, c)`
/// with at least `thresholds[i - 1]` preimages, together with the verdict on
/// P1 to P3 (which may fail).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LadderChain {
    pub chain: CoverageChain,
    pub thresholds: Vec<usize>,
    /// Preimage count of every edge of `H_0`.
    pub multiplicities: Vec<usize>,
    pub verdict: Verdict<ChainViolation>,
}

/// Builds the threshold ladder `H_i = {e : |ed⁻¹(e)| ≥ n_i}` for the
/// strictly increasing thresholds `n_1 < ... < n_m`.
pub fn build_level_chain(am: &AuxiliaryMap, k: usize, thresholds: &[usize]) -> Result<LadderChain> {
    if thresholds.is_empty() || thresholds.windows(2).any(|w| w[0] >= w[1]) || thresholds[0] == 0 {
        return Err(Error::Invalid("thresholds must be positive and strictly increasing".into()));
    }
    let h = am.hypergraph().clone();
    let mut multiplicities = vec![0; h.edge_count()];
    for u in 0..am.host().n() {
        multiplicities[am.ed_index(u)] += 1;
    }
    let mut levels = vec![(0..h.edge_count()).collect::<Vec<_>>()];
    for &t in thresholds {
        levels.push((0..h.edge_count()).filter(|&e| multiplicities[e] >= t).collect());
    }
    let chain = CoverageChain { host: h, k, levels };
    let verdict = check_chain(&chain)?;
    Ok(LadderChain { chain, thresholds: thresholds.to_vec(), multiplicities, verdict })
}
