//! Intersecting k-covers, represented by the family of chosen covers.
//!
//! A map `φ` sending every k-tuple of edges to a covering edge exists with
//! pairwise intersecting values exactly when some pairwise intersecting
//! family `S` covers every k-tuple: the image of such a `φ` is one, and
//! conversely `φ(T) =` first member of `S` covering `T` works.

use super::{subsets, Verdict};
use crate::error::{Error, Result};
use crate::hypergraph::{edge_label, edges_intersect, Edge, PartiteHypergraph};
use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoverMode {
    /// Covers must be edges of the host.
    Strict,
    /// Covers may be any transversals of the host's parts; adding them to
    /// the host does not lower its cover number.
    Augmented,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverFamily {
    pub host: PartiteHypergraph,
    pub k: usize,
    pub family: Vec<Edge>,
    pub mode: CoverMode,
}

impl CoverFamily {
    /// `φ(T)` for a tuple of host edge indices.
    pub fn phi(&self, tuple: &[usize]) -> Option<&Edge> {
        self.family.iter().find(|f| tuple.iter().all(|&i| edges_intersect(f, &self.host.edges()[i])))
    }

    /// The host with every family member added as an edge.
    pub fn augmented_host(&self) -> PartiteHypergraph {
        self.host.with_added_edges(self.family.iter().cloned()).expect("members are transversals of the host")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyViolation {
    /// Member index that is not a transversal of the host's parts.
    NotTransversal(usize),
    /// Member index that is not a host edge (strict mode).
    NotAnEdge(usize),
    /// Two members sharing no vertex.
    Disjoint(usize, usize),
    /// Host edge indices of a tuple no member covers.
    Uncovered(Vec<usize>),
}

/// Checks that the family is pairwise intersecting, lies in the allowed pool
/// and covers every k-tuple of host edges.
pub fn check_cover_family(cf: &CoverFamily) -> Result<Verdict<FamilyViolation>> {
    if cf.k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    let h = &cf.host;
    for (a, f) in cf.family.iter().enumerate() {
        if f.len() != h.r() || f.iter().zip(h.part_sizes()).any(|(&x, &s)| x >= s) {
            return Ok(Verdict::Rejected(FamilyViolation::NotTransversal(a)));
        }
        if cf.mode == CoverMode::Strict && !h.contains_edge(f) {
            return Ok(Verdict::Rejected(FamilyViolation::NotAnEdge(a)));
        }
    }
    for a in 0..cf.family.len() {
        for b in a + 1..cf.family.len() {
            if !edges_intersect(&cf.family[a], &cf.family[b]) {
                return Ok(Verdict::Rejected(FamilyViolation::Disjoint(a, b)));
            }
        }
    }
    let m = h.edge_count();
    if m > 0 {
        for tuple in subsets(m, cf.k.min(m)) {
            if cf.phi(&tuple).is_none() {
                return Ok(Verdict::Rejected(FamilyViolation::Uncovered(tuple)));
            }
        }
    }
    Ok(Verdict::Accepted)
}

/// Candidate covers: host edges (strict), or every transversal over the
/// vertices used by host edges plus one unused vertex per part (augmented).
/// A second unused vertex in a part is never needed: merging unused vertices
/// only creates intersections. Returns the pool and the possibly enlarged
/// part sizes.
fn pool(h: &PartiteHypergraph, mode: CoverMode) -> (Vec<Edge>, Vec<usize>) {
    match mode {
        CoverMode::Strict => (h.edges().to_vec(), h.part_sizes().to_vec()),
        CoverMode::Augmented => {
            let r = h.r();
            let mut sizes = h.part_sizes().to_vec();
            let mut choices: Vec<Vec<usize>> = Vec::with_capacity(r);
            for (p, size) in sizes.iter_mut().enumerate() {
                let mut used = vec![false; *size];
                for e in h.edges() {
                    used[e[p]] = true;
                }
                let spare = used.iter().position(|&u| !u).unwrap_or(*size);
                *size = (*size).max(spare + 1);
                let mut c: Vec<usize> = (0..used.len()).filter(|&i| used[i]).collect();
                c.push(spare);
                c.sort_unstable();
                choices.push(c);
            }
            let mut out: Vec<Edge> = vec![Vec::new()];
            for c in &choices {
                out = out.into_iter().flat_map(|e| c.iter().map(move |&x| [e.clone(), vec![x]].concat())).collect();
            }
            (out, sizes)
        }
    }
}

struct FamilySearch {
    covers: Vec<FixedBitSet>,
    meets: Vec<FixedBitSet>,
    nodes: u64,
    budget: Option<u64>,
}

impl FamilySearch {
    fn dfs(&mut self, chosen: &mut Vec<usize>, compatible: &FixedBitSet, done: &[bool]) -> Result<bool> {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                return Err(Error::BudgetExceeded(format!("cover family search visited more than {b} nodes")));
            }
        }
        // most constrained uncovered tuple; fail fast when one has no option
        let mut pick: Option<(usize, usize)> = None;
        for (t, cov) in self.covers.iter().enumerate() {
            if done[t] {
                continue;
            }
            let options = cov.intersection(compatible).count();
            if options == 0 {
                return Ok(false);
            }
            if pick.map_or(true, |(_, best)| options < best) {
                pick = Some((t, options));
            }
        }
        let Some((t, _)) = pick else {
            return Ok(true);
        };
        let options: Vec<usize> = self.covers[t].intersection(compatible).collect();
        let mut allowed = compatible.clone();
        for f in options {
            let mut next = allowed.clone();
            next.intersect_with(&self.meets[f]);
            let now: Vec<bool> = done.iter().enumerate().map(|(u, &d)| d || self.covers[u].contains(f)).collect();
            chosen.push(f);
            if self.dfs(chosen, &next, &now)? {
                return Ok(true);
            }
            chosen.pop();
            // later branches need not revisit families containing f
            allowed.set(f, false);
        }
        Ok(false)
    }
}

/// Finds a pairwise intersecting family covering every k-tuple, or proves
/// that none exists in the given mode. `budget` caps search nodes.
pub fn search_cover_family(
    host: &PartiteHypergraph,
    k: usize,
    mode: CoverMode,
    budget: Option<u64>,
) -> Result<Option<CoverFamily>> {
    if k < host.r() {
        return Err(Error::ArityTooSmall { k, r: host.r() });
    }
    let m = host.edge_count();
    if m == 0 {
        return Ok(Some(CoverFamily { host: host.clone(), k, family: Vec::new(), mode }));
    }
    let (candidates, sizes) = pool(host, mode);
    let tuples = subsets(m, k.min(m));
    let n = candidates.len();
    let covers: Vec<FixedBitSet> = tuples
        .iter()
        .map(|t| {
            let mut set = FixedBitSet::with_capacity(n);
            for (i, f) in candidates.iter().enumerate() {
                if t.iter().all(|&e| edges_intersect(f, &host.edges()[e])) {
                    set.insert(i);
                }
            }
            set
        })
        .collect();
    let meets: Vec<FixedBitSet> = candidates
        .iter()
        .map(|f| {
            let mut set = FixedBitSet::with_capacity(n);
            for (j, g) in candidates.iter().enumerate() {
                if edges_intersect(f, g) {
                    set.insert(j);
                }
            }
            set
        })
        .collect();
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    let mut search = FamilySearch { covers, meets, nodes: 0, budget };
    let mut chosen = Vec::new();
    if !search.dfs(&mut chosen, &all, &vec![false; tuples.len()])? {
        return Ok(None);
    }
    let mut family: Vec<Edge> = chosen.into_iter().map(|i| candidates[i].clone()).collect();
    family.sort();
    let grown = PartiteHypergraph::new(sizes, host.edges().iter().cloned())?;
    let cf = CoverFamily { host: grown, k, family, mode };
    debug_assert!(check_cover_family(&cf)?.is_accepted(), "{}", cf.family.iter().map(|e| edge_label(e)).collect::<Vec<_>>().join(" "));
    Ok(Some(cf))
}
