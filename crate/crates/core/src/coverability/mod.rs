//! Intersecting k-covers, (k, m)-coverable chains and bounded extremal
//! searches.
//!
//! Throughout, a k-tuple of edges is a multiset. Covering a multiset only
//! depends on its distinct members, and covering a set implies covering
//! each of its subsets, so every check ranges over the subsets of exactly
//! `min(k, |E|)` distinct edges.

mod chain;
mod classify;
mod extremal;
mod family;

pub use chain::{
    build_level_chain, chain_properties, check_chain, top_edge_matching, search_chain, ChainSearch, ChainViolation, CoverageChain,
    LadderChain,
};
pub use classify::{classify_intersecting_3graph, Classification};
pub use extremal::{
    compute_extremal, refute_4m_coverable, ExtremalCaps, ExtremalCertificate, ExtremalReport, Quantity,
};
pub use family::{check_cover_family, search_cover_family, CoverFamily, CoverMode, FamilyViolation};

use serde::{Deserialize, Serialize};

/// Outcome of a structural check: accepted, or rejected with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict<V> {
    Accepted,
    Rejected(V),
}

impl<V> Verdict<V> {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }

    pub fn rejection(&self) -> Option<&V> {
        match self {
            Verdict::Accepted => None,
            Verdict::Rejected(v) => Some(v),
        }
    }
}

/// All `q`-subsets of `0..m` in lexicographic order.
pub(crate) fn subsets(m: usize, q: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if q > m {
        return out;
    }
    let mut idx: Vec<usize> = (0..q).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..q).rev().find(|&i| idx[i] != i + m - q) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..q {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::subsets;

    #[test]
    fn subset_listing() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
    }
}
