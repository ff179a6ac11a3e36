use super::Graph;
use crate::error::{Error, Result};
use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

/// Search for an independent set `S`, `|S| = size`, in which no `arity`
/// vertices have a common neighbour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentSetQuery {
    pub size: usize,
    pub arity: usize,
    /// Maximum number of candidate tests; `None` runs to completion.
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SparseSetOutcome {
    Found(Vec<usize>),
    /// `exhausted` is true only when the whole search space was explored,
    /// i.e. no such set exists.
    NotFound { exhausted: bool, work: u64 },
}

impl SparseSetOutcome {
    pub fn found(&self) -> Option<&[usize]> {
        match self {
            SparseSetOutcome::Found(s) => Some(s),
            SparseSetOutcome::NotFound { .. } => None,
        }
    }
}

/// Depth-first search over vertices in ascending order.
///
/// `layers[j]` holds the vertices with at least `j + 1` neighbours in the
/// current set, so a candidate is rejected as soon as one of its neighbours
/// already sees `arity - 1` members.
pub fn find_sparse_independent_set(g: &Graph, query: IndependentSetQuery) -> Result<SparseSetOutcome> {
    if query.size == 0 {
        return Err(Error::Invalid("set size must be at least 1".into()));
    }
    if query.arity < 2 {
        return Err(Error::Invalid("arity must be at least 2".into()));
    }
    let n = g.n();
    let mut search = Search {
        nbr: g.neighbour_sets(),
        n,
        query,
        work: 0,
        chosen: Vec::with_capacity(query.size),
        out_of_budget: false,
    };
    let forbidden = FixedBitSet::with_capacity(n);
    let layers = vec![FixedBitSet::with_capacity(n); query.arity - 1];
    if search.dfs(0, &forbidden, &layers) {
        return Ok(SparseSetOutcome::Found(search.chosen));
    }
    Ok(SparseSetOutcome::NotFound { exhausted: !search.out_of_budget, work: search.work })
}

struct Search {
    nbr: Vec<FixedBitSet>,
    n: usize,
    query: IndependentSetQuery,
    work: u64,
    chosen: Vec<usize>,
    out_of_budget: bool,
}

impl Search {
    fn dfs(&mut self, start: usize, forbidden: &FixedBitSet, layers: &[FixedBitSet]) -> bool {
        if self.chosen.len() == self.query.size {
            return true;
        }
        let needed = self.query.size - self.chosen.len();
        let saturated = &layers[layers.len() - 1];
        for v in start..self.n {
            if self.n - v < needed {
                break;
            }
            if forbidden.contains(v) {
                continue;
            }
            self.work += 1;
            if let Some(limit) = self.query.budget {
                if self.work > limit {
                    self.out_of_budget = true;
                    return false;
                }
            }
            if !self.nbr[v].is_disjoint(saturated) {
                continue;
            }
            let mut next_forbidden = forbidden.clone();
            next_forbidden.union_with(&self.nbr[v]);
            next_forbidden.insert(v);
            let mut next_layers = layers.to_vec();
            for j in (1..next_layers.len()).rev() {
                let mut promoted = next_layers[j - 1].clone();
                promoted.intersect_with(&self.nbr[v]);
                next_layers[j].union_with(&promoted);
            }
            next_layers[0].union_with(&self.nbr[v]);
            self.chosen.push(v);
            if self.dfs(v + 1, &next_forbidden, &next_layers) {
                return true;
            }
            self.chosen.pop();
            if self.out_of_budget {
                return false;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn query(size: usize, arity: usize) -> IndependentSetQuery {
        IndependentSetQuery { size, arity, budget: None }
    }

    #[test]
    fn edgeless_graph_gives_first_vertices() {
        let g = Graph::empty(6);
        let out = find_sparse_independent_set(&g, query(4, 4)).unwrap();
        assert_eq!(out, SparseSetOutcome::Found(vec![0, 1, 2, 3]));
    }

    #[test]
    fn star_leaves_share_the_centre() {
        let g = Graph::new(6, (1..6).map(|v| (0, v))).unwrap();
        let out = find_sparse_independent_set(&g, query(4, 4)).unwrap();
        assert!(matches!(out, SparseSetOutcome::NotFound { exhausted: true, .. }));
        // three leaves are fine: no four of them exist to share the centre
        let out = find_sparse_independent_set(&g, query(3, 4)).unwrap();
        assert_eq!(out, SparseSetOutcome::Found(vec![1, 2, 3]));
    }

    #[test]
    fn complete_graph_has_no_independent_pair() {
        let g = Graph::complete(4);
        for k in 2..5 {
            let out = find_sparse_independent_set(&g, query(2, k)).unwrap();
            assert!(matches!(out, SparseSetOutcome::NotFound { exhausted: true, .. }));
        }
    }

    #[test]
    fn budget_cut_is_not_exhaustive() {
        let g = Graph::new(6, (1..6).map(|v| (0, v))).unwrap();
        let q = IndependentSetQuery { size: 4, arity: 4, budget: Some(2) };
        let out = find_sparse_independent_set(&g, q).unwrap();
        assert!(matches!(out, SparseSetOutcome::NotFound { exhausted: false, .. }));
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = Graph::empty(3);
        assert!(find_sparse_independent_set(&g, query(0, 2)).is_err());
        assert!(find_sparse_independent_set(&g, query(2, 1)).is_err());
    }
}
