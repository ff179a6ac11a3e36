//! Structure of pairwise intersecting 3-partite 3-graphs: a common vertex, a
//! transversal triple meeting every edge twice, or a copy of `H*`.

use crate::error::{Error, Result};
use crate::hypergraph::{edge_label, fixtures, PartiteHypergraph, Vertex};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    /// Least vertex lying in every edge.
    CommonVertex(Vertex),
    /// Least triple `(r, b, g)`, one per part, meeting each edge at least twice.
    TwoOfThree([Vertex; 3]),
    /// `iso[p][i]`: the vertex of part `p` playing `H*`'s vertex `i` there.
    IsomorphicHStar([[usize; 2]; 3]),
}

/// Classifies a pairwise intersecting 3-partite 3-graph, trying the cases in
/// the order common vertex, two-of-three, `H*`.
pub fn classify_intersecting_3graph(h: &PartiteHypergraph) -> Result<Classification> {
    if h.r() != 3 {
        return Err(Error::InfeasibleArity(h.r()));
    }
    if let Some((a, b)) = h.disjoint_pair() {
        return Err(Error::PreconditionViolated(format!(
            "edges {} and {} are disjoint",
            edge_label(&h.edges()[a]),
            edge_label(&h.edges()[b])
        )));
    }
    let edges = h.edges();
    if let Some(v) = h.vertices().find(|v| edges.iter().all(|e| e[v.part] == v.index)) {
        return Ok(Classification::CommonVertex(v));
    }
    let sizes = h.part_sizes();
    for r in 0..sizes[0] {
        for b in 0..sizes[1] {
            for g in 0..sizes[2] {
                let t = [r, b, g];
                if edges.iter().all(|e| (0..3).filter(|&p| e[p] == t[p]).count() >= 2) {
                    return Ok(Classification::TwoOfThree([Vertex::new(0, r), Vertex::new(1, b), Vertex::new(2, g)]));
                }
            }
        }
    }
    if edges.len() == 4 {
        let used: Vec<Vec<usize>> = (0..3)
            .map(|p| {
                let mut v: Vec<usize> = edges.iter().map(|e| e[p]).collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        if used.iter().all(|u| u.len() == 2) {
            let star = fixtures::h_star();
            for flips in 0..8u32 {
                let iso: [[usize; 2]; 3] = std::array::from_fn(|p| {
                    if flips >> p & 1 == 0 {
                        [used[p][0], used[p][1]]
                    } else {
                        [used[p][1], used[p][0]]
                    }
                });
                let mapped = star.edges().iter().map(|e| (0..3).map(|p| iso[p][e[p]]).collect::<Vec<_>>());
                if mapped.into_iter().all(|e| h.contains_edge(&e)) {
                    return Ok(Classification::IsomorphicHStar(iso));
                }
            }
        }
    }
    Err(Error::CounterexampleFound(format!("no case applies to the intersecting 3-graph {h}")))
}
