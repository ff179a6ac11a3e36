//! r-partite r-uniform hypergraphs.

mod cover;
mod critical;
pub mod enumerate;
pub mod fixtures;
mod matching;

pub use cover::{find_cover, has_cover_of_size, tau, tau_at_least};
pub use critical::{bollobas_bound, critical_subgraph};
pub use enumerate::{EnumerationConfig, Enumerator};
pub use matching::{bipartite_max_matching, max_matching, skew_matching};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A vertex: `index` within part `part` (both 0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub part: usize,
    pub index: usize,
}

impl Vertex {
    pub fn new(part: usize, index: usize) -> Self {
        Vertex { part, index }
    }
}

const PART_LETTERS: &[u8] = b"rbgyopcw";

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match PART_LETTERS.get(self.part) {
            Some(&c) => write!(f, "{}{}", c as char, self.index + 1),
            None => write!(f, "p{}.{}", self.part + 1, self.index + 1),
        }
    }
}

/// An edge of an r-partite hypergraph: entry `i` is its vertex in part `i`.
pub type Edge = Vec<usize>;

/// Formats an edge in the `r1b1g2` style.
pub fn edge_label(e: &[usize]) -> String {
    e.iter().enumerate().map(|(part, &index)| Vertex { part, index }.to_string()).collect()
}

/// Whether two transversal edges share a vertex.
pub fn edges_intersect(e: &[usize], f: &[usize]) -> bool {
    e.iter().zip(f).any(|(a, b)| a == b)
}

/// r-partite r-uniform hypergraph with fixed part sizes.
///
/// Edges are transversals stored sorted and without duplicates; vertices that
/// lie in no edge are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartiteHypergraph {
    part_sizes: Vec<usize>,
    edges: Vec<Edge>,
}

impl PartiteHypergraph {
    pub fn new(part_sizes: Vec<usize>, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if part_sizes.is_empty() {
            return Err(Error::Invalid("a hypergraph needs at least one part".into()));
        }
        let r = part_sizes.len();
        let mut list: Vec<Edge> = Vec::new();
        for e in edges {
            if e.len() != r {
                return Err(Error::Invalid(format!("edge {e:?} is not a transversal of {r} parts")));
            }
            if let Some(i) = (0..r).find(|&i| e[i] >= part_sizes[i]) {
                return Err(Error::Invalid(format!(
                    "edge {e:?}: index {} out of range for part {} of size {}",
                    e[i], i, part_sizes[i]
                )));
            }
            list.push(e);
        }
        list.sort();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!("duplicate edge {}", edge_label(&w[0]))));
        }
        Ok(PartiteHypergraph { part_sizes, edges: list })
    }

    /// Edges may repeat; duplicates are merged.
    pub fn from_edges_dedup(part_sizes: Vec<usize>, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut list: Vec<Edge> = edges.into_iter().collect();
        list.sort();
        list.dedup();
        Self::new(part_sizes, list)
    }

    pub fn empty(part_sizes: Vec<usize>) -> Self {
        PartiteHypergraph { part_sizes, edges: Vec::new() }
    }

    pub fn r(&self) -> usize {
        self.part_sizes.len()
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_index(&self, e: &[usize]) -> Option<usize> {
        self.edges.binary_search_by(|x| x.as_slice().cmp(e)).ok()
    }

    pub fn contains_edge(&self, e: &[usize]) -> bool {
        self.edge_index(e).is_some()
    }

    pub fn vertex_count(&self) -> usize {
        self.part_sizes.iter().sum()
    }

    /// All vertices in `(part, index)` order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.part_sizes
            .iter()
            .enumerate()
            .flat_map(|(part, &size)| (0..size).map(move |index| Vertex { part, index }))
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        v.part < self.r() && v.index < self.part_sizes[v.part]
    }

    /// The sub-hypergraph on the same parts keeping the listed edge indices.
    pub fn with_edge_indices(&self, keep: &[usize]) -> PartiteHypergraph {
        let mut edges: Vec<Edge> = keep.iter().map(|&i| self.edges[i].clone()).collect();
        edges.sort();
        edges.dedup();
        PartiteHypergraph { part_sizes: self.part_sizes.clone(), edges }
    }

    /// Adds edges (already-present ones are ignored).
    pub fn with_added_edges(&self, extra: impl IntoIterator<Item = Edge>) -> Result<PartiteHypergraph> {
        Self::from_edges_dedup(self.part_sizes.clone(), self.edges.iter().cloned().chain(extra))
    }

    pub fn is_subgraph_of(&self, other: &PartiteHypergraph) -> bool {
        self.edges.iter().all(|e| other.contains_edge(e))
    }

    /// Whether `cover` meets every edge. Checks the raw edge list directly.
    pub fn is_cover(&self, cover: &[Vertex]) -> bool {
        self.edges.iter().all(|e| cover.iter().any(|v| v.part < e.len() && e[v.part] == v.index))
    }

    /// First pair of disjoint edges (by index), if any.
    pub fn disjoint_pair(&self) -> Option<(usize, usize)> {
        let m = self.edges.len();
        (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .find(|&(i, j)| !edges_intersect(&self.edges[i], &self.edges[j]))
    }

    pub fn is_pairwise_intersecting(&self) -> bool {
        self.disjoint_pair().is_none()
    }

    /// Vertices that lie in at least one edge.
    pub fn covered_vertices(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self
            .edges
            .iter()
            .flat_map(|e| e.iter().enumerate().map(|(part, &index)| Vertex { part, index }))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for PartiteHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.edges.iter().map(|e| edge_label(e)).collect();
        write!(f, "{{{}}}", labels.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verification {
    Unverified,
    Valid,
    Invalid,
}

/// A vertex set claimed to cover a hypergraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub vertices: Vec<Vertex>,
    pub verified: Verification,
}

impl CoverCertificate {
    pub fn new(mut vertices: Vec<Vertex>) -> Self {
        vertices.sort();
        vertices.dedup();
        CoverCertificate { vertices, verified: Verification::Unverified }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Rechecks against `h` and records the outcome.
    pub fn verify(mut self, h: &PartiteHypergraph) -> Self {
        let ok = self.vertices.iter().all(|&v| h.contains_vertex(v)) && h.is_cover(&self.vertices);
        self.verified = if ok { Verification::Valid } else { Verification::Invalid };
        self
    }

    pub fn is_valid(&self) -> bool {
        self.verified == Verification::Valid
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_edges() {
        assert!(PartiteHypergraph::new(vec![2, 2], vec![vec![0, 2]]).is_err());
        assert!(PartiteHypergraph::new(vec![2, 2], vec![vec![0]]).is_err());
        assert!(PartiteHypergraph::new(vec![2, 2], vec![vec![0, 1], vec![0, 1]]).is_err());
        let h = PartiteHypergraph::new(vec![2, 2], vec![vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(h.edges(), &[vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn labels_read_like_colours() {
        assert_eq!(edge_label(&[0, 0, 1]), "r1b1g2");
        assert_eq!(Vertex::new(9, 0).to_string(), "p10.1");
    }

    #[test]
    fn certificate_checks_membership() {
        let h = fixtures::h_star();
        let good = CoverCertificate::new(vec![Vertex::new(0, 0), Vertex::new(0, 1)]).verify(&h);
        assert!(good.is_valid());
        let bad = CoverCertificate::new(vec![Vertex::new(0, 0)]).verify(&h);
        assert_eq!(bad.verified, Verification::Invalid);
        let out_of_range = CoverCertificate::new(vec![Vertex::new(0, 5), Vertex::new(0, 0), Vertex::new(0, 1)]);
        assert!(!out_of_range.verify(&h).is_valid());
    }
}
