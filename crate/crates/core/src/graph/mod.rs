//! Simple graphs, edge colourings and monochromatic components.

mod cover;
mod independent;
pub mod properties;

pub use cover::{min_set_cover, tc_exact, tree_cover_number, ComponentCover, MonoComponent};
pub use independent::{find_sparse_independent_set, IndependentSetQuery, SparseSetOutcome};

use crate::error::{Error, Result};
use crate::rng;
use fixedbitset::FixedBitSet;
use petgraph::unionfind::UnionFind;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Simple undirected graph on vertices `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted and free of duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("edge ({a}, {b}) out of range for n = {n}")));
            }
            if a == b {
                return Err(Error::Invalid(format!("self-loop at vertex {a}")));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!("parallel edge ({}, {})", w[0].0, w[0].1)));
        }
        Ok(Self::from_sorted(n, list))
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_sorted(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Neighbourhoods as bitsets, one per vertex.
    pub fn neighbour_sets(&self) -> Vec<FixedBitSet> {
        self.adj
            .iter()
            .map(|list| {
                let mut set = FixedBitSet::with_capacity(self.n);
                for &w in list {
                    set.insert(w);
                }
                set
            })
            .collect()
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.adjacent(u, v)))
    }
}

/// A graph together with an r-colouring of its edges, colours `1..=r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredGraph {
    graph: Graph,
    r: usize,
    colours: Vec<usize>,
}

impl ColouredGraph {
    /// Builds from `(u, v, colour)` triples.
    pub fn new(n: usize, r: usize, edges: impl IntoIterator<Item = (usize, usize, usize)>) -> Result<Self> {
        let mut triples: Vec<(usize, usize, usize)> =
            edges.into_iter().map(|(a, b, c)| (a.min(b), a.max(b), c)).collect();
        triples.sort_unstable();
        let graph = Graph::new(n, triples.iter().map(|&(u, v, _)| (u, v)))?;
        let colours = triples.iter().map(|&(_, _, c)| c).collect();
        Self::with_colouring(graph, r, colours)
    }

    /// `colours[i]` is the colour of `graph.edges()[i]`.
    pub fn with_colouring(graph: Graph, r: usize, colours: Vec<usize>) -> Result<Self> {
        if r == 0 {
            return Err(Error::Invalid("colour count must be at least 1".into()));
        }
        if colours.len() != graph.edge_count() {
            return Err(Error::Invalid(format!(
                "{} colours for {} edges",
                colours.len(),
                graph.edge_count()
            )));
        }
        if let Some((i, &c)) = colours.iter().enumerate().find(|(_, &c)| c == 0 || c > r) {
            let (u, v) = graph.edges()[i];
            return Err(Error::Invalid(format!("edge ({u}, {v}) has colour {c} outside 1..={r}")));
        }
        Ok(ColouredGraph { graph, r, colours })
    }

    /// The same graph with every edge in colour 1.
    pub fn monochromatic(graph: Graph, r: usize) -> Result<Self> {
        let colours = vec![1; graph.edge_count()];
        Self::with_colouring(graph, r, colours)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn colours(&self) -> &[usize] {
        &self.colours
    }

    /// `(u, v, colour)` for every edge.
    pub fn coloured_edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.graph.edges.iter().zip(&self.colours).map(|(&(u, v), &c)| (u, v, c))
    }

    pub fn colour_of(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.graph.edges.binary_search(&key).ok().map(|i| self.colours[i])
    }

    /// Drops every edge of colour `colour`.
    pub fn without_colour(&self, colour: usize) -> ColouredGraph {
        let (edges, colours): (Vec<_>, Vec<_>) = self
            .graph
            .edges
            .iter()
            .zip(&self.colours)
            .filter(|(_, &c)| c != colour)
            .map(|(&e, &c)| (e, c))
            .unzip();
        ColouredGraph { graph: Graph::from_sorted(self.graph.n, edges), r: self.r, colours }
    }
}

/// Partition of the vertex set into monochromatic components, per colour.
///
/// Components of each colour are numbered by their least vertex, so the
/// component containing vertex 0 is always component 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentMap {
    labels: Vec<Vec<usize>>,
    members: Vec<Vec<Vec<usize>>>,
}

impl ComponentMap {
    pub fn r(&self) -> usize {
        self.labels.len()
    }

    /// Component id of `v` in `colour` (1-based colour).
    pub fn component_of(&self, colour: usize, v: usize) -> usize {
        self.labels[colour - 1][v]
    }

    /// Vertices of component `id` in `colour`, ascending.
    pub fn members(&self, colour: usize, id: usize) -> &[usize] {
        &self.members[colour - 1][id]
    }

    pub fn count(&self, colour: usize) -> usize {
        self.members[colour - 1].len()
    }

    /// All components of `colour`, in id order.
    pub fn parts(&self, colour: usize) -> &[Vec<usize>] {
        &self.members[colour - 1]
    }
}

/// Monochromatic components of every colour, isolated vertices included as
/// singletons.
pub fn components(g: &ColouredGraph) -> ComponentMap {
    let n = g.n();
    let mut labels = Vec::with_capacity(g.r);
    let mut members = Vec::with_capacity(g.r);
    for colour in 1..=g.r {
        let mut uf = UnionFind::<usize>::new(n);
        for (u, v, c) in g.coloured_edges() {
            if c == colour {
                uf.union(u, v);
            }
        }
        let mut root_id = vec![usize::MAX; n];
        let mut label = vec![0; n];
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            let root = uf.find_mut(v);
            if root_id[root] == usize::MAX {
                root_id[root] = parts.len();
                parts.push(Vec::new());
            }
            label[v] = root_id[root];
            parts[root_id[root]].push(v);
        }
        labels.push(label);
        members.push(parts);
    }
    ComponentMap { labels, members }
}

/// Parameters of a seeded `G(n, p)` draw.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomModel {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl RandomModel {
    pub fn new(n: usize, p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Invalid(format!("edge probability {p} outside [0, 1]")));
        }
        Ok(RandomModel { n, p, seed })
    }
}

/// A sampled graph with the model that produced it.
#[derive(Clone, Debug)]
pub struct SampledGraph {
    pub graph: Graph,
    pub model: RandomModel,
    pub generator: &'static str,
}

/// Samples `G(n, p)`.
///
/// Row `u` (the pairs `(u, v)` with `v > u`) is drawn from its own ChaCha
/// stream, so the result does not depend on how rows are spread over threads.
pub fn sample_gnp(model: RandomModel) -> SampledGraph {
    let RandomModel { n, p, seed } = model;
    let rows: Vec<Vec<(usize, usize)>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut rng = rng::stream_rng(seed, u as u64);
            (u + 1..n).filter(|_| rng.gen::<f64>() < p).map(|v| (u, v)).collect()
        })
        .collect();
    let edges = rows.into_iter().flatten().collect();
    SampledGraph { graph: Graph::from_sorted(n, edges), model, generator: rng::GENERATOR }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_colour_one() -> ColouredGraph {
        ColouredGraph::new(3, 2, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap()
    }

    #[test]
    fn rejects_malformed_graphs() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert!(ColouredGraph::new(3, 2, [(0, 1, 3)]).is_err());
        assert!(ColouredGraph::new(3, 2, [(0, 1, 0)]).is_err());
        assert!(ColouredGraph::new(3, 2, [(0, 1, 1), (1, 0, 2)]).is_err());
    }

    #[test]
    fn edgeless_components_are_singletons() {
        let g = ColouredGraph::new(3, 2, []).unwrap();
        let cm = components(&g);
        for colour in 1..=2 {
            assert_eq!(cm.parts(colour), &[vec![0], vec![1], vec![2]]);
        }
    }

    #[test]
    fn triangle_components() {
        let cm = components(&triangle_colour_one());
        assert_eq!(cm.parts(1), &[vec![0, 1, 2]]);
        assert_eq!(cm.parts(2), &[vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn colour_lookup_and_removal() {
        let g = ColouredGraph::new(4, 2, [(0, 1, 1), (2, 1, 2), (2, 3, 1)]).unwrap();
        assert_eq!(g.colour_of(1, 2), Some(2));
        assert_eq!(g.colour_of(0, 3), None);
        let h = g.without_colour(1);
        assert_eq!(h.graph().edges(), &[(1, 2)]);
    }

    #[test]
    fn gnp_extremes() {
        let empty = sample_gnp(RandomModel::new(20, 0.0, 1).unwrap());
        assert_eq!(empty.graph.edge_count(), 0);
        let full = sample_gnp(RandomModel::new(20, 1.0, 1).unwrap());
        assert_eq!(full.graph, Graph::complete(20));
        assert!(RandomModel::new(5, 1.5, 0).is_err());
    }

    #[test]
    fn gnp_is_deterministic() {
        let m = RandomModel::new(100, 0.5, 0xDEAD_BEEF).unwrap();
        assert_eq!(sample_gnp(m).graph, sample_gnp(m).graph);
        let other = RandomModel::new(100, 0.5, 0xDEAD_BEF0).unwrap();
        assert_ne!(sample_gnp(m).graph, sample_gnp(other).graph);
    }
}
