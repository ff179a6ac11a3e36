//! The auxiliary hypergraph of a coloured graph.
//!
//! For a coloured graph `G`, a vertex subset `W` and colours `1..=r`, part
//! `i` of `H(G, W, c)` has one vertex per colour-`i` component meeting `W`
//! (ordered by least graph vertex) followed by a star vertex `v_i*` that
//! stands for every other colour-`i` component. Each graph vertex `u`
//! induces the transversal `ed(u)` of its `r` components; the edge set is the
//! image of `ed`.

use crate::error::{Error, Result};
use crate::graph::{components, ColouredGraph, ComponentCover, ComponentMap, Graph, MonoComponent};
use crate::hypergraph::{critical_subgraph, edge_label, CoverCertificate, Edge, PartiteHypergraph, Vertex};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct AuxiliaryMap {
    host: ColouredGraph,
    witness: Vec<usize>,
    hypergraph: PartiteHypergraph,
    comps: ComponentMap,
    /// `ed[u]`: index of `ed(u)` in `hypergraph.edges()`.
    ed: Vec<usize>,
    /// `vt[i][id]`: index in part `i` of colour-`(i + 1)` component `id`
    /// (the star index for components missing `W`).
    vt: Vec<Vec<usize>>,
}

/// Builds `H(g, w, c)`. Passing every vertex gives `H(g, c)`.
pub fn build_auxiliary(g: &ColouredGraph, w: &[usize]) -> Result<AuxiliaryMap> {
    let n = g.n();
    if let Some(&bad) = w.iter().find(|&&u| u >= n) {
        return Err(Error::Invalid(format!("witness vertex {bad} outside 0..{n}")));
    }
    let mut witness = w.to_vec();
    witness.sort_unstable();
    witness.dedup();
    let comps = components(g);
    let r = g.r();
    let mut vt = Vec::with_capacity(r);
    let mut part_sizes = Vec::with_capacity(r);
    for colour in 1..=r {
        let mut meets = vec![false; comps.count(colour)];
        for &u in &witness {
            meets[comps.component_of(colour, u)] = true;
        }
        let star = meets.iter().filter(|&&m| m).count();
        let mut next = 0;
        let table: Vec<usize> = meets
            .iter()
            .map(|&m| {
                if m {
                    next += 1;
                    next - 1
                } else {
                    star
                }
            })
            .collect();
        vt.push(table);
        part_sizes.push(star + 1);
    }
    let images: Vec<Edge> =
        (0..n).map(|u| (0..r).map(|i| vt[i][comps.component_of(i + 1, u)]).collect()).collect();
    let hypergraph = PartiteHypergraph::from_edges_dedup(part_sizes, images.iter().cloned())?;
    let ed = images.iter().map(|e| hypergraph.edge_index(e).expect("image is an edge")).collect();
    Ok(AuxiliaryMap { host: g.clone(), witness, hypergraph, comps, ed, vt })
}

/// `H(g, c)`.
pub fn build_full(g: &ColouredGraph) -> AuxiliaryMap {
    let all: Vec<usize> = (0..g.n()).collect();
    build_auxiliary(g, &all).expect("all vertices are in range")
}

impl AuxiliaryMap {
    pub fn host(&self) -> &ColouredGraph {
        &self.host
    }

    pub fn witness(&self) -> &[usize] {
        &self.witness
    }

    pub fn hypergraph(&self) -> &PartiteHypergraph {
        &self.hypergraph
    }

    pub fn components(&self) -> &ComponentMap {
        &self.comps
    }

    /// Whether the witness set is all of `V(G)`.
    pub fn is_full(&self) -> bool {
        self.witness.len() == self.host.n()
    }

    pub fn ed(&self, u: usize) -> &[usize] {
        &self.hypergraph.edges()[self.ed[u]]
    }

    pub fn ed_index(&self, u: usize) -> usize {
        self.ed[u]
    }

    /// Hypergraph vertex of colour-`colour` component `id` (1-based colour).
    pub fn vt(&self, colour: usize, id: usize) -> Vertex {
        Vertex::new(colour - 1, self.vt[colour - 1][id])
    }

    pub fn star(&self, part: usize) -> Vertex {
        Vertex::new(part, self.hypergraph.part_sizes()[part] - 1)
    }

    pub fn is_star(&self, v: Vertex) -> bool {
        v == self.star(v.part)
    }

    /// The component behind a non-star vertex.
    pub fn component(&self, v: Vertex) -> Option<MonoComponent> {
        if self.is_star(v) {
            return None;
        }
        let colour = v.part + 1;
        let id = self.vt[v.part].iter().position(|&x| x == v.index)?;
        Some(MonoComponent { colour, vertices: self.comps.members(colour, id).to_vec() })
    }

    /// Graph vertices mapped to edge `index`, ascending.
    pub fn preimage(&self, index: usize) -> Vec<usize> {
        (0..self.host.n()).filter(|&u| self.ed[u] == index).collect()
    }

    /// Whether every graph edge `uv` has intersecting images.
    pub fn neighbours_intersect(&self) -> bool {
        self.host.graph().edges().iter().all(|&(u, v)| self.ed(u).iter().zip(self.ed(v)).any(|(a, b)| a == b))
    }

    pub fn dump(&self) -> AuxiliaryDump {
        let labels: Vec<String> = (0..self.host.n()).map(|u| edge_label(self.ed(u))).collect();
        let mut vt = Vec::new();
        for colour in 1..=self.host.r() {
            for (id, members) in self.comps.parts(colour).iter().enumerate() {
                vt.push(VtEntry { colour, component: members.clone(), vertex: self.vt(colour, id).to_string() });
            }
        }
        AuxiliaryDump {
            n: self.host.n(),
            r: self.host.r(),
            witness: self.witness.clone(),
            part_sizes: self.hypergraph.part_sizes().to_vec(),
            stars: (0..self.host.r()).map(|i| self.star(i).to_string()).collect(),
            edges: self.hypergraph.edges().iter().map(|e| edge_label(e)).collect(),
            ed: labels,
            vt,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VtEntry {
    pub colour: usize,
    pub component: Vec<usize>,
    pub vertex: String,
}

/// Serializable view of an [`AuxiliaryMap`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxiliaryDump {
    pub n: usize,
    pub r: usize,
    pub witness: Vec<usize>,
    pub part_sizes: Vec<usize>,
    pub stars: Vec<String>,
    pub edges: Vec<String>,
    pub ed: Vec<String>,
    pub vt: Vec<VtEntry>,
}

fn require_full(am: &AuxiliaryMap) -> Result<()> {
    if am.is_full() {
        Ok(())
    } else {
        Err(Error::PreconditionViolated("auxiliary map must be built with W = V(G)".into()))
    }
}

/// Maps a component cover of the host to a hypergraph cover of `H(G, c)`.
pub fn covers_graph_to_hyper(am: &AuxiliaryMap, cover: &ComponentCover) -> Result<CoverCertificate> {
    require_full(am)?;
    if !cover.verify(&am.host) {
        return Err(Error::InputNotACover("components do not cover the graph".into()));
    }
    let vertices = cover
        .components
        .iter()
        .map(|c| am.vt(c.colour, am.comps.component_of(c.colour, c.vertices[0])))
        .collect();
    let cert = CoverCertificate::new(vertices).verify(&am.hypergraph);
    if !cert.is_valid() {
        return Err(Error::InputNotACover("image does not cover the auxiliary hypergraph".into()));
    }
    Ok(cert)
}

/// Maps a cover of `H(G, c)` to a family of at most as many components
/// covering the host. Star vertices are dropped.
pub fn covers_hyper_to_graph(am: &AuxiliaryMap, cert: &CoverCertificate) -> Result<ComponentCover> {
    require_full(am)?;
    let checked = cert.clone().verify(&am.hypergraph);
    if !checked.is_valid() {
        return Err(Error::InputNotACover(format!("{:?} does not cover the auxiliary hypergraph", cert.vertices)));
    }
    let mut comps: Vec<MonoComponent> = checked.vertices.iter().filter_map(|&v| am.component(v)).collect();
    comps.sort();
    let cover = ComponentCover { components: comps };
    if !cover.verify(&am.host) {
        return Err(Error::InputNotACover("translated components miss a graph vertex".into()));
    }
    Ok(cover)
}

/// Sends a cover of `H(G, c)` to a cover of `H(G, W, c)` of at most the same
/// size: components meeting `W` keep their vertex, everything else goes to
/// the star of its part.
pub fn collapse_cover(full: &AuxiliaryMap, restricted: &AuxiliaryMap, cert: &CoverCertificate) -> Result<CoverCertificate> {
    require_full(full)?;
    if full.host != restricted.host {
        return Err(Error::PreconditionViolated("auxiliary maps come from different coloured graphs".into()));
    }
    if !cert.clone().verify(&full.hypergraph).is_valid() {
        return Err(Error::InputNotACover(format!("{:?} does not cover H(G, c)", cert.vertices)));
    }
    let image = cert
        .vertices
        .iter()
        .map(|&v| match full.component(v) {
            None => restricted.star(v.part),
            Some(c) => restricted.vt(c.colour, full.comps.component_of(c.colour, c.vertices[0])),
        })
        .collect();
    let out = CoverCertificate::new(image).verify(&restricted.hypergraph);
    if !out.is_valid() {
        return Err(Error::InputNotACover("collapsed certificate does not cover H(G, W, c)".into()));
    }
    Ok(out)
}

/// A vertex set `W` with `τ(H(g, W, c)) ≥ s` and `|W| ≤ C(r − 1 + s, r)`:
/// one preimage (the least vertex) per edge of a critical subgraph of
/// `H(g, c)`.
pub fn witness_set(g: &ColouredGraph, s: usize) -> Result<Vec<usize>> {
    let full = build_full(g);
    let critical = critical_subgraph(&full.hypergraph, s)?;
    let mut w: Vec<usize> = critical
        .edges()
        .iter()
        .map(|e| {
            let index = full.hypergraph.edge_index(e).expect("critical edges come from H(G, c)");
            full.preimage(index)[0]
        })
        .collect();
    w.sort_unstable();
    Ok(w)
}

/// The edge `f` maximizing `|{u ∈ a_set : ed(u) = f}|`, least edge on ties.
pub fn most_frequent_edge(am: &AuxiliaryMap, a_set: &[usize]) -> Result<(Edge, usize)> {
    if a_set.is_empty() {
        return Err(Error::Invalid("vertex subset is empty".into()));
    }
    if let Some(&bad) = a_set.iter().find(|&&u| u >= am.host.n()) {
        return Err(Error::Invalid(format!("vertex {bad} outside the graph")));
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &u in a_set {
        *counts.entry(am.ed[u]).or_default() += 1;
    }
    let best = counts.values().copied().max().expect("nonempty");
    let index = counts.iter().find(|(_, &c)| c == best).map(|(&i, _)| i).expect("maximum is attained");
    Ok((am.hypergraph.edges()[index].clone(), best))
}

/// The coloured graph drawn next to the auxiliary hypergraph example: four
/// vertices `y1..y4` (ids 0..=3) and four vertices `x1..x4` (ids 4..=7), with
/// colours red = 1, blue = 2, green = 3.
///
/// With the ids in this order the red, blue and green components come out as
/// `r1 = {x4, y1, y2, y3}`, `r2 = {x1, y4}`, `b1 = {x3, y1, y2, y4}`,
/// `b2 = {x1, y3}`, `g1 = {x2, y1, y3, y4}`, `g2 = {x1, y2}`, followed by
/// singletons.
pub fn example_graph() -> ColouredGraph {
    let (y1, y2, y3, y4) = (0, 1, 2, 3);
    let (x1, x2, x3, x4) = (4, 5, 6, 7);
    let (red, blue, green) = (1, 2, 3);
    ColouredGraph::new(
        8,
        3,
        [
            (x4, y1, red),
            (x4, y2, red),
            (x4, y3, red),
            (x1, y4, red),
            (y2, y3, red),
            (y1, y3, red),
            (x3, y4, blue),
            (x3, y2, blue),
            (x3, y1, blue),
            (x1, y3, blue),
            (y1, y2, blue),
            (y2, y4, blue),
            (x2, y4, green),
            (x2, y3, green),
            (x2, y1, green),
            (x1, y2, green),
            (y4, y3, green),
            (y1, y4, green),
        ],
    )
    .expect("example graph is valid")
}

/// `ColouredGraph` with every edge of `g` in colour 1.
pub fn monochromatic(g: &Graph, r: usize) -> ColouredGraph {
    ColouredGraph::monochromatic(g.clone(), r).expect("r >= 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tree_cover_number;
    use crate::hypergraph::tau;

    fn labels(am: &AuxiliaryMap) -> Vec<String> {
        (0..am.host().n()).map(|u| edge_label(am.ed(u))).collect()
    }

    #[test]
    fn example_labels() {
        let am = build_full(&example_graph());
        let l = labels(&am);
        assert_eq!(&l[0..4], &["r1b1g1", "r1b1g2", "r1b2g1", "r2b1g1"]);
        // x1 lies in r2, b2, g2; x2..x4 each sit in singletons in two colours
        assert_eq!(l[4], "r2b2g2");
        assert_eq!(l[5], "r3b3g1");
        assert_eq!(l[6], "r4b1g3");
        assert_eq!(l[7], "r1b4g4");
        assert_eq!(am.hypergraph().part_sizes(), &[5, 5, 5]);
        assert!(am.hypergraph().covered_vertices().iter().all(|&v| !am.is_star(v)));
        assert!(am.neighbours_intersect());
    }

    #[test]
    fn restricted_example_collapses_singletons() {
        let g = example_graph();
        let am = build_auxiliary(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(am.hypergraph().part_sizes(), &[3, 3, 3]);
        let l = labels(&am);
        assert_eq!(l[5], "r3b3g1");
        assert_eq!(l[6], "r3b1g3");
        assert_eq!(l[7], "r1b3g3");
        assert!(am.neighbours_intersect());
    }

    #[test]
    fn isolated_vertex() {
        let g = ColouredGraph::new(1, 2, []).unwrap();
        let am = build_full(&g);
        assert_eq!(am.hypergraph().edges(), &[vec![0, 0]]);
        assert_eq!(am.hypergraph().part_sizes(), &[2, 2]);
    }

    #[test]
    fn cover_round_trip_on_example() {
        let g = example_graph();
        let am = build_full(&g);
        let (tc, cover) = tree_cover_number(&g);
        let (t, cert) = tau(am.hypergraph());
        assert_eq!(tc, t);
        let image = covers_graph_to_hyper(&am, &cover).unwrap();
        assert_eq!(image.len(), tc);
        let back = covers_hyper_to_graph(&am, &cert).unwrap();
        assert_eq!(back.len(), t);
    }

    #[test]
    fn star_only_cover_is_rejected() {
        let g = ColouredGraph::new(2, 2, [(0, 1, 1)]).unwrap();
        let am = build_full(&g);
        let cert = CoverCertificate::new(vec![am.star(0), am.star(1)]);
        assert!(matches!(covers_hyper_to_graph(&am, &cert), Err(Error::InputNotACover(_))));
        let bad = ComponentCover { components: vec![MonoComponent { colour: 2, vertices: vec![0] }] };
        assert!(matches!(covers_graph_to_hyper(&am, &bad), Err(Error::InputNotACover(_))));
    }

    #[test]
    fn collapse_on_example() {
        let g = example_graph();
        let full = build_full(&g);
        let restricted = build_auxiliary(&g, &[0, 1, 2, 3]).unwrap();
        // cover of H(G, c) that uses the red singleton {x2}
        let cert = CoverCertificate::new(vec![Vertex::new(0, 0), Vertex::new(0, 1), Vertex::new(0, 2), Vertex::new(0, 3)]);
        let out = collapse_cover(&full, &restricted, &cert).unwrap();
        assert!(out.is_valid());
        assert!(out.vertices.contains(&restricted.star(0)));
        assert!(out.len() <= cert.len());
        let same = collapse_cover(&full, &full, &cert).unwrap();
        assert_eq!(same.vertices, cert.vertices);
    }

    #[test]
    fn witness_set_edgeless() {
        let g = ColouredGraph::new(4, 3, []).unwrap();
        assert_eq!(witness_set(&g, 4).unwrap(), vec![0, 1, 2, 3]);
        let mono = monochromatic(&Graph::complete(4), 3);
        assert_eq!(witness_set(&mono, 1).unwrap().len(), 1);
        assert!(matches!(witness_set(&mono, 2), Err(Error::TargetUnreachable { .. })));
    }

    #[test]
    fn frequent_edge_on_example() {
        let g = example_graph();
        let am = build_auxiliary(&g, &[0, 1, 2, 3]).unwrap();
        let (_, count) = most_frequent_edge(&am, &[4, 5, 6, 7]).unwrap();
        assert!(count >= 1);
        let mono = build_full(&monochromatic(&Graph::complete(3), 1));
        assert_eq!(most_frequent_edge(&mono, &[0, 1, 2]).unwrap().1, 3);
    }
}
