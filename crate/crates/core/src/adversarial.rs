//! Colourings that force many monochromatic components.
//!
//! An [`EdgeAssignment`] sends every graph vertex to an edge of a fixed
//! hypergraph `H_0` so that adjacent vertices go to intersecting edges. Each
//! graph edge `uv` is then coloured by the first part in which the images of
//! `u` and `v` agree. Monochromatic components of that colouring never merge
//! vertices whose images differ in the component's part, and as a result any
//! component cover of the graph pulls back to a cover of `H_0` of the same
//! size whenever the assignment is surjective.

use crate::auxiliary::build_full;
use crate::error::{Error, Result};
use crate::graph::{components, tree_cover_number, ColouredGraph, ComponentCover, Graph};
use crate::hypergraph::{edges_intersect, tau, CoverCertificate, Edge, PartiteHypergraph, Vertex};
use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

/// A map `V(G) → E(H_0)`, stored as edge indices into `target.edges()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeAssignment {
    pub target: PartiteHypergraph,
    pub map: Vec<usize>,
    /// Set by constructors that guarantee compatibility and surjectivity.
    pub ready: bool,
}

impl EdgeAssignment {
    pub fn new(target: PartiteHypergraph, map: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = map.iter().find(|&&i| i >= target.edge_count()) {
            return Err(Error::Invalid(format!("edge index {bad} out of range")));
        }
        Ok(EdgeAssignment { target, map, ready: false })
    }

    pub fn image(&self, u: usize) -> &[usize] {
        &self.target.edges()[self.map[u]]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.edge_count()];
        for &i in &self.map {
            hit[i] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// First graph edge whose endpoints receive disjoint edges.
    pub fn check_compatible(&self, g: &Graph) -> Result<()> {
        if self.map.len() != g.n() {
            return Err(Error::Invalid(format!("assignment covers {} of {} vertices", self.map.len(), g.n())));
        }
        match g.edges().iter().find(|&&(u, v)| !edges_intersect(self.image(u), self.image(v))) {
            Some(&(u, v)) => Err(Error::IncompatibleAssignment(u, v)),
            None => Ok(()),
        }
    }
}

/// Colours `uv` with the first part (1-based) where the images of `u` and `v`
/// share their vertex.
pub fn build_colouring(g: &Graph, ea: &EdgeAssignment) -> Result<ColouredGraph> {
    ea.check_compatible(g)?;
    let colours = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (ea.image(u), ea.image(v));
            (0..a.len()).find(|&j| a[j] == b[j]).expect("compatible images intersect") + 1
        })
        .collect();
    ColouredGraph::with_colouring(g.clone(), ea.target.r(), colours)
}

/// Whether vertices sharing a colour-`j` component also share their image's
/// part-`j` vertex, for every `j`. Returns the first offending pair.
pub fn check_refinement(coloured: &ColouredGraph, ea: &EdgeAssignment) -> Result<()> {
    let cm = components(coloured);
    for colour in 1..=coloured.r() {
        for members in cm.parts(colour) {
            let anchor = members[0];
            let want = ea.image(anchor)[colour - 1];
            if let Some(&v) = members.iter().find(|&&v| ea.image(v)[colour - 1] != want) {
                return Err(Error::RefinementViolation { u: anchor, v, colour });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LowerBound {
    /// `τ(H_0)`.
    pub bound: usize,
    /// The colouring's exact monochromatic cover number.
    pub achieved: usize,
    pub cover: ComponentCover,
    /// An optimal cover of `H(G, c)` pulled back to a cover of `H_0`.
    pub pulled_back: CoverCertificate,
    #[serde(skip)]
    pub colouring: Option<ColouredGraph>,
}

/// Builds the colouring and checks `tree_cover_number ≥ τ(H_0)` exactly.
///
/// Also checks the component refinement property and that an optimal cover
/// of `H(G, c)` pulls back to a cover of `H_0`. A failure of either is
/// reported as an error: it would mean the colouring rule is wrong.
pub fn verify_lower_bound(g: &Graph, ea: &EdgeAssignment) -> Result<LowerBound> {
    if !ea.is_surjective() {
        return Err(Error::PreconditionViolated("edge assignment is not surjective".into()));
    }
    let coloured = build_colouring(g, ea)?;
    check_refinement(&coloured, ea)?;
    let (bound, _) = tau(&ea.target);
    let (achieved, cover) = tree_cover_number(&coloured);

    let am = build_full(&coloured);
    let (_, x) = tau(am.hypergraph());
    let pulled: Vec<Vertex> = x
        .vertices
        .iter()
        .filter_map(|&v| am.component(v))
        .map(|c| Vertex::new(c.colour - 1, ea.image(c.vertices[0])[c.colour - 1]))
        .collect();
    let pulled_back = CoverCertificate::new(pulled).verify(&ea.target);
    if !pulled_back.is_valid() {
        return Err(Error::CounterexampleFound(format!(
            "cover {:?} of H(G, c) does not pull back to a cover of H_0",
            x.vertices
        )));
    }
    if achieved < bound {
        return Err(Error::CounterexampleFound(format!("colouring needs only {achieved} < {bound} components")));
    }
    Ok(LowerBound { bound, achieved, cover, pulled_back, colouring: Some(coloured) })
}

/// `φ(T)`: the first member of `covers` meeting every edge of `tuple`.
pub fn first_cover<'a>(covers: &'a [Edge], tuple: &[&[usize]]) -> Option<(usize, &'a Edge)> {
    covers.iter().enumerate().find(|(_, f)| tuple.iter().all(|e| edges_intersect(f, e)))
}

/// The assignment built from an independent set.
///
/// `i_set[i]` is sent to edge `i` of `h0`. Every other vertex `u` is sent to
/// `φ(T)`, where `T` lists the images of its neighbours in `i_set` and `φ`
/// picks the first member of `covers` meeting all of them (the first member
/// outright when `T` is empty). Members of `covers` that are not edges of
/// `h0` are added to the target, which therefore has cover number at least
/// `τ(h0)`; only members actually used are added, so the assignment is
/// surjective.
pub fn build_ed0_from_independent_set(
    g: &Graph,
    h0: &PartiteHypergraph,
    i_set: &[usize],
    covers: &[Edge],
    k: usize,
) -> Result<EdgeAssignment> {
    let n = g.n();
    let m = h0.edge_count();
    if i_set.len() != m {
        return Err(Error::PreconditionViolated(format!(
            "size: independent set has {} vertices but H_0 has {m} edges",
            i_set.len()
        )));
    }
    let mut slot = vec![None; n];
    for (i, &v) in i_set.iter().enumerate() {
        if v >= n {
            return Err(Error::Invalid(format!("vertex {v} outside the graph")));
        }
        if slot[v].replace(i).is_some() {
            return Err(Error::PreconditionViolated(format!("size: vertex {v} listed twice")));
        }
    }
    if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| slot[u].is_some() && slot[v].is_some()) {
        return Err(Error::PreconditionViolated(format!("independence: edge ({u}, {v}) inside the set")));
    }
    for w in 0..n {
        let inside: Vec<usize> = g.neighbours(w).iter().copied().filter(|&x| slot[x].is_some()).collect();
        if inside.len() > k {
            return Err(Error::PreconditionViolated(format!(
                "common neighbour: vertex {w} is adjacent to {inside:?}, more than k = {k} set members"
            )));
        }
    }
    for (a, f) in covers.iter().enumerate() {
        if f.len() != h0.r() || f.iter().zip(h0.part_sizes()).any(|(&x, &s)| x >= s) {
            return Err(Error::PreconditionViolated(format!("covers: member {a} is not a transversal of H_0")));
        }
        if let Some(b) = (a + 1..covers.len()).find(|&b| !edges_intersect(f, &covers[b])) {
            return Err(Error::PreconditionViolated(format!("covers: members {a} and {b} are disjoint")));
        }
    }

    let mut chosen: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; covers.len()];
    for u in 0..n {
        if slot[u].is_some() {
            continue;
        }
        let tuple: Vec<&[usize]> =
            g.neighbours(u).iter().filter_map(|&x| slot[x]).map(|i| h0.edges()[i].as_slice()).collect();
        let (a, _) = first_cover(covers, &tuple).ok_or_else(|| {
            Error::PreconditionViolated(format!("covers: no member covers the neighbour edges of vertex {u}"))
        })?;
        chosen[u] = Some(a);
        used[a] = true;
    }
    let extra = covers.iter().zip(&used).filter(|(_, &u)| u).map(|(f, _)| f.clone());
    let target = h0.with_added_edges(extra)?;
    let map = (0..n)
        .map(|u| match slot[u] {
            Some(i) => target.edge_index(&h0.edges()[i]).expect("h0 edges are kept"),
            None => target.edge_index(&covers[chosen[u].expect("assigned")]).expect("used covers are added"),
        })
        .collect();
    let mut ea = EdgeAssignment::new(target, map)?;
    ea.check_compatible(g)?;
    debug_assert!(ea.is_surjective());
    ea.ready = true;
    Ok(ea)
}

/// `int(H)`: one vertex per edge, adjacent when the edges intersect; every
/// vertex has a loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionGraph {
    adj: Vec<FixedBitSet>,
}

impl IntersectionGraph {
    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn has_loop(&self, a: usize) -> bool {
        self.adj[a].contains(a)
    }

    /// Every pair, loops included, is adjacent.
    pub fn is_loop_complete(&self) -> bool {
        self.adj.iter().all(|row| row.count_ones(..) == self.adj.len())
    }
}

pub fn intersection_graph(h: &PartiteHypergraph) -> IntersectionGraph {
    let m = h.edge_count();
    let adj = (0..m)
        .map(|i| {
            let mut row = FixedBitSet::with_capacity(m);
            for j in 0..m {
                if edges_intersect(&h.edges()[i], &h.edges()[j]) {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    IntersectionGraph { adj }
}

/// Whether `map` is a homomorphism `g → f` hitting every vertex of `f`.
pub fn check_surjective_homomorphism(g: &Graph, f: &IntersectionGraph, map: &[usize]) -> bool {
    if map.len() != g.n() || map.iter().any(|&x| x >= f.len()) {
        return false;
    }
    let mut hit = vec![false; f.len()];
    for &x in map {
        hit[x] = true;
    }
    hit.into_iter().all(|h| h) && g.edges().iter().all(|&(u, v)| f.adjacent(map[u], map[v]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::fixtures;

    #[test]
    fn colouring_picks_first_agreeing_part() {
        let h = PartiteHypergraph::new(vec![2, 2, 2], vec![vec![0, 0, 0], vec![1, 0, 1]]).unwrap();
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let ea = EdgeAssignment::new(h, vec![0, 0, 1]).unwrap();
        let c = build_colouring(&g, &ea).unwrap();
        assert_eq!(c.colour_of(0, 1), Some(1));
        assert_eq!(c.colour_of(1, 2), Some(2));
    }

    #[test]
    fn incompatible_edge_is_named() {
        let h = fixtures::four_disjoint_edges();
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let ea = EdgeAssignment::new(h, vec![0, 1]).unwrap();
        assert!(matches!(build_colouring(&g, &ea), Err(Error::IncompatibleAssignment(0, 1))));
    }

    #[test]
    fn isolated_vertices_need_four() {
        let h = fixtures::four_disjoint_edges();
        let g = Graph::empty(4);
        let ea = EdgeAssignment::new(h, vec![0, 1, 2, 3]).unwrap();
        let lb = verify_lower_bound(&g, &ea).unwrap();
        assert_eq!((lb.bound, lb.achieved), (4, 4));
    }

    #[test]
    fn gadget_assignment_on_a_small_graph() {
        // four set vertices 0..4, each outside vertex sees at most three of them
        let g = Graph::new(7, [(0, 4), (1, 4), (2, 4), (1, 5), (3, 5), (4, 5), (5, 6), (4, 6)]).unwrap();
        let h0 = fixtures::four_disjoint_edges();
        let covers = fixtures::four_disjoint_covers();
        let ea = build_ed0_from_independent_set(&g, &h0, &[0, 1, 2, 3], &covers, 3).unwrap();
        assert!(ea.ready && ea.is_surjective());
        for u in 4..7 {
            assert!(covers.iter().any(|c| c.as_slice() == ea.image(u)));
        }
        let lb = verify_lower_bound(&g, &ea).unwrap();
        assert!(lb.achieved >= lb.bound && lb.bound >= 4);
        assert!(check_surjective_homomorphism(&g, &intersection_graph(&ea.target), &ea.map));
    }

    #[test]
    fn crowded_neighbour_is_rejected() {
        let g = Graph::new(5, [(4, 0), (4, 1), (4, 2), (4, 3)]).unwrap();
        let err = build_ed0_from_independent_set(
            &g,
            &fixtures::four_disjoint_edges(),
            &[0, 1, 2, 3],
            &fixtures::four_disjoint_covers(),
            3,
        );
        assert!(matches!(err, Err(Error::PreconditionViolated(msg)) if msg.starts_with("common neighbour")));
    }

    #[test]
    fn intersection_graphs() {
        let hs = intersection_graph(&fixtures::h_star());
        assert_eq!(hs.len(), 4);
        assert!(hs.is_loop_complete());
        let four = intersection_graph(&fixtures::four_disjoint_edges());
        assert!((0..4).all(|i| four.has_loop(i) && (0..4).all(|j| four.adjacent(i, j) == (i == j))));
        let one = intersection_graph(&fixtures::disjoint_edges(3, 1));
        assert!(one.is_loop_complete() && one.len() == 1);
    }

    #[test]
    fn homomorphism_checks() {
        let f = intersection_graph(&fixtures::disjoint_edges(2, 2));
        assert!(check_surjective_homomorphism(&Graph::empty(3), &f, &[0, 1, 1]));
        let k2 = Graph::complete(2);
        assert!(!check_surjective_homomorphism(&k2, &f, &[0, 1]));
        assert!(check_surjective_homomorphism(&Graph::empty(2), &f, &[1, 0]));
        assert!(!check_surjective_homomorphism(&Graph::empty(2), &f, &[0, 0]));
    }
}
