//! Strategies and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use itertools::Itertools;
use monocover::graph::ColouredGraph;
use monocover::hypergraph::{Edge, PartiteHypergraph, Vertex};
use proptest::prelude::*;

/// Coloured graphs with `1..=max_n` vertices and `1..=max_r` colours.
pub fn coloured_graph(max_n: usize, max_r: usize) -> impl Strategy<Value = ColouredGraph> {
    (1..=max_n, 1..=max_r).prop_flat_map(|(n, r)| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(prop_oneof![Just(0usize), 1..=r], pairs).prop_map(move |cols| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if cols[i] > 0 {
                        edges.push((u, v, cols[i]));
                    }
                    i += 1;
                }
            }
            ColouredGraph::new(n, r, edges).unwrap()
        })
    })
}

/// r-partite hypergraphs with part sizes `1..=max_part` and up to
/// `max_edges` distinct edges.
pub fn hypergraph(r: usize, max_part: usize, max_edges: usize) -> impl Strategy<Value = PartiteHypergraph> {
    proptest::collection::vec(1..=max_part, r).prop_flat_map(move |sizes| {
        let cells: Vec<_> = sizes.iter().map(|&s| 0..s).collect();
        proptest::collection::vec(cells, 0..=max_edges)
            .prop_map(move |edges| PartiteHypergraph::from_edges_dedup(sizes.clone(), edges).unwrap())
    })
}

/// Colour-`c` components by depth-first search, singletons included.
pub fn naive_components(g: &ColouredGraph, colour: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if !seen[v] && g.colour_of(u, v) == Some(colour) {
                    seen[v] = true;
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Least number of monochromatic components covering every vertex.
pub fn brute_tree_cover(g: &ColouredGraph) -> usize {
    let n = g.n();
    let comps: Vec<u64> = (1..=g.r())
        .flat_map(|c| naive_components(g, c))
        .map(|comp| comp.iter().fold(0u64, |m, &v| m | 1 << v))
        .unique()
        .collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    (0..=n)
        .find(|&k| comps.iter().combinations(k).any(|set| set.iter().fold(0, |m, &&c| m | c) == full))
        .expect("singletons cover")
}

/// Least cover size by trying vertex subsets of increasing size.
pub fn brute_tau(h: &PartiteHypergraph) -> usize {
    let vertices: Vec<Vertex> = h.vertices().collect();
    (0..=vertices.len())
        .find(|&k| vertices.iter().copied().combinations(k).any(|c| h.is_cover(&c)))
        .expect("all vertices cover")
}

/// Largest set of pairwise disjoint edges, by brute force.
pub fn brute_matching(edges: &[Edge]) -> usize {
    (0..=edges.len())
        .rev()
        .find(|&k| {
            edges.iter().combinations(k).any(|c| {
                c.iter().tuple_combinations().all(|(a, b)| a.iter().zip(b.iter()).all(|(x, y)| x != y))
            })
        })
        .unwrap_or(0)
}
