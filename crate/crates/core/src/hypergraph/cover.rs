//! Exact vertex cover.
//!
//! Depth-limited branching: pick an uncovered edge with the fewest usable
//! vertices and try each of them. A greedy packing of pairwise disjoint
//! uncovered edges bounds the number of further vertices needed.

use super::{CoverCertificate, PartiteHypergraph, Vertex};

struct Instance {
    /// Edges as global vertex ids (`offset[part] + index`, so ids follow
    /// `Vertex` order).
    edges: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    vertex_count: usize,
}

impl Instance {
    fn new(h: &PartiteHypergraph) -> Self {
        let mut offsets = Vec::with_capacity(h.r());
        let mut acc = 0;
        for &s in h.part_sizes() {
            offsets.push(acc);
            acc += s;
        }
        let edges = h
            .edges()
            .iter()
            .map(|e| e.iter().enumerate().map(|(p, &i)| offsets[p] + i).collect())
            .collect();
        Instance { edges, offsets, vertex_count: acc }
    }

    fn vertex(&self, id: usize) -> Vertex {
        let part = self.offsets.partition_point(|&o| o <= id) - 1;
        Vertex { part, index: id - self.offsets[part] }
    }

    fn covered(&self, e: usize, chosen: &[bool]) -> bool {
        self.edges[e].iter().any(|&v| chosen[v])
    }

    fn packing(&self, chosen: &[bool]) -> usize {
        let mut used = vec![false; self.vertex_count];
        let mut count = 0;
        for (i, e) in self.edges.iter().enumerate() {
            if !self.covered(i, chosen) && e.iter().all(|&v| !used[v]) {
                count += 1;
                for &v in e {
                    used[v] = true;
                }
            }
        }
        count
    }

    /// Extends `chosen` by at most `budget` vertices with id `>= min_id` into
    /// a cover.
    fn extend(&self, chosen: &mut Vec<bool>, picked: &mut Vec<usize>, budget: usize, min_id: usize) -> bool {
        let mut pivot: Option<(usize, usize)> = None;
        for (i, e) in self.edges.iter().enumerate() {
            if self.covered(i, chosen) {
                continue;
            }
            let options = e.iter().filter(|&&v| v >= min_id).count();
            if pivot.map_or(true, |(_, best)| options < best) {
                pivot = Some((i, options));
            }
        }
        let Some((edge, options)) = pivot else {
            return true;
        };
        if budget == 0 || options == 0 || self.packing(chosen) > budget {
            return false;
        }
        let mut candidates: Vec<usize> = self.edges[edge].iter().copied().filter(|&v| v >= min_id).collect();
        candidates.sort_unstable();
        for v in candidates {
            chosen[v] = true;
            picked.push(v);
            if self.extend(chosen, picked, budget - 1, min_id) {
                return true;
            }
            picked.pop();
            chosen[v] = false;
        }
        false
    }
}

/// A cover with at most `size` vertices, if one exists.
pub fn find_cover(h: &PartiteHypergraph, size: usize) -> Option<Vec<Vertex>> {
    let inst = Instance::new(h);
    let mut chosen = vec![false; inst.vertex_count];
    let mut picked = Vec::new();
    if inst.extend(&mut chosen, &mut picked, size, 0) {
        let mut out: Vec<Vertex> = picked.into_iter().map(|id| inst.vertex(id)).collect();
        out.sort();
        Some(out)
    } else {
        None
    }
}

pub fn has_cover_of_size(h: &PartiteHypergraph, size: usize) -> bool {
    find_cover(h, size).is_some()
}

/// `τ(h) >= t`.
pub fn tau_at_least(h: &PartiteHypergraph, t: usize) -> bool {
    t == 0 || !has_cover_of_size(h, t - 1)
}

/// Cover number with the lexicographically least optimal cover (vertices
/// compared in `(part, index)` order, covers as sorted lists).
pub fn tau(h: &PartiteHypergraph) -> (usize, CoverCertificate) {
    let inst = Instance::new(h);
    let none = vec![false; inst.vertex_count];
    let mut size = inst.packing(&none);
    loop {
        let mut chosen = none.clone();
        if inst.extend(&mut chosen, &mut Vec::new(), size, 0) {
            break;
        }
        size += 1;
    }

    // fix the cover one position at a time, smallest feasible vertex first
    let mut relevant: Vec<usize> = inst.edges.iter().flatten().copied().collect();
    relevant.sort_unstable();
    relevant.dedup();
    let mut prefix: Vec<usize> = Vec::with_capacity(size);
    let mut chosen = none;
    for slot in 0..size {
        let floor = prefix.last().map_or(0, |&v| v + 1);
        let next = relevant
            .iter()
            .copied()
            .filter(|&v| v >= floor)
            .find(|&v| {
                let mut trial = chosen.clone();
                trial[v] = true;
                inst.extend(&mut trial, &mut Vec::new(), size - slot - 1, v + 1)
            })
            .expect("an optimal cover exists");
        chosen[next] = true;
        prefix.push(next);
    }
    let cert = CoverCertificate::new(prefix.iter().map(|&id| inst.vertex(id)).collect()).verify(h);
    debug_assert!(cert.is_valid());
    (size, cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::fixtures;

    #[test]
    fn h_star_cover() {
        let (t, cert) = tau(&fixtures::h_star());
        assert_eq!(t, 2);
        assert_eq!(cert.vertices, vec![Vertex::new(0, 0), Vertex::new(0, 1)]);
        assert!(cert.is_valid());
    }

    #[test]
    fn four_disjoint_edges_need_four() {
        let (t, cert) = tau(&fixtures::four_disjoint_edges());
        assert_eq!(t, 4);
        assert!(cert.is_valid());
        assert!(tau_at_least(&fixtures::four_disjoint_edges(), 4));
        assert!(!tau_at_least(&fixtures::four_disjoint_edges(), 5));
    }

    #[test]
    fn empty_hypergraph() {
        let (t, cert) = tau(&PartiteHypergraph::empty(vec![3, 3, 3]));
        assert_eq!(t, 0);
        assert!(cert.is_empty());
        assert!(cert.is_valid());
    }

    #[test]
    fn lex_least_prefers_early_parts() {
        // two edges sharing g1 only; the r-vertices come first in the order
        let h = PartiteHypergraph::new(vec![2, 2, 2], vec![vec![0, 0, 0], vec![1, 1, 0]]).unwrap();
        let (t, cert) = tau(&h);
        assert_eq!(t, 1);
        assert_eq!(cert.vertices, vec![Vertex::new(2, 0)]);
    }
}
