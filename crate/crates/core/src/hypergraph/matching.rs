//! Matchings: exact maximum matchings, König duality for r = 2, and the
//! part-restricted matchings obtained from the bipartite projection.

use super::{edges_intersect, tau, PartiteHypergraph, Vertex};
use crate::error::{Error, Result};
use fixedbitset::FixedBitSet;

/// Maximum bipartite matching by augmenting paths. `adj[u]` lists the right
/// vertices adjacent to left vertex `u`; returns `mate[u]` per left vertex.
fn kuhn(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].map_or(true, |w| augment(w, adj, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    let mut owner: Vec<Option<usize>> = vec![None; right];
    for u in 0..adj.len() {
        let mut seen = vec![false; right];
        augment(u, adj, &mut seen, &mut owner);
    }
    let mut mate = vec![None; adj.len()];
    for (v, o) in owner.iter().enumerate() {
        if let Some(u) = *o {
            mate[u] = Some(v);
        }
    }
    mate
}

/// For r = 2: a maximum matching (edge indices, ascending) together with a
/// vertex cover of the same size.
pub fn bipartite_max_matching(h: &PartiteHypergraph) -> Result<(Vec<usize>, Vec<Vertex>)> {
    if h.r() != 2 {
        return Err(Error::InfeasibleArity(h.r()));
    }
    let (left, right) = (h.part_sizes()[0], h.part_sizes()[1]);
    let mut adj = vec![Vec::new(); left];
    for e in h.edges() {
        adj[e[0]].push(e[1]);
    }
    let mate = kuhn(&adj, right);
    let mut matching: Vec<usize> = mate
        .iter()
        .enumerate()
        .filter_map(|(u, m)| m.map(|v| h.edge_index(&[u, v]).expect("matched pair is an edge")))
        .collect();
    matching.sort_unstable();

    // alternating reachability from unmatched left vertices
    let mut owner = vec![None; right];
    for (u, m) in mate.iter().enumerate() {
        if let Some(v) = *m {
            owner[v] = Some(u);
        }
    }
    let mut reach_left = vec![false; left];
    let mut reach_right = vec![false; right];
    let mut stack: Vec<usize> = (0..left).filter(|&u| mate[u].is_none()).collect();
    for &u in &stack {
        reach_left[u] = true;
    }
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if reach_right[v] {
                continue;
            }
            reach_right[v] = true;
            if let Some(w) = owner[v] {
                if !reach_left[w] {
                    reach_left[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let mut cover: Vec<Vertex> = (0..left)
        .filter(|&u| !reach_left[u] && mate[u].is_some())
        .map(|u| Vertex::new(0, u))
        .chain((0..right).filter(|&v| reach_right[v]).map(|v| Vertex::new(1, v)))
        .collect();
    cover.sort();
    debug_assert_eq!(cover.len(), matching.len());
    debug_assert!(h.is_cover(&cover));
    Ok((matching, cover))
}

struct MatchingSearch<'a> {
    h: &'a PartiteHypergraph,
    conflicts: Vec<FixedBitSet>,
    best: Vec<usize>,
}

impl MatchingSearch<'_> {
    /// Upper bound: no part can host more matching edges than it has distinct
    /// vertices among the remaining edges.
    fn bound(&self, remaining: &FixedBitSet) -> usize {
        let mut bound = remaining.count_ones(..);
        for part in 0..self.h.r() {
            let mut seen = vec![false; self.h.part_sizes()[part]];
            let mut distinct = 0;
            for i in remaining.ones() {
                let v = self.h.edges()[i][part];
                if !seen[v] {
                    seen[v] = true;
                    distinct += 1;
                }
            }
            bound = bound.min(distinct);
        }
        bound
    }

    fn search(&mut self, current: &mut Vec<usize>, remaining: FixedBitSet) {
        if current.len() > self.best.len() {
            self.best = current.clone();
        }
        let Some(e) = remaining.ones().next() else {
            return;
        };
        if current.len() + self.bound(&remaining) <= self.best.len() {
            return;
        }
        let mut with = remaining.clone();
        with.difference_with(&self.conflicts[e]);
        with.set(e, false);
        current.push(e);
        self.search(current, with);
        current.pop();
        let mut without = remaining;
        without.set(e, false);
        self.search(current, without);
    }
}

/// A maximum set of pairwise disjoint edges, as ascending edge indices.
pub fn max_matching(h: &PartiteHypergraph) -> Vec<usize> {
    if h.r() == 2 {
        return bipartite_max_matching(h).expect("r = 2").0;
    }
    let m = h.edge_count();
    let conflicts = (0..m)
        .map(|i| {
            let mut set = FixedBitSet::with_capacity(m);
            for j in 0..m {
                if edges_intersect(&h.edges()[i], &h.edges()[j]) {
                    set.insert(j);
                }
            }
            set
        })
        .collect();
    let mut search = MatchingSearch { h, conflicts, best: Vec::new() };
    let mut all = FixedBitSet::with_capacity(m);
    all.insert_range(..);
    search.search(&mut Vec::new(), all);
    search.best
}

/// For r = 3: `τ(h) − |t_set|` edges avoiding `t_set` whose pairwise
/// intersections lie inside part `a_part`.
///
/// Edges avoiding `t_set` are projected onto the two other parts; a maximum
/// matching of that bipartite graph has at least the required size, and each
/// matched pair is lifted back to its lowest-index edge. The lifted edges are
/// returned ordered by edge index.
pub fn skew_matching(h: &PartiteHypergraph, t_set: &[Vertex], a_part: usize) -> Result<Vec<usize>> {
    if h.r() != 3 {
        return Err(Error::InfeasibleArity(h.r()));
    }
    if a_part >= 3 {
        return Err(Error::Invalid(format!("part {a_part} out of range")));
    }
    let mut t_set = t_set.to_vec();
    t_set.sort();
    t_set.dedup();
    let (t, _) = tau(h);
    if t_set.len() > t {
        return Err(Error::PreconditionViolated(format!(
            "|T| = {} exceeds the cover number {t}",
            t_set.len()
        )));
    }
    let (p, q) = match a_part {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let avoids = |e: &[usize]| t_set.iter().all(|v| e[v.part] != v.index);
    let mut lift: Vec<Vec<Option<usize>>> = vec![vec![None; h.part_sizes()[q]]; h.part_sizes()[p]];
    let mut adj = vec![Vec::new(); h.part_sizes()[p]];
    for (i, e) in h.edges().iter().enumerate() {
        if avoids(e) && lift[e[p]][e[q]].is_none() {
            lift[e[p]][e[q]] = Some(i);
            adj[e[p]].push(e[q]);
        }
    }
    let mate = kuhn(&adj, h.part_sizes()[q]);
    let mut chosen: Vec<usize> = mate
        .iter()
        .enumerate()
        .filter_map(|(u, m)| m.and_then(|v| lift[u][v]))
        .collect();
    chosen.sort_unstable();
    let need = t - t_set.len();
    debug_assert!(chosen.len() >= need);
    chosen.truncate(need);
    Ok(chosen)
}
