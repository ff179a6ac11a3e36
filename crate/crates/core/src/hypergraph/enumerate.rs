//! Isomorph-free enumeration of r-partite r-graphs inside a box.
//!
//! Every part has `max_part` vertices and a hypergraph is a subset of the
//! `max_part^r` transversals, stored as a `u64` bit mask (bit `b` is the
//! transversal with mixed-radix index `b`, first part most significant).
//! Two masks are isomorphic when a part-preserving vertex relabelling (and,
//! optionally, a permutation of the parts) maps one onto the other; the
//! canonical form is the numerically least image. Isolated vertices are
//! absorbed by the box, so classes are counted up to isolated vertices.
//!
//! Classes are generated level by level: each class with `k + 1` edges is the
//! canonical form of some class with `k` edges plus one transversal. A
//! hereditary predicate prunes whole subtrees.

use super::{edges_intersect, Edge, PartiteHypergraph};
use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Transversal masks must fit in a `u64`.
pub const MAX_TRANSVERSALS: usize = 64;
/// Largest relabelling group we are willing to materialize.
pub const MAX_GROUP_ORDER: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationConfig {
    pub r: usize,
    pub max_part: usize,
    /// Stop after this many edges (`None`: all transversals).
    pub max_edges: Option<usize>,
    /// Also identify hypergraphs that differ by a permutation of the parts.
    pub part_permutations: bool,
    /// Cap on canonicalization work (transversal images computed).
    pub budget: Option<u64>,
    /// Keep only classes whose canonical mask is `index` modulo `count`.
    pub shard: Option<(usize, usize)>,
}

impl EnumerationConfig {
    pub fn new(r: usize, max_part: usize) -> Self {
        EnumerationConfig { r, max_part, max_edges: None, part_permutations: false, budget: None, shard: None }
    }

    pub fn max_edges(mut self, cap: usize) -> Self {
        self.max_edges = Some(cap);
        self
    }

    pub fn part_permutations(mut self, on: bool) -> Self {
        self.part_permutations = on;
        self
    }

    pub fn budget(mut self, work: u64) -> Self {
        self.budget = Some(work);
        self
    }

    pub fn shard(mut self, index: usize, count: usize) -> Self {
        self.shard = Some((index, count));
        self
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for len in 0..n {
        let mut next = Vec::with_capacity(out.len() * (len + 1));
        for p in &out {
            for pos in 0..=len {
                let mut q = p.clone();
                q.insert(pos, len);
                next.push(q);
            }
        }
        out = next;
    }
    out.sort();
    out
}

#[derive(Clone, Debug)]
pub struct Enumerator {
    config: EnumerationConfig,
    transversals: Vec<Edge>,
    /// `images[g][b]`: where group element `g` sends transversal `b`.
    images: Vec<Vec<u8>>,
    /// `disjoint[b]`: transversals sharing no vertex with `b`.
    disjoint: Vec<u64>,
}

impl Enumerator {
    pub fn new(config: EnumerationConfig) -> Result<Self> {
        let (r, s) = (config.r, config.max_part);
        if r < 1 || s < 1 {
            return Err(Error::Invalid("enumeration needs r >= 1 and max_part >= 1".into()));
        }
        let count = s.checked_pow(r as u32).filter(|&c| c <= MAX_TRANSVERSALS).ok_or_else(|| {
            Error::BudgetExceeded(format!("{s}^{r} transversals do not fit in a {MAX_TRANSVERSALS}-bit mask"))
        })?;
        if let Some((index, shards)) = config.shard {
            if shards == 0 || index >= shards {
                return Err(Error::Invalid(format!("shard {index} of {shards}")));
            }
        }
        let vertex_perms = permutations(s);
        let part_perms = if config.part_permutations { permutations(r) } else { vec![(0..r).collect()] };
        let order = vertex_perms
            .len()
            .checked_pow(r as u32)
            .and_then(|g| g.checked_mul(part_perms.len()))
            .filter(|&g| g <= MAX_GROUP_ORDER)
            .ok_or_else(|| Error::BudgetExceeded(format!("relabelling group for r={r}, max_part={s} is too large")))?;

        let transversals: Vec<Edge> = (0..count)
            .map(|mut b| {
                let mut e = vec![0; r];
                for i in (0..r).rev() {
                    e[i] = b % s;
                    b /= s;
                }
                e
            })
            .collect();
        let index_of = |e: &[usize]| e.iter().fold(0, |acc, &x| acc * s + x);

        let mut images = Vec::with_capacity(order);
        let mut choice = vec![0usize; r];
        for sigma in &part_perms {
            loop {
                let image: Vec<u8> = transversals
                    .iter()
                    .map(|e| {
                        let mut f = vec![0; r];
                        for i in 0..r {
                            f[sigma[i]] = vertex_perms[choice[i]][e[i]];
                        }
                        index_of(&f) as u8
                    })
                    .collect();
                images.push(image);
                // odometer over the per-part vertex permutations
                let mut i = 0;
                while i < r {
                    choice[i] += 1;
                    if choice[i] < vertex_perms.len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == r {
                    break;
                }
            }
        }
        debug_assert_eq!(images.len(), order);

        let disjoint = transversals
            .iter()
            .map(|e| {
                transversals
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| !edges_intersect(e, f))
                    .fold(0u64, |m, (b, _)| m | 1 << b)
            })
            .collect();
        Ok(Enumerator { config, transversals, images, disjoint })
    }

    pub fn config(&self) -> &EnumerationConfig {
        &self.config
    }

    pub fn transversal_count(&self) -> usize {
        self.transversals.len()
    }

    pub fn group_order(&self) -> usize {
        self.images.len()
    }

    pub fn transversal(&self, b: usize) -> &[usize] {
        &self.transversals[b]
    }

    fn apply(image: &[u8], mut mask: u64) -> u64 {
        let mut out = 0u64;
        while mask != 0 {
            let b = mask.trailing_zeros() as usize;
            out |= 1 << image[b];
            mask &= mask - 1;
        }
        out
    }

    /// Numerically least image of `mask` under the relabelling group.
    pub fn canonical(&self, mask: u64) -> u64 {
        self.images.iter().map(|img| Self::apply(img, mask)).min().unwrap_or(mask)
    }

    /// Mask of a hypergraph whose parts fit in the box.
    pub fn mask_of(&self, h: &PartiteHypergraph) -> Result<u64> {
        if h.r() != self.config.r || h.edges().iter().flatten().any(|&x| x >= self.config.max_part) {
            return Err(Error::Invalid(format!("{h} does not fit in the enumeration box")));
        }
        let s = self.config.max_part;
        Ok(h.edges().iter().fold(0u64, |m, e| m | 1 << e.iter().fold(0, |acc, &x| acc * s + x)))
    }

    pub fn hypergraph(&self, mask: u64) -> PartiteHypergraph {
        let edges = (0..self.transversals.len()).filter(|&b| mask >> b & 1 == 1).map(|b| self.transversals[b].clone());
        PartiteHypergraph::new(vec![self.config.max_part; self.config.r], edges).expect("transversals are valid edges")
    }

    pub fn is_intersecting(&self, mask: u64) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            if mask & self.disjoint[b] != 0 {
                return false;
            }
            rest &= rest - 1;
        }
        true
    }

    /// Canonical masks of every class all of whose members' subgraphs satisfy
    /// `hereditary` (checked on each generated mask), sorted by edge count
    /// and then numerically, restricted to the configured shard.
    pub fn classes<P>(&self, hereditary: P) -> Result<Vec<u64>>
    where
        P: Fn(u64) -> bool + Sync,
    {
        let n = self.transversals.len();
        let cap = self.config.max_edges.unwrap_or(n).min(n);
        let order = self.images.len() as u64;
        let mut work: u64 = 0;
        let mut level: Vec<u64> = if hereditary(0) { vec![0] } else { Vec::new() };
        let mut out = level.clone();
        for k in 0..cap {
            if level.is_empty() {
                break;
            }
            let step = level.len() as u64 * (n - k) as u64 * order * (k as u64 + 1);
            work = work.saturating_add(step);
            if let Some(budget) = self.config.budget {
                if work > budget {
                    return Err(Error::BudgetExceeded(format!(
                        "enumeration work {work} exceeds budget {budget} at {} edges",
                        k + 1
                    )));
                }
            }
            let mut next: Vec<u64> = level
                .par_iter()
                .flat_map_iter(|&parent| {
                    (0..n)
                        .filter(move |&b| parent >> b & 1 == 0)
                        .map(move |b| parent | 1 << b)
                        .filter(|&child| hereditary(child))
                        .map(|child| self.canonical(child))
                })
                .collect();
            next.par_sort_unstable();
            next.dedup();
            out.extend_from_slice(&next);
            level = next;
        }
        if let Some((index, count)) = self.config.shard {
            out.retain(|&m| (m % count as u64) as usize == index);
        }
        Ok(out)
    }

    /// Class representatives satisfying `hereditary` and `filter`, in the
    /// order of [`Enumerator::classes`].
    pub fn enumerate<P, F>(&self, hereditary: P, filter: F) -> Result<Vec<PartiteHypergraph>>
    where
        P: Fn(u64) -> bool + Sync,
        F: Fn(&PartiteHypergraph) -> bool + Sync,
    {
        let masks = self.classes(hereditary)?;
        Ok(masks
            .par_iter()
            .map(|&m| self.hypergraph(m))
            .filter(|h| filter(h))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::fixtures;

    #[test]
    fn single_vertex_parts() {
        let e = Enumerator::new(EnumerationConfig::new(2, 1)).unwrap();
        assert_eq!(e.classes(|_| true).unwrap(), vec![0, 1]);
    }

    #[test]
    fn small_counts() {
        // r=2, s=2: bipartite graphs inside K_{2,2} up to side-preserving
        // relabelling: 1, 1, 3, 1, 1 classes with 0..4 edges
        let e = Enumerator::new(EnumerationConfig::new(2, 2)).unwrap();
        let classes = e.classes(|_| true).unwrap();
        let by_size: Vec<usize> =
            (0..=4).map(|k| classes.iter().filter(|m| m.count_ones() == k).count()).collect();
        assert_eq!(by_size, vec![1, 1, 3, 1, 1]);
    }

    #[test]
    fn h_star_class_appears() {
        let e = Enumerator::new(EnumerationConfig::new(3, 2)).unwrap();
        let target = e.canonical(e.mask_of(&fixtures::h_star()).unwrap());
        let found = e.classes(|m| e.is_intersecting(m)).unwrap();
        assert!(found.contains(&target));
    }

    #[test]
    fn budget_is_enforced() {
        let e = Enumerator::new(EnumerationConfig::new(3, 3).budget(1000)).unwrap();
        assert!(matches!(e.classes(|_| true), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn shards_partition_the_classes() {
        let full = Enumerator::new(EnumerationConfig::new(3, 2)).unwrap().classes(|_| true).unwrap();
        let mut union: Vec<u64> = (0..3)
            .flat_map(|i| {
                Enumerator::new(EnumerationConfig::new(3, 2).shard(i, 3)).unwrap().classes(|_| true).unwrap()
            })
            .collect();
        union.sort_unstable_by_key(|&m| (m.count_ones(), m));
        assert_eq!(union, full);
    }

    #[test]
    fn oversized_box_is_rejected() {
        assert!(Enumerator::new(EnumerationConfig::new(3, 5)).is_err());
    }
}
