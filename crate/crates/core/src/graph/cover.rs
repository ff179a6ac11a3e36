use super::{components, ColouredGraph, Graph};
use crate::error::{Error, Result};
use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

/// A monochromatic component: its colour and its vertices (ascending).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MonoComponent {
    pub colour: usize,
    pub vertices: Vec<usize>,
}

/// A family of monochromatic components claimed to cover every vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCover {
    pub components: Vec<MonoComponent>,
}

impl ComponentCover {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Rechecks from the raw edge list that every member is a full
    /// monochromatic component of `g` and that together they cover `V(g)`.
    pub fn verify(&self, g: &ColouredGraph) -> bool {
        let n = g.n();
        let mut covered = vec![false; n];
        for comp in &self.components {
            if comp.colour == 0 || comp.colour > g.r() || comp.vertices.is_empty() {
                return false;
            }
            if comp.vertices.iter().any(|&v| v >= n) {
                return false;
            }
            // breadth-first search in the colour class from the first vertex
            let mut seen = vec![false; n];
            let mut stack = vec![comp.vertices[0]];
            seen[comp.vertices[0]] = true;
            while let Some(u) = stack.pop() {
                for &w in g.graph().neighbours(u) {
                    if !seen[w] && g.colour_of(u, w) == Some(comp.colour) {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            let reached: Vec<usize> = (0..n).filter(|&v| seen[v]).collect();
            let mut listed = comp.vertices.clone();
            listed.sort_unstable();
            listed.dedup();
            if reached != listed {
                return false;
            }
            for &v in &listed {
                covered[v] = true;
            }
        }
        covered.into_iter().all(|c| c)
    }
}

/// Exact minimum set cover of `0..universe` by `sets`.
///
/// Returns the chosen indices (ascending) or `None` if the union of all sets
/// misses an element. Branch and bound: the incumbent starts from the greedy
/// cover, and a node is cut when its size plus a packing bound (elements no
/// two of which share a set) reaches the incumbent.
pub fn min_set_cover(universe: usize, sets: &[FixedBitSet]) -> Option<Vec<usize>> {
    let mut all = FixedBitSet::with_capacity(universe);
    for s in sets {
        all.union_with(s);
    }
    if all.count_ones(..) < universe {
        return None;
    }
    // drop duplicates and dominated sets; the survivors keep their index
    let mut keep: Vec<usize> = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        let dominated = sets.iter().enumerate().any(|(j, t)| {
            j != i && s.is_subset(t) && (t.count_ones(..) > s.count_ones(..) || j < i)
        });
        if !dominated {
            keep.push(i);
        }
    }
    let live: Vec<&FixedBitSet> = keep.iter().map(|&i| &sets[i]).collect();
    let containing: Vec<Vec<usize>> = (0..universe)
        .map(|v| (0..live.len()).filter(|&j| live[j].contains(v)).collect())
        .collect();
    let reach: Vec<FixedBitSet> = containing
        .iter()
        .map(|js| {
            let mut r = FixedBitSet::with_capacity(universe);
            for &j in js {
                r.union_with(live[j]);
            }
            r
        })
        .collect();

    let mut solver = SetCover {
        universe,
        live: &live,
        containing: &containing,
        reach: &reach,
        best: greedy_cover(universe, &live),
        chosen: Vec::new(),
    };
    let covered = FixedBitSet::with_capacity(universe);
    solver.search(&covered);
    let mut picked: Vec<usize> = solver.best.iter().map(|&j| keep[j]).collect();
    picked.sort_unstable();
    Some(picked)
}

fn greedy_cover(universe: usize, live: &[&FixedBitSet]) -> Vec<usize> {
    let mut covered = FixedBitSet::with_capacity(universe);
    let mut picked = Vec::new();
    while covered.count_ones(..) < universe {
        let (j, _) = live
            .iter()
            .enumerate()
            .map(|(j, s)| (j, s.difference(&covered).count()))
            .fold((usize::MAX, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        picked.push(j);
        covered.union_with(live[j]);
    }
    picked
}

struct SetCover<'a> {
    universe: usize,
    live: &'a [&'a FixedBitSet],
    containing: &'a [Vec<usize>],
    reach: &'a [FixedBitSet],
    best: Vec<usize>,
    chosen: Vec<usize>,
}

impl SetCover<'_> {
    fn packing_bound(&self, covered: &FixedBitSet) -> usize {
        let mut blocked = covered.clone();
        let mut count = 0;
        for v in 0..self.universe {
            if !blocked.contains(v) {
                count += 1;
                blocked.union_with(&self.reach[v]);
            }
        }
        count
    }

    fn search(&mut self, covered: &FixedBitSet) {
        if covered.count_ones(..) == self.universe {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        if self.chosen.len() + self.packing_bound(covered) >= self.best.len() {
            return;
        }
        let pivot = (0..self.universe)
            .filter(|&v| !covered.contains(v))
            .min_by_key(|&v| (self.containing[v].len(), v))
            .expect("uncovered element exists");
        let mut options = self.containing[pivot].clone();
        options.sort_by_key(|&j| (std::cmp::Reverse(self.live[j].difference(covered).count()), j));
        for j in options {
            let mut next = covered.clone();
            next.union_with(self.live[j]);
            self.chosen.push(j);
            self.search(&next);
            self.chosen.pop();
        }
    }
}

/// Minimum number of monochromatic components covering `V(g)` under the
/// fixed colouring of `g`, with one optimal family.
pub fn tree_cover_number(g: &ColouredGraph) -> (usize, ComponentCover) {
    let n = g.n();
    if n == 0 {
        return (0, ComponentCover::default());
    }
    let cm = components(g);
    let mut family: Vec<MonoComponent> = Vec::new();
    for colour in 1..=g.r() {
        for part in cm.parts(colour) {
            if !family.iter().any(|c| &c.vertices == part) {
                family.push(MonoComponent { colour, vertices: part.clone() });
            }
        }
    }
    let sets: Vec<FixedBitSet> = family
        .iter()
        .map(|c| {
            let mut s = FixedBitSet::with_capacity(n);
            for &v in &c.vertices {
                s.insert(v);
            }
            s
        })
        .collect();
    let picked = min_set_cover(n, &sets).expect("singleton components cover every vertex");
    let mut chosen: Vec<MonoComponent> = picked.into_iter().map(|i| family[i].clone()).collect();
    chosen.sort();
    (chosen.len(), ComponentCover { components: chosen })
}

/// `tc_r(g)`: the maximum of [`tree_cover_number`] over all r-colourings.
///
/// Colour permutations preserve the cover number, so the first edge is fixed
/// to colour 1 and `r^(|E|-1)` colourings remain. Returns the value together
/// with a colouring attaining it. Fails with `BudgetExceeded` when the number
/// of colourings is above `budget`.
pub fn tc_exact(g: &Graph, r: usize, budget: u64) -> Result<(usize, ColouredGraph)> {
    if r == 0 {
        return Err(Error::Invalid("colour count must be at least 1".into()));
    }
    let m = g.edge_count();
    if m == 0 {
        let cg = ColouredGraph::with_colouring(g.clone(), r, Vec::new())?;
        return Ok((g.n(), cg));
    }
    let total = (r as u128).checked_pow((m - 1) as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded(format!(
            "{total} colourings of {m} edges with r = {r} exceed budget {budget}"
        )));
    }
    let mut colours = vec![1usize; m];
    let mut best: Option<(usize, ColouredGraph)> = None;
    loop {
        let cg = ColouredGraph::with_colouring(g.clone(), r, colours.clone())?;
        let (value, _) = tree_cover_number(&cg);
        if best.as_ref().map_or(true, |(b, _)| value > *b) {
            best = Some((value, cg));
        }
        // odometer over edges 1..m; edge 0 stays colour 1
        let mut i = m - 1;
        loop {
            if i == 0 {
                return Ok(best.expect("at least one colouring"));
            }
            if colours[i] < r {
                colours[i] += 1;
                break;
            }
            colours[i] = 1;
            i -= 1;
        }
    }
}
