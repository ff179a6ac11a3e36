//! Small sub-hypergraphs that keep a prescribed cover number.

use super::{tau_at_least, PartiteHypergraph};
use crate::error::{Error, Result};

/// `C(r + t − 1, r)`: the most edges a minimal sub-hypergraph with cover
/// number `t` can need. Saturates at `u64::MAX`.
pub fn bollobas_bound(r: usize, t: usize) -> u64 {
    if t == 0 {
        return 0;
    }
    let (n, k) = ((r + t - 1) as u128, r as u128);
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Deletes edges in index order whenever the rest still has cover number at
/// least `t`. The result is inclusion-minimal with that property.
pub fn critical_subgraph(h: &PartiteHypergraph, t: usize) -> Result<PartiteHypergraph> {
    if !tau_at_least(h, t) {
        let (actual, _) = super::tau(h);
        return Err(Error::TargetUnreachable { target: t, actual });
    }
    let mut keep: Vec<bool> = vec![true; h.edge_count()];
    for i in 0..h.edge_count() {
        keep[i] = false;
        let rest: Vec<usize> = (0..h.edge_count()).filter(|&j| keep[j]).collect();
        if !tau_at_least(&h.with_edge_indices(&rest), t) {
            keep[i] = true;
        }
    }
    let kept: Vec<usize> = (0..h.edge_count()).filter(|&j| keep[j]).collect();
    let out = h.with_edge_indices(&kept);
    debug_assert!(out.edge_count() as u64 <= bollobas_bound(h.r(), t));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{fixtures, tau};

    #[test]
    fn bound_values() {
        assert_eq!(bollobas_bound(3, 4), 20);
        assert_eq!(bollobas_bound(3, 2), 4);
        assert_eq!(bollobas_bound(2, 3), 6);
        assert_eq!(bollobas_bound(3, 1), 1);
        assert_eq!(bollobas_bound(3, 0), 0);
    }

    #[test]
    fn disjoint_edges_are_already_critical() {
        let h = fixtures::four_disjoint_edges();
        assert_eq!(critical_subgraph(&h, 4).unwrap(), h);
    }

    #[test]
    fn h_star_plus_edge() {
        let h = fixtures::h_star().with_added_edges([vec![0, 0, 0]]).unwrap();
        let c = critical_subgraph(&h, 2).unwrap();
        assert!(c.is_subgraph_of(&h));
        assert_eq!(tau(&c).0, 2);
        assert!(c.edge_count() as u64 <= bollobas_bound(3, 2));
        assert_eq!(c.edge_count(), 3);
    }

    #[test]
    fn one_edge_suffices_for_one() {
        let c = critical_subgraph(&fixtures::h_star(), 1).unwrap();
        assert_eq!(c.edge_count(), 1);
    }

    #[test]
    fn unreachable_target() {
        assert!(matches!(
            critical_subgraph(&fixtures::h_star(), 3),
            Err(Error::TargetUnreachable { target: 3, actual: 2 })
        ));
    }
}
