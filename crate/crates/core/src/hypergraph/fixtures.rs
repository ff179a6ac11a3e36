//! Named hypergraphs.

use super::{Edge, PartiteHypergraph};

/// `H*` on parts `{r1, r2}`, `{b1, b2}`, `{g1, g2}` with edges
/// `r1b1g2, r1b2g1, r2b1g1, r2b2g2`.
pub fn h_star() -> PartiteHypergraph {
    PartiteHypergraph::new(vec![2, 2, 2], vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0], vec![1, 1, 1]])
        .expect("fixture is valid")
}

/// Four pairwise disjoint edges in a 3-partite box with parts of size 4.
///
/// Labelled so that `r1`, `b1` and `g1` sit in three different edges and the
/// fourth edge is `r2b2g2`; this is the labelling under which
/// [`four_disjoint_covers`] pairwise intersect and cover every three of the
/// edges.
pub fn four_disjoint_edges() -> PartiteHypergraph {
    PartiteHypergraph::new(
        vec![4, 4, 4],
        vec![vec![0, 2, 2], vec![2, 0, 3], vec![3, 3, 0], vec![1, 1, 1]],
    )
    .expect("fixture is valid")
}

/// The fixed covers `r1b1g1, r1b1g2, r1b2g1, r2b1g1` for
/// [`four_disjoint_edges`].
pub fn four_disjoint_covers() -> Vec<Edge> {
    vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]
}

/// `r` pairwise disjoint edges `(i, i, ..., i)` in a box with parts of size `count`.
pub fn disjoint_edges(r: usize, count: usize) -> PartiteHypergraph {
    PartiteHypergraph::new(vec![count; r], (0..count).map(|i| vec![i; r])).expect("fixture is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::edges_intersect;

    #[test]
    fn h_star_is_intersecting() {
        assert!(h_star().is_pairwise_intersecting());
    }

    #[test]
    fn four_disjoint_layout() {
        let h = four_disjoint_edges();
        assert_eq!(h.edge_count(), 4);
        assert!(h.disjoint_pair().is_some());
        let e = h.edges();
        for i in 0..4 {
            for j in i + 1..4 {
                assert!(!edges_intersect(&e[i], &e[j]));
            }
        }
        let covers = four_disjoint_covers();
        for a in &covers {
            for b in &covers {
                assert!(edges_intersect(a, b));
            }
        }
    }
}
