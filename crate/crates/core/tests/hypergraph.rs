mod common;

use common::{brute_matching, brute_tau, hypergraph};
use itertools::Itertools;
use monocover::hypergraph::{
    bipartite_max_matching, bollobas_bound, critical_subgraph, fixtures, max_matching, skew_matching, tau,
    tau_at_least, CoverCertificate, EnumerationConfig, Enumerator, PartiteHypergraph, Vertex,
};
use monocover::Error;
use proptest::prelude::*;
use std::collections::HashSet;

/// Every relabelling of an `s^r` box as a map on transversal tuples.
fn group(r: usize, s: usize, part_perms: bool) -> Vec<Box<dyn Fn(&[usize]) -> Vec<usize>>> {
    let vertex_perms: Vec<Vec<usize>> = (0..s).permutations(s).collect();
    let part_orders: Vec<Vec<usize>> = if part_perms { (0..r).permutations(r).collect() } else { vec![(0..r).collect()] };
    let mut out: Vec<Box<dyn Fn(&[usize]) -> Vec<usize>>> = Vec::new();
    for order in part_orders {
        for choice in (0..r).map(|_| vertex_perms.iter().cloned()).multi_cartesian_product() {
            let order = order.clone();
            out.push(Box::new(move |t: &[usize]| {
                let relabelled: Vec<usize> = t.iter().enumerate().map(|(p, &x)| choice[p][x]).collect();
                order.iter().map(|&p| relabelled[p]).collect()
            }));
        }
    }
    out
}

fn transversals(r: usize, s: usize) -> Vec<Vec<usize>> {
    (0..r).map(|_| 0..s).multi_cartesian_product().collect()
}

/// Number of classes with each edge count, by Burnside's lemma.
fn burnside(r: usize, s: usize, part_perms: bool) -> Vec<usize> {
    let ts = transversals(r, s);
    let g = group(r, s, part_perms);
    let mut total = vec![0u128; ts.len() + 1];
    for f in &g {
        let mut seen = vec![false; ts.len()];
        let mut poly = vec![0u128; ts.len() + 1];
        poly[0] = 1;
        for start in 0..ts.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                len += 1;
                let img = f(&ts[cur]);
                cur = ts.iter().position(|t| *t == img).unwrap();
            }
            for d in (len..poly.len()).rev() {
                poly[d] += poly[d - len];
            }
        }
        for (t, p) in total.iter_mut().zip(poly) {
            *t += p;
        }
    }
    total.into_iter().map(|t| (t / g.len() as u128) as usize).collect()
}

/// Canonical form as the least sorted edge list over the group.
fn naive_counts(r: usize, s: usize, part_perms: bool) -> Vec<usize> {
    let ts = transversals(r, s);
    let g = group(r, s, part_perms);
    let mut forms: HashSet<Vec<Vec<usize>>> = HashSet::new();
    for mask in 0u64..1 << ts.len() {
        let edges: Vec<&Vec<usize>> = (0..ts.len()).filter(|&b| mask >> b & 1 == 1).map(|b| &ts[b]).collect();
        let form = g
            .iter()
            .map(|f| {
                let mut img: Vec<Vec<usize>> = edges.iter().map(|e| f(e)).collect();
                img.sort();
                img
            })
            .min()
            .unwrap();
        forms.insert(form);
    }
    let mut counts = vec![0; ts.len() + 1];
    for f in forms {
        counts[f.len()] += 1;
    }
    counts
}

fn enumerated_counts(r: usize, s: usize, part_perms: bool) -> Vec<usize> {
    let e = Enumerator::new(EnumerationConfig::new(r, s).part_permutations(part_perms)).unwrap();
    let classes = e.classes(|_| true).unwrap();
    let mut counts = vec![0; s.pow(r as u32) + 1];
    for m in classes {
        counts[m.count_ones() as usize] += 1;
    }
    counts
}

#[test]
fn enumeration_counts_agree_with_two_oracles() {
    for (r, s, perms) in [(2, 2, false), (2, 2, true), (2, 3, false), (2, 3, true), (3, 2, false), (3, 2, true)] {
        let got = enumerated_counts(r, s, perms);
        assert_eq!(got, burnside(r, s, perms), "r={r} s={s} perms={perms}");
        assert_eq!(got, naive_counts(r, s, perms), "r={r} s={s} perms={perms}");
    }
    // bipartite graphs inside K_{3,3} up to side-preserving relabelling
    assert_eq!(enumerated_counts(2, 3, false).iter().sum::<usize>(), 36);
}

#[test]
fn intersecting_three_graphs_with_parts_two() {
    // pinned: intersecting classes of 3-partite 3-graphs inside a 2x2x2 box
    let e = Enumerator::new(EnumerationConfig::new(3, 2)).unwrap();
    let classes = e.classes(|m| e.is_intersecting(m)).unwrap();
    let check: usize = {
        let ts = transversals(3, 2);
        let g = group(3, 2, false);
        let mut forms: HashSet<Vec<Vec<usize>>> = HashSet::new();
        for mask in 0u64..1 << 8 {
            let edges: Vec<&Vec<usize>> = (0..8).filter(|&b| mask >> b & 1 == 1).map(|b| &ts[b]).collect();
            if edges.iter().tuple_combinations().any(|(a, b)| a.iter().zip(b.iter()).all(|(x, y)| x != y)) {
                continue;
            }
            let form = g
                .iter()
                .map(|f| {
                    let mut img: Vec<Vec<usize>> = edges.iter().map(|e| f(e)).collect();
                    img.sort();
                    img
                })
                .min()
                .unwrap();
            forms.insert(form);
        }
        forms.len()
    };
    assert_eq!(classes.len(), check);
}

#[test]
fn fixture_cover_numbers() {
    let (t, cert) = tau(&fixtures::h_star());
    assert_eq!(t, 2);
    assert_eq!(cert.vertices, vec![Vertex::new(0, 0), Vertex::new(0, 1)]);
    assert_eq!(tau(&fixtures::four_disjoint_edges()).0, 4);
    assert_eq!(tau(&PartiteHypergraph::empty(vec![2, 2, 2])).0, 0);
}

#[test]
fn critical_subgraph_of_h_star_plus_edge() {
    let h = fixtures::h_star().with_added_edges([vec![0, 0, 0]]).unwrap();
    let crit = critical_subgraph(&h, 2).unwrap();
    assert_eq!(crit.edge_count(), 3);
    assert!(tau_at_least(&crit, 2));
    assert!(crit.edge_count() as u64 <= bollobas_bound(3, 2));
    assert!(matches!(critical_subgraph(&h, 3), Err(Error::TargetUnreachable { target: 3, actual: 2 })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tau_is_exact_and_certified(h in hypergraph(3, 3, 7)) {
        let (t, cert) = tau(&h);
        prop_assert_eq!(t, brute_tau(&h));
        prop_assert_eq!(cert.len(), t);
        prop_assert!(CoverCertificate::new(cert.vertices.clone()).verify(&h).is_valid());
        prop_assert!(tau_at_least(&h, t));
        prop_assert!(!tau_at_least(&h, t + 1));
    }

    #[test]
    fn matching_bounds_tau(h in hypergraph(3, 3, 7)) {
        let m = max_matching(&h);
        prop_assert_eq!(m.len(), brute_matching(h.edges()));
        for (a, b) in m.iter().tuple_combinations() {
            prop_assert!(h.edges()[*a].iter().zip(&h.edges()[*b]).all(|(x, y)| x != y));
        }
        let t = tau(&h).0;
        prop_assert!(m.len() <= t);
        prop_assert!(t <= 3 * m.len());
    }

    #[test]
    fn koenig_for_bipartite(h in hypergraph(2, 4, 10)) {
        let (m, cover) = bipartite_max_matching(&h).unwrap();
        let t = tau(&h).0;
        prop_assert_eq!(m.len(), t);
        prop_assert_eq!(cover.len(), t);
        prop_assert!(h.is_cover(&cover));
    }

    #[test]
    fn skew_matching_is_a_matching(h in hypergraph(3, 3, 7), a_part in 0usize..3) {
        let t = tau(&h).0;
        let m = skew_matching(&h, &[], a_part).unwrap();
        prop_assert!(m.len() <= t);
        for (a, b) in m.iter().tuple_combinations() {
            let (e, f) = (&h.edges()[*a], &h.edges()[*b]);
            prop_assert!((0..3).filter(|&p| p != a_part).all(|p| e[p] != f[p]));
        }
    }

    #[test]
    fn critical_subgraphs_are_minimal(h in hypergraph(3, 3, 7)) {
        let t = tau(&h).0;
        prop_assume!(t >= 1);
        let crit = critical_subgraph(&h, t).unwrap();
        prop_assert!(crit.is_subgraph_of(&h));
        prop_assert!(tau_at_least(&crit, t));
        prop_assert!(crit.edge_count() as u64 <= bollobas_bound(3, t));
        for i in 0..crit.edge_count() {
            let rest: Vec<usize> = (0..crit.edge_count()).filter(|&j| j != i).collect();
            prop_assert!(!tau_at_least(&crit.with_edge_indices(&rest), t));
        }
    }

    #[test]
    fn canonical_form_is_invariant(h in hypergraph(3, 2, 8), seed in 0usize..48) {
        let e = Enumerator::new(EnumerationConfig::new(3, 2).part_permutations(true)).unwrap();
        let g = group(3, 2, true);
        let f = &g[seed % g.len()];
        let image = PartiteHypergraph::from_edges_dedup(vec![2, 2, 2], h.edges().iter().map(|x| f(x))).unwrap();
        let boxed = PartiteHypergraph::from_edges_dedup(vec![2, 2, 2], h.edges().to_vec()).unwrap();
        prop_assert_eq!(e.canonical(e.mask_of(&boxed).unwrap()), e.canonical(e.mask_of(&image).unwrap()));
    }
}
