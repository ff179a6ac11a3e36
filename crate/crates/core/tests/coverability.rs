mod common;

use common::hypergraph;
use itertools::Itertools;
use monocover::coverability::{
    check_chain, check_cover_family, classify_intersecting_3graph, compute_extremal, top_edge_matching, search_chain,
    search_cover_family, ChainSearch, Classification, CoverFamily, CoverMode, CoverageChain, ExtremalCaps, Quantity,
};
use monocover::hypergraph::{
    edges_intersect, fixtures, max_matching, tau, EnumerationConfig, Enumerator, PartiteHypergraph,
};
use monocover::Error;
use proptest::prelude::*;

/// Subsets of `items` as ascending lists.
fn power_set(items: &[usize]) -> Vec<Vec<usize>> {
    (0..=items.len()).flat_map(|k| items.iter().copied().combinations(k)).collect()
}

/// Whether some chain with exactly `m` levels below `H_0` is accepted.
fn brute_chain(h: &PartiteHypergraph, k: usize, m: usize) -> bool {
    fn extend(h: &PartiteHypergraph, k: usize, levels: &mut Vec<Vec<usize>>, m: usize) -> bool {
        if levels.len() == m + 1 {
            return check_chain(&CoverageChain { host: h.clone(), k, levels: levels.clone() }).unwrap().is_accepted();
        }
        let last = levels.last().unwrap().clone();
        for sub in power_set(&last) {
            levels.push(sub);
            if extend(h, k, levels, m) {
                return true;
            }
            levels.pop();
        }
        false
    }
    extend(h, k, &mut vec![(0..h.edge_count()).collect()], m)
}

/// Whether some subset of the host's edges is an intersecting k-cover family.
fn brute_strict_family(h: &PartiteHypergraph, k: usize) -> bool {
    power_set(&(0..h.edge_count()).collect::<Vec<_>>()).into_iter().any(|sub| {
        let family = sub.iter().map(|&i| h.edges()[i].clone()).collect();
        check_cover_family(&CoverFamily { host: h.clone(), k, family, mode: CoverMode::Strict })
            .unwrap()
            .is_accepted()
    })
}

#[test]
fn fixture_families() {
    let h = fixtures::four_disjoint_edges();
    let cf = CoverFamily { host: h.clone(), k: 3, family: fixtures::four_disjoint_covers(), mode: CoverMode::Augmented };
    assert!(check_cover_family(&cf).unwrap().is_accepted());
    assert!(search_cover_family(&h, 4, CoverMode::Augmented, None).unwrap().is_none());
    assert!(matches!(
        search_cover_family(&h, 2, CoverMode::Augmented, None),
        Err(Error::ArityTooSmall { k: 2, r: 3 })
    ));
}

#[test]
fn classifier_certificates_hold_on_small_boxes() {
    let e = Enumerator::new(EnumerationConfig::new(3, 2)).unwrap();
    let all = e.enumerate(|m| e.is_intersecting(m), |h| !h.is_empty()).unwrap();
    assert!(!all.is_empty());
    for h in all {
        match classify_intersecting_3graph(&h).unwrap() {
            Classification::CommonVertex(v) => assert!(h.edges().iter().all(|e| e[v.part] == v.index)),
            Classification::TwoOfThree(t) => {
                assert!(h.edges().iter().all(|e| t.iter().filter(|v| e[v.part] == v.index).count() >= 2))
            }
            Classification::IsomorphicHStar(iso) => {
                assert_eq!(h.edge_count(), 4);
                for e in fixtures::h_star().edges() {
                    let image: Vec<usize> = (0..3).map(|p| iso[p][e[p]]).collect();
                    assert!(h.contains_edge(&image));
                }
            }
        }
    }
}

#[test]
fn small_hi_values() {
    // pinned from the exhaustive run inside parts of size 3
    let report = compute_extremal(Quantity::SmallHi { k: 2 }, 2, ExtremalCaps::new(3, None)).unwrap();
    assert_eq!(report.lower, Some(2));
    let big = compute_extremal(Quantity::BigHi { k: 2, m: None }, 2, ExtremalCaps::new(3, None)).unwrap();
    assert!(big.lower.unwrap() >= report.lower.unwrap());
    assert!(big.lower.unwrap() <= 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn search_chain_agrees_with_brute_force(h in hypergraph(2, 3, 4), extra in 0usize..2) {
        let k = 2 + extra;
        for m in 1..=2 {
            let found = search_chain(&h, k, ChainSearch { max_m: Some(m), budget: None }).unwrap();
            let brute = (1..=m).any(|j| brute_chain(&h, k, j));
            prop_assert_eq!(found.is_some(), brute, "m = {}", m);
            if let Some(c) = found {
                prop_assert!(c.m() <= m);
                prop_assert!(check_chain(&c).unwrap().is_accepted());
            }
        }
    }

    #[test]
    fn accepted_chains_are_monotone(h in hypergraph(3, 2, 5), k in 3usize..5) {
        if let Some(c) = search_chain(&h, k, ChainSearch::default()).unwrap() {
            prop_assert!(check_chain(&c).unwrap().is_accepted());
            prop_assert!(check_chain(&c.with_repeated_top()).unwrap().is_accepted());
            let weaker = CoverageChain { k: k - 1, ..c.clone() };
            prop_assert!(check_chain(&weaker).unwrap().is_accepted());
            prop_assert!(c.top().iter().tuple_combinations().all(|(&a, &b)| edges_intersect(&h.edges()[a], &h.edges()[b])));
        }
    }

    #[test]
    fn accepted_chains_with_k_equal_r_have_small_cover(h in hypergraph(3, 3, 6)) {
        if let Some(c) = search_chain(&h, 3, ChainSearch::default()).unwrap() {
            let mm = top_edge_matching(&c).unwrap();
            prop_assert!(mm.len() <= 3);
            prop_assert!(tau(&h).0 <= 9);
            prop_assert!(tau(&h).0 <= 3 * mm.len().max(usize::from(h.edge_count() > 0)));
        }
    }

    #[test]
    fn strict_family_search_agrees_with_brute_force(h in hypergraph(2, 3, 5), k in 2usize..4) {
        let found = search_cover_family(&h, k, CoverMode::Strict, None).unwrap();
        prop_assert_eq!(found.is_some(), brute_strict_family(&h, k));
        if let Some(cf) = found {
            prop_assert!(check_cover_family(&cf).unwrap().is_accepted());
        }
    }

    #[test]
    fn accepted_families_bound_the_matching(h in hypergraph(3, 2, 6)) {
        if let Some(cf) = search_cover_family(&h, 3, CoverMode::Augmented, None).unwrap() {
            prop_assert!(check_cover_family(&cf).unwrap().is_accepted());
            // a cover of r pairwise disjoint edges uses one vertex from each, so
            // two disjoint r-sets of matched edges would get disjoint covers
            prop_assert!(max_matching(&h).len() < 2 * 3);
            let aug = cf.augmented_host();
            prop_assert!(tau(&aug).0 >= tau(&h).0);
        }
    }
}
