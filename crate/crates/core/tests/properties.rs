mod common;

use common::{brute_violates, scan_codegree, span};
use itertools::Itertools;
use proptest::prelude::*;
use sparse_hyper::cleanup::{peel, peel_with_order, PeelOrder};
use sparse_hyper::extremal::{exact_max, SolverOptions};
use sparse_hyper::freeness::{check_codegree_rule, find_violation, CodegreeRule, ConstraintFamily, FreenessConstraint};
use sparse_hyper::{Hypergraph, SubsetKey, DEFAULT_BUDGET};

fn hypergraph(max_n: usize, max_r: usize, max_edges: usize) -> impl Strategy<Value = Hypergraph> {
    (2..=max_r)
        .prop_flat_map(move |r| (Just(r), r + 1..=max_n))
        .prop_flat_map(move |(r, n)| {
            let edge = proptest::sample::subsequence((0..n as u32).collect::<Vec<_>>(), r);
            (Just(n), Just(r), proptest::collection::vec(edge, 0..=max_edges))
        })
        .prop_map(|(n, r, edges)| Hypergraph::build(n, r, edges).unwrap())
}

proptest! {
    #[test]
    fn codegree_matches_a_linear_scan(h in hypergraph(9, 4, 20), size in 0usize..3) {
        for s in (0..h.n() as u32).combinations(size.min(h.r() - 1)) {
            let key = SubsetKey::new(s.clone()).unwrap();
            prop_assert_eq!(h.codegree(&key).unwrap(), scan_codegree(&h, &s));
        }
    }

    #[test]
    fn union_size_matches_set_insertion(h in hypergraph(10, 4, 12), pick in proptest::collection::vec(any::<prop::sample::Index>(), 0..5)) {
        prop_assume!(!h.is_empty());
        let ids: Vec<usize> = pick.iter().map(|i| i.index(h.edge_count())).unique().collect();
        let edges: Vec<_> = ids.iter().map(|&i| &h.edges()[i]).collect();
        prop_assert_eq!(h.union_size(&ids).unwrap(), span(&edges));
        prop_assert_eq!(h.union(&ids).unwrap().len(), span(&edges));
    }

    #[test]
    fn edges_are_canonical(h in hypergraph(10, 4, 15)) {
        prop_assert!(h.edges().iter().all(|e| e.windows(2).all(|w| w[0] < w[1])));
        prop_assert!(h.edges().windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(Hypergraph::from_text(&h.to_text()).unwrap(), h);
    }

    #[test]
    fn freeness_survives_edge_deletion(h in hypergraph(9, 3, 12), e in 2usize..4, slack in 0usize..4, keep in any::<u64>()) {
        let v = (e * h.r()).saturating_sub(slack + 1).max(1);
        let c = FreenessConstraint::new(v, e).unwrap();
        let sub = h.retain_edges(|id| keep >> (id % 64) & 1 == 1);
        let whole = find_violation(&h, c, DEFAULT_BUDGET).unwrap();
        let part = find_violation(&sub, c, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(whole.violation().is_some(), brute_violates(&h, v, e));
        if whole.is_free() {
            prop_assert!(part.is_free());
        }
    }

    #[test]
    fn peeling_is_idempotent_and_meets_the_rule(h in hypergraph(9, 4, 20), k_off in 0usize..3, e in 2usize..5, seed in any::<u64>()) {
        let k = 1 + k_off % (h.r() - 1);
        for order in [PeelOrder::Canonical, PeelOrder::Shuffled { seed }] {
            let (p, log) = peel_with_order(&h, k, e, order).unwrap();
            let rule = CodegreeRule { k, e };
            prop_assert!(check_codegree_rule(&p, rule).unwrap().satisfied());
            prop_assert_eq!(p.edge_count() + log.len(), h.edge_count());
            let (again, log2) = peel(&p, k, e).unwrap();
            prop_assert_eq!(&again, &p);
            prop_assert!(log2.is_empty());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exact_optimum_grows_with_n(r in 2usize..4, e in 2usize..4, slack in 0usize..3) {
        let v = (e * r - 1).saturating_sub(slack).max(r);
        let family = ConstraintFamily::single(FreenessConstraint::new(v, e).unwrap());
        let values: Vec<usize> = (r..=6)
            .map(|n| exact_max(n, r, &family, SolverOptions::default()).unwrap().optimum)
            .collect();
        prop_assert!(values.windows(2).all(|w| w[0] <= w[1]), "{:?}", values);
    }
}
