// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;
use scalemetric::metrization::{
    chain_metric, verify_quasi_pseudo_metric, ChainLevels, ChainMetric, GMatrix,
};
use scalemetric::uniformity::Relation;

fn relation(n: usize) -> impl Strategy<Value = Relation> {
    prop::collection::vec(any::<bool>(), n * n)
        .prop_map(move |bits| Relation::from_fn(n, |i, j| bits[i * n + j]))
}

fn naive_compose(a: &Relation, b: &Relation) -> Relation {
    let n = a.size();
    Relation::from_fn(n, |i, k| (0..n).any(|j| a.get(i, j) && b.get(j, k)))
}

/// Reflexive, nested levels: each level is the previous one minus random pairs.
fn levels(n: usize, depth: usize) -> impl Strategy<Value = ChainLevels> {
    prop::collection::vec(prop::collection::vec(any::<bool>(), n * n), depth).prop_map(
        move |masks| {
            let mut out = vec![Relation::from_fn(n, |_, _| true)];
            for m in masks {
                let prev = out.last().unwrap().clone();
                out.push(Relation::from_fn(n, |i, j| i == j || (prev.get(i, j) && m[i * n + j])));
            }
            ChainLevels::from_relations(out).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn compose_matches_naive(a in relation(7), b in relation(7)) {
        prop_assert_eq!(a.compose(&b).unwrap(), naive_compose(&a, &b));
    }

    #[test]
    fn compose_is_associative(a in relation(6), b in relation(6), c in relation(6)) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identity_and_inverse(a in relation(6)) {
        let id = Relation::identity(6);
        prop_assert_eq!(a.compose(&id).unwrap(), a.clone());
        prop_assert_eq!(id.compose(&a).unwrap(), a.clone());
        prop_assert_eq!(a.invert().invert(), a.clone());
        prop_assert_eq!(Relation::parse_dump(&a.dump()).unwrap(), a);
    }

    #[test]
    fn chain_metric_is_quasi_pseudo_and_below_g(lv in levels(6, 4)) {
        let d = chain_metric(&lv).unwrap();
        prop_assert!(verify_quasi_pseudo_metric(&d).passed());
        let g = GMatrix::build(&lv).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                if !g.get(i, j).is_saturated() {
                    prop_assert!(*d.get(i, j) <= g.get(i, j).value());
                }
            }
        }
        prop_assert_eq!(ChainMetric::parse_dump(&d.dump()).unwrap(), d);
    }
}
