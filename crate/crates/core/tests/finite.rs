mod common;

use std::collections::BTreeSet;

use semilin_core::convex::{convex_extensions, convex_extensions_filtered};
use semilin_core::engine::embed_structure;
use semilin_core::enumerate::{age_classes, enumerate_age_structures};
use semilin_core::iso::is_isomorphic;
use semilin_core::structure::{induced_structure, FinitePoset, FiniteStructure};

#[test]
fn age_counts_match_brute_force() {
    for n in 1..=4 {
        // one representative labeled poset per order type, counting its tables
        let mut reps: Vec<FinitePoset> = Vec::new();
        let mut labeled_total = 0;
        let mut all = Vec::new();
        for p in common::labeled_posets(n) {
            let tables = common::realizable_tables(&p);
            if !reps.iter().any(|r| common::poset_iso(r, &p)) {
                labeled_total += tables.len();
                reps.push(p);
            }
            all.extend(tables);
        }
        assert_eq!(enumerate_age_structures(n).unwrap().len(), labeled_total, "n={n}");

        let mut classes: Vec<FiniteStructure> = Vec::new();
        for s in all {
            if !classes.iter().any(|c| is_isomorphic(c, &s)) {
                classes.push(s);
            }
        }
        assert_eq!(age_classes(n).unwrap().len(), classes.len(), "n={n}");
    }
}

#[test]
fn enumeration_closed_under_substructures() {
    for n in 2..=5 {
        let smaller = age_classes(n - 1).unwrap();
        for s in enumerate_age_structures(n).unwrap() {
            for drop in 0..n {
                let keep: Vec<usize> = (0..n).filter(|&i| i != drop).collect();
                let sub = s.restrict(&keep);
                assert!(smaller.iter().any(|c| is_isomorphic(c, &sub)));
            }
        }
    }
}

#[test]
fn embed_round_trip() {
    for n in 1..=5 {
        for s in enumerate_age_structures(n).unwrap() {
            let nodes = embed_structure(&s).unwrap();
            assert_eq!(induced_structure(&nodes).unwrap(), s);
            assert!(s.validate().is_valid());
        }
    }
}

#[test]
fn layering_matches_filter() {
    for n in 1..=5 {
        for s in enumerate_age_structures(n).unwrap() {
            let layered = convex_extensions(&s).unwrap();
            assert!(!layered.is_empty());
            assert_eq!(layered, convex_extensions_filtered(&s), "{}", s.to_json());
        }
    }
}

#[test]
fn distinct_tables_on_one_order() {
    let s = enumerate_age_structures(3).unwrap();
    let orders: BTreeSet<_> = s.iter().map(|x| x.order_only()).collect();
    assert_eq!(orders.len(), 4);
}
