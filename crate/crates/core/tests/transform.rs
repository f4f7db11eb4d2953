use itertools::Itertools;
use semilin_core::relations::{perp, rel_c, rel_r, RelationName};
use semilin_core::sample::Sampler;
use semilin_core::transform::*;

#[test]
fn rerootings_preserve_betweenness() {
    let mut s = Sampler::new(31);
    for i in 0..200 {
        let pts = s.set(2 + i % 6);
        let pivot = pts[s.index(pts.len())].clone();
        let m = reroot(&pts, &RerootSpec::Pivot(pivot)).unwrap();
        assert!(verify_preserves(&m, RelationName::B).is_ok());
        assert!(verify_preserves(&m, RelationName::Neq).is_ok());
        assert!(matches!(classify_finite_map(&m), MapClass::RerootingLike | MapClass::Flat | MapClass::Thin | MapClass::OrderPreserving));
        let id = reroot(&pts, &RerootSpec::Chain(vec![])).unwrap();
        let pairs: Vec<bool> = pts.iter().tuple_combinations().map(|(a, b)| perp(a, b)).collect();
        let want = if pairs.iter().all(|&p| p) {
            MapClass::Flat
        } else if pairs.iter().all(|&p| !p) {
            MapClass::Thin
        } else {
            MapClass::OrderPreserving
        };
        assert_eq!(classify_finite_map(&id), want);
    }
}

#[test]
fn flatten_turns_r_into_c() {
    let mut s = Sampler::new(32);
    for i in 0..100 {
        let pts = s.set(1 + i % 8);
        let m = flatten(&pts).unwrap();
        for (a, b) in (0..pts.len()).tuple_combinations() {
            assert!(perp(&m.image[a], &m.image[b]));
        }
        for t in (0..pts.len()).permutations(3.min(pts.len())) {
            if let [a, b, c] = t[..] {
                assert_eq!(rel_r(&pts[a], &pts[b], &pts[c]), rel_c(&m.image[c], &m.image[a], &m.image[b]));
            }
        }
    }
}

#[test]
fn projection_keeps_comparabilities() {
    let mut s = Sampler::new(33);
    for _ in 0..100 {
        let pts = s.set(6);
        let m = project_to_chain(&pts).unwrap();
        assert!(verify_preserves(&m, RelationName::Neq).is_ok());
        for (a, b) in (0..6).tuple_combinations() {
            assert!(!perp(&m.image[a], &m.image[b]));
            if semilin_core::relations::lt(&pts[a], &pts[b]) {
                assert!(semilin_core::relations::lt(&m.image[a], &m.image[b]));
            }
        }
    }
}

#[test]
fn five_antichains_have_a_flip() {
    let mut s = Sampler::new(34);
    for _ in 0..50 {
        let pts = s.antichain(5);
        let (i, j, f) = five_point_flip(&pts).unwrap();
        assert_eq!((f[i], f[j]), (j, i));
    }
}

#[test]
fn mapped_sets_round_trip_through_json() {
    let mut s = Sampler::new(35);
    let m = flatten(&s.set(4)).unwrap();
    assert_eq!(MappedSet::from_json(&m.to_json()).unwrap(), m);
}
