//! The age of the model, materialized for small sizes.
//!
//! `age_classes(n)` lists every embeddable `{<=, C}`-structure on `n` points
//! once per isomorphism class. `enumerate_age_structures(n)` fixes one
//! labeling per order type instead and lists every realizable `C`-table on
//! it, so the three single-outsider tables on a 3-antichain are counted
//! separately.

use std::collections::BTreeSet;

use crate::engine::embed_structure;
use crate::error::{Error, Result};
use crate::grid::witness_grid;
use crate::iso::{canonical_form, canonical_labeling, find_isomorphisms};
use crate::structure::{induced_structure, FiniteStructure};

pub const DEFAULT_BOUND: usize = 6;

fn check_bound(n: usize, bound: usize) -> Result<()> {
    if n > bound {
        Err(Error::Bound { requested: n, bound })
    } else {
        Ok(())
    }
}

pub fn age_classes(n: usize) -> Result<Vec<FiniteStructure>> {
    age_classes_with_bound(n, DEFAULT_BOUND)
}

/// Grown one point at a time: every class on `n` points restricts to a
/// class on `n - 1`, and the witness grid over a realization of the smaller
/// class offers every way to add a point.
pub fn age_classes_with_bound(n: usize, bound: usize) -> Result<Vec<FiniteStructure>> {
    check_bound(n, bound)?;
    let mut level: BTreeSet<FiniteStructure> = BTreeSet::new();
    level.insert(FiniteStructure::chain(0));
    for _ in 0..n {
        let mut next = BTreeSet::new();
        for s in &level {
            let nodes = embed_structure(s)?;
            for (_, q) in witness_grid(&nodes) {
                if nodes.contains(&q) {
                    continue;
                }
                let mut pts = nodes.clone();
                pts.push(q);
                next.insert(canonical_form(&induced_structure(&pts)?));
            }
        }
        level = next;
    }
    Ok(level.into_iter().collect())
}

pub fn enumerate_age_structures(n: usize) -> Result<Vec<FiniteStructure>> {
    enumerate_age_structures_with_bound(n, DEFAULT_BOUND)
}

pub fn enumerate_age_structures_with_bound(n: usize, bound: usize) -> Result<Vec<FiniteStructure>> {
    check_bound(n, bound)?;
    let mut out = BTreeSet::new();
    for class in age_classes_with_bound(n, bound)? {
        // Move the class onto the canonical labeling of its order, then
        // spread it over every automorphism of that order.
        let onto = class.relabel(&canonical_labeling(&class.order_only()));
        let order = onto.order_only();
        for sigma in find_isomorphisms(&order, &order) {
            out.insert(onto.relabel(&sigma));
        }
    }
    Ok(out.into_iter().collect())
}
