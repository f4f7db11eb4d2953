//! Convex linear extensions of finite structures.
//!
//! A linear order `≺` on a finite structure is a convex extension when it
//! refines `<`, every down-set `{x : x <= y}` is a `≺`-interval ending at
//! `y`, and an outsider of a `C`-triple never sits between the other two.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::engine::in_age;
use crate::error::{Error, Result};
use crate::structure::FiniteStructure;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ConvexExtension {
    pub base: FiniteStructure,
    /// `order[k]` is the element in position `k`.
    pub order: Vec<usize>,
}

impl ConvexExtension {
    /// Position of each element in the order.
    pub fn rank(&self) -> Vec<usize> {
        ranks(&self.order)
    }

    pub fn prec(&self, x: usize, y: usize) -> bool {
        let r = self.rank();
        r[x] < r[y]
    }
}

fn ranks(order: &[usize]) -> Vec<usize> {
    let mut r = vec![0; order.len()];
    for (k, &i) in order.iter().enumerate() {
        r[i] = k;
    }
    r
}

/// Checks the defining conditions directly.
pub fn is_convex_extension(a: &FiniteStructure, order: &[usize]) -> bool {
    let n = a.len();
    if order.len() != n || order.iter().copied().sorted().ne(0..n) {
        return false;
    }
    let r = ranks(order);
    for x in 0..n {
        for y in 0..n {
            if a.lt(x, y) && r[x] > r[y] {
                return false;
            }
            if a.lt(x, y) {
                for z in 0..n {
                    if a.perp(z, y) && r[x] < r[z] && r[z] < r[y] {
                        return false;
                    }
                }
            }
            for z in 0..n {
                if a.c(z, x, y) && (r[x] < r[z]) != (r[y] < r[z]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every convex extension, built by layering: the top of a tree comes last
/// after its down-set; a forest splits into the two groups separated at its
/// lowest branching and the groups are placed in either order.
pub fn convex_extensions(a: &FiniteStructure) -> Result<Vec<ConvexExtension>> {
    let report = a.validate();
    if !report.is_valid() {
        return Err(Error::Precondition(format!("invalid structure: {report}")));
    }
    if !in_age(a) {
        return Err(Error::Precondition("structure does not embed into the model".into()));
    }
    let all: Vec<usize> = (0..a.len()).collect();
    let mut orders = layer(a, &all)?;
    orders.sort();
    orders.dedup();
    Ok(orders.into_iter().map(|order| ConvexExtension { base: a.clone(), order }).collect())
}

fn layer(a: &FiniteStructure, set: &[usize]) -> Result<Vec<Vec<usize>>> {
    if set.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    let maxima: Vec<usize> = set.iter().copied().filter(|&i| !set.iter().any(|&j| a.lt(i, j))).collect();
    if let [top] = maxima[..] {
        let rest: Vec<usize> = set.iter().copied().filter(|&i| i != top).collect();
        let mut out = layer(a, &rest)?;
        for o in &mut out {
            o.push(top);
        }
        return Ok(out);
    }
    let (left, right) = split_maxima(a, &maxima)?;
    let under = |group: &[usize]| -> Vec<usize> {
        set.iter().copied().filter(|&i| group.iter().any(|&m| a.leq(i, m))).collect()
    };
    let lo = layer(a, &under(&left))?;
    let ro = layer(a, &under(&right))?;
    let mut out = Vec::with_capacity(2 * lo.len() * ro.len());
    for l in &lo {
        for r in &ro {
            out.push(l.iter().chain(r).copied().collect());
            out.push(r.iter().chain(l).copied().collect());
        }
    }
    Ok(out)
}

/// Two maxima share a side of the lowest branching iff some third maximum
/// is a `C`-outsider to them.
fn split_maxima(a: &FiniteStructure, maxima: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    if let [x, y] = maxima[..] {
        return Ok((vec![x], vec![y]));
    }
    let k = maxima.len();
    let mut group: Vec<usize> = (0..k).collect();
    for i in 0..k {
        for j in i + 1..k {
            if maxima.iter().any(|&l| a.c(l, maxima[i], maxima[j])) {
                let (gi, gj) = (group[i], group[j]);
                for g in group.iter_mut() {
                    if *g == gj {
                        *g = gi;
                    }
                }
            }
        }
    }
    let labels: Vec<usize> = group.iter().copied().unique().collect();
    if labels.len() != 2 {
        return Err(Error::Precondition(format!(
            "maximal elements {maxima:?} do not split into two C-groups"
        )));
    }
    let pick = |l: usize| (0..k).filter(|&i| group[i] == l).map(|i| maxima[i]).collect();
    Ok((pick(labels[0]), pick(labels[1])))
}

/// Every convex extension, by testing all `n!` orders.
pub fn convex_extensions_filtered(a: &FiniteStructure) -> Vec<ConvexExtension> {
    let n = a.len();
    (0..n)
        .permutations(n)
        .filter(|o| is_convex_extension(a, o))
        .sorted()
        .map(|order| ConvexExtension { base: a.clone(), order })
        .collect()
}
