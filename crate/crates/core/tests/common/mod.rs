//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use itertools::Itertools;
use num::{BigInt, BigRational, ToPrimitive};
use semilin_core::engine::in_age;
use semilin_core::grid::witness_grid;
use semilin_core::relations::{lt, perp, rel_b};
use semilin_core::sample::Sampler;
use semilin_core::structure::{FinitePoset, FiniteStructure};
use semilin_core::{Node, Position};

/// Depth-class positions near every position of the given nodes, from a
/// few fixed grids, plus integers above all of them.
fn depth_grid(nodes: &[&Node]) -> Vec<Position> {
    let mut out = Vec::new();
    let crit: Vec<&Position> = nodes.iter().flat_map(|n| n.positions()).collect();
    for c in &crit {
        for k in 1..=4u32 {
            let scale = BigInt::from(3).pow(k);
            let base = (c.value() * BigRational::from_integer(scale.clone())).floor().to_integer();
            for delta in -2i64..=2 {
                let q = Position::new(BigRational::new(&base + delta, scale.clone()));
                if q.is_depth() {
                    out.push(q);
                }
            }
        }
    }
    let top = crit.iter().map(|c| c.floor().value().to_integer().to_i64().unwrap()).min().unwrap_or(0);
    out.extend((1..=3).map(|k| Position::integer(top - k)));
    out.sort();
    out.dedup();
    out
}

/// `C(z, xy)` read off its definition: `x` and `y` are incomparable and
/// some common upper bound of both is incomparable to `z`.
pub fn c_oracle(z: &Node, x: &Node, y: &Node) -> bool {
    if !perp(x, y) {
        return false;
    }
    depth_grid(&[x, y, z])
        .into_iter()
        .filter(|d| d < x.depth())
        .map(|d| x.path_point(&d))
        .any(|u| lt(x, &u) && lt(y, &u) && perp(&u, z))
}

/// `!B(a,b,c)` through its existential-positive form.
pub fn not_b_positive(a: &Node, b: &Node, c: &Node) -> bool {
    if a == b || b == c || c == a {
        return true;
    }
    let abc = [a.clone(), b.clone(), c.clone()];
    witness_grid(&abc).into_iter().any(|(_, x)| rel_b(a, &x, b) && rel_b(b, &x, c))
}

/// Random triples mixing arbitrary sets and antichains, so every relation
/// gets positive and negative cases.
pub fn triples(seed: u64, count: usize) -> Vec<[Node; 3]> {
    let mut s = Sampler::new(seed);
    (0..count)
        .map(|i| {
            let v = if i % 3 == 0 { s.antichain(3) } else { s.set(3) };
            [v[0].clone(), v[1].clone(), v[2].clone()]
        })
        .collect()
}

/// Every labeled partial order on `n` points, by brute force over tables.
pub fn labeled_posets(n: usize) -> Vec<FinitePoset> {
    let pairs: Vec<(usize, usize)> = (0..n).cartesian_product(0..n).filter(|(i, j)| i != j).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let le = |i: usize, j: usize| i == j || pairs.iter().position(|&p| p == (i, j)).is_some_and(|k| mask >> k & 1 == 1);
        let ok = (0..n).all(|i| {
            (0..n).all(|j| (i == j || !(le(i, j) && le(j, i))) && (0..n).all(|k| !(le(i, j) && le(j, k)) || le(i, k)))
        });
        if ok {
            out.push(FinitePoset::from_fn(n, le));
        }
    }
    out
}

/// Every C-table on `p` that respects the local invariants and embeds.
pub fn realizable_tables(p: &FinitePoset) -> Vec<FiniteStructure> {
    let n = p.len();
    let slots: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|z| (0..n).flat_map(move |x| (x + 1..n).map(move |y| (z, x, y))))
        .filter(|&(z, x, y)| p.perp(x, y) && p.perp(z, x) && p.perp(z, y))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << slots.len() {
        let mut triples = Vec::new();
        for (k, &(z, x, y)) in slots.iter().enumerate() {
            if mask >> k & 1 == 1 {
                triples.push([z, x, y]);
                triples.push([z, y, x]);
            }
        }
        let s = FiniteStructure::new(p.clone(), &triples).unwrap();
        if in_age(&s) {
            out.push(s);
        }
    }
    out
}

pub fn poset_iso(a: &FinitePoset, b: &FinitePoset) -> bool {
    let n = a.len();
    (0..n).permutations(n).any(|f| (0..n).all(|i| (0..n).all(|j| a.leq(i, j) == b.leq(f[i], f[j]))))
}

/// Number of realizable tables summed over one labeled poset per order
/// type, all by brute force.
pub fn brute_force_age_count(n: usize) -> usize {
    let mut reps: Vec<FinitePoset> = Vec::new();
    let mut total = 0;
    for p in labeled_posets(n) {
        if !reps.iter().any(|r| poset_iso(r, &p)) {
            total += realizable_tables(&p).len();
            reps.push(p);
        }
    }
    total
}

/// Whether `f` (as `f[i]`) is an automorphism of `s`, by table lookups.
pub fn is_automorphism(s: &FiniteStructure, f: &[usize]) -> bool {
    let n = s.len();
    (0..n).all(|i| (0..n).all(|j| s.leq(i, j) == s.leq(f[i], f[j])))
        && (0..n).all(|z| (0..n).all(|x| (0..n).all(|y| s.c(z, x, y) == s.c(f[z], f[x], f[y]))))
}
