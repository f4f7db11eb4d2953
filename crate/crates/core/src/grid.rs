//! Finite candidate sets realizing every 1-type over a finite set of nodes.
//!
//! Over a finite set `A`, the quantifier-free `{<=, C, =}`-type of a new
//! point is fixed by where it meets the finite tree spanned by `A`. Cutting
//! every path of `A` at all positions mentioned by `A` leaves finitely many
//! open segments; one point on each segment plus one branch leaving each
//! segment covers all of them.

use std::collections::BTreeMap;

use crate::node::Node;
use crate::position::Position;
use crate::relations::{leq, rel_c};
use crate::structure::FiniteStructure;

/// Quantifier-free type of `p` over the ordered set `a`.
pub type TypeKey = Vec<u8>;

const EQ: u8 = 0;
const BELOW: u8 = 1;
const ABOVE: u8 = 2;
const PERP: u8 = 3;

fn order_code(p_le_a: bool, a_le_p: bool) -> u8 {
    match (p_le_a, a_le_p) {
        (true, true) => EQ,
        (true, false) => BELOW,
        (false, true) => ABOVE,
        (false, false) => PERP,
    }
}

fn c_bits(key: &mut TypeKey, n: usize, c: impl Fn(Role, usize, usize) -> bool) {
    for i in 0..n {
        for j in i + 1..n {
            key.push(c(Role::Outsider, i, j) as u8 | (c(Role::First, i, j) as u8) << 1 | (c(Role::Second, i, j) as u8) << 2);
        }
    }
}

#[derive(Clone, Copy)]
enum Role {
    /// `C(p, a_i a_j)`
    Outsider,
    /// `C(a_i, p a_j)`
    First,
    /// `C(a_j, p a_i)`
    Second,
}

pub fn type_key(p: &Node, a: &[Node]) -> TypeKey {
    let mut key: TypeKey = a.iter().map(|x| order_code(leq(p, x), leq(x, p))).collect();
    c_bits(&mut key, a.len(), |role, i, j| match role {
        Role::Outsider => rel_c(p, &a[i], &a[j]),
        Role::First => rel_c(&a[i], p, &a[j]),
        Role::Second => rel_c(&a[j], p, &a[i]),
    });
    key
}

/// Type of point `p` of `s` over the points `over`, in the same encoding as
/// [`type_key`].
pub fn structure_type_key(s: &FiniteStructure, p: usize, over: &[usize]) -> TypeKey {
    let mut key: TypeKey = over.iter().map(|&x| order_code(s.leq(p, x), s.leq(x, p))).collect();
    c_bits(&mut key, over.len(), |role, i, j| {
        let (x, y) = (over[i], over[j]);
        match role {
            Role::Outsider => s.c(p, x, y),
            Role::First => s.c(x, p, y),
            Role::Second => s.c(y, p, x),
        }
    });
    key
}

/// Every candidate point over `a`, before merging by type.
pub fn raw_candidates(a: &[Node]) -> Vec<Node> {
    if a.is_empty() {
        return vec![Node::from_parts_unchecked(Vec::new(), Position::integer(0))];
    }
    let mut cuts: Vec<&Position> = a.iter().flat_map(|n| n.positions()).collect();
    cuts.sort();
    cuts.dedup();
    let first = cuts[0].add_int(-1);
    let last = cuts[cuts.len() - 1].add_int(1);
    let mut segments: Vec<(&Position, &Position)> = vec![(&first, cuts[0])];
    segments.extend(cuts.windows(2).map(|w| (w[0], w[1])));
    segments.push((cuts[cuts.len() - 1], &last));

    let mut out: Vec<Node> = a.to_vec();
    for (lo, hi) in segments {
        let d = Position::depth_between(lo, hi).expect("distinct cuts");
        let t = Position::turn_between(lo, hi).expect("distinct cuts");
        let bd = Position::depth_between(&t, hi).expect("t below hi");
        for x in a {
            out.push(x.path_point(&d));
            out.push(x.branch_point(&t, &bd));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// One representative (the least node) for each 1-type over `a`, in order of
/// the representatives.
pub fn witness_grid(a: &[Node]) -> Vec<(TypeKey, Node)> {
    let mut by_type: BTreeMap<TypeKey, Node> = BTreeMap::new();
    for cand in raw_candidates(a) {
        let key = type_key(&cand, a);
        by_type.entry(key).or_insert(cand);
    }
    let mut out: Vec<(TypeKey, Node)> = by_type.into_iter().collect();
    out.sort_by(|x, y| x.1.cmp(&y.1));
    out
}
