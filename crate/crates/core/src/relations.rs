//! Decision procedures for the relations of the model.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::node::Node;
use crate::position::Position;

/// `a <= b`: `b` lies on the upward path of `a`.
pub fn leq(a: &Node, b: &Node) -> bool {
    if b.depth() > a.depth() {
        return false;
    }
    let k = a.turns_above(b.depth());
    b.turns() == &a.turns()[..k]
}

pub fn lt(a: &Node, b: &Node) -> bool {
    a != b && leq(a, b)
}

/// Least element of the symmetric difference of the turn sets, if it lies
/// strictly above both depths. Present exactly when the nodes are incomparable.
pub fn divergence<'a>(a: &'a Node, b: &'a Node) -> Option<&'a Position> {
    let (ta, tb) = (a.turns(), b.turns());
    let i = ta.iter().zip(tb).take_while(|(x, y)| x == y).count();
    let first = match (ta.get(i), tb.get(i)) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) => x,
        (None, Some(y)) => y,
        (None, None) => return None,
    };
    (first < a.depth() && first < b.depth()).then_some(first)
}

pub fn perp(a: &Node, b: &Node) -> bool {
    divergence(a, b).is_some()
}

/// `C(z, xy)`: `z` leaves the common path of `x` and `y` before they split.
pub fn rel_c(z: &Node, x: &Node, y: &Node) -> bool {
    match (divergence(x, y), divergence(z, x)) {
        (Some(dxy), Some(dzx)) => dzx < dxy,
        _ => false,
    }
}

pub fn rel_b(x: &Node, y: &Node, z: &Node) -> bool {
    let (xy, yz, zy, yx) = (lt(x, y), lt(y, z), lt(z, y), lt(y, x));
    (xy && yz) || (zy && yx) || (xy && perp(y, z)) || (zy && perp(y, x))
}

pub fn rel_r(x: &Node, y: &Node, z: &Node) -> bool {
    rel_c(z, x, y)
        || (lt(x, z) && lt(y, z))
        || (perp(x, z) && perp(y, z) && (lt(x, y) || lt(y, x)))
}

pub fn rel_d(x: &Node, y: &Node, u: &Node, v: &Node) -> bool {
    (rel_c(u, x, y) && rel_c(v, x, y)) || (rel_c(x, u, v) && rel_c(y, u, v))
}

fn arrow<T: Ord>(xs: &[&T]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1])
}

pub fn chain_betw<T: Ord>(x: &T, y: &T, z: &T) -> bool {
    arrow(&[x, y, z]) || arrow(&[z, y, x])
}

pub fn chain_cyc<T: Ord>(x: &T, y: &T, z: &T) -> bool {
    arrow(&[x, y, z]) || arrow(&[y, z, x]) || arrow(&[z, x, y])
}

/// The pairs `{x1, y1}` and `{x2, y2}` separate each other on the circle.
pub fn chain_sep<T: Ord>(x1: &T, y1: &T, x2: &T, y2: &T) -> bool {
    [
        [x1, x2, y1, y2],
        [x1, y2, y1, x2],
        [y1, x2, x1, y2],
        [y1, y2, x1, x2],
        [x2, x1, y2, y1],
        [x2, y1, y2, x1],
        [y2, x1, x2, y1],
        [y2, y1, x2, x1],
    ]
    .iter()
    .any(|p| arrow(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationName {
    Eq,
    Neq,
    Leq,
    Lt,
    Gt,
    Geq,
    Perp,
    B,
    C,
    R,
    D,
}

impl RelationName {
    pub const ALL: [RelationName; 11] = [
        RelationName::Eq,
        RelationName::Neq,
        RelationName::Leq,
        RelationName::Lt,
        RelationName::Gt,
        RelationName::Geq,
        RelationName::Perp,
        RelationName::B,
        RelationName::C,
        RelationName::R,
        RelationName::D,
    ];

    pub fn arity(self) -> usize {
        match self {
            RelationName::B | RelationName::C | RelationName::R => 3,
            RelationName::D => 4,
            _ => 2,
        }
    }

    /// Evaluates on nodes; `args.len()` must equal the arity.
    pub fn eval(self, args: &[&Node]) -> bool {
        assert_eq!(args.len(), self.arity(), "arity of {self}");
        let a = args;
        match self {
            RelationName::Eq => a[0] == a[1],
            RelationName::Neq => a[0] != a[1],
            RelationName::Leq => leq(a[0], a[1]),
            RelationName::Lt => lt(a[0], a[1]),
            RelationName::Gt => lt(a[1], a[0]),
            RelationName::Geq => leq(a[1], a[0]),
            RelationName::Perp => perp(a[0], a[1]),
            RelationName::B => rel_b(a[0], a[1], a[2]),
            RelationName::C => rel_c(a[0], a[1], a[2]),
            RelationName::R => rel_r(a[0], a[1], a[2]),
            RelationName::D => rel_d(a[0], a[1], a[2], a[3]),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RelationName::Eq => "eq",
            RelationName::Neq => "neq",
            RelationName::Leq => "leq",
            RelationName::Lt => "lt",
            RelationName::Gt => "gt",
            RelationName::Geq => "geq",
            RelationName::Perp => "perp",
            RelationName::B => "B",
            RelationName::C => "C",
            RelationName::R => "R",
            RelationName::D => "D",
        }
    }
}

impl fmt::Display for RelationName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RelationName::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown relation `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::node::node;

    #[test]
    fn leq_examples() {
        assert!(leq(&node(&[], "2"), &node(&[], "0")));
        let a = node(&["1/2"], "1");
        assert!(leq(&a, &a));
        let b = node(&[], "1");
        assert!(!leq(&a, &b) && !leq(&b, &a));
    }

    #[test]
    fn perp_and_divergence() {
        let a = node(&["1/2"], "1");
        let b = node(&[], "1");
        assert!(perp(&a, &b));
        assert_eq!(divergence(&a, &b).unwrap().to_string(), "1/2");
        assert!(!perp(&a, &a));
        assert!(divergence(&node(&[], "2"), &node(&[], "0")).is_none());
        let d = divergence(&node(&["1/4"], "1"), &node(&["1/2"], "1")).unwrap().clone();
        assert_eq!(d.to_string(), "1/4");
    }

    #[test]
    fn c_examples() {
        let x = node(&["1/2"], "1");
        let y = node(&[], "1");
        assert!(rel_c(&node(&["1/4"], "1"), &x, &y));
        let u = node(&[], "1/3");
        assert!(lt(&x, &u) && lt(&y, &u) && perp(&u, &node(&["1/4"], "1")));
        assert!(!rel_c(&node(&[], "0"), &x, &y));
        assert!(!rel_c(&y, &x, &x));
    }

    #[test]
    fn b_r_d_examples() {
        let (n2, n1, n0) = (node(&[], "2"), node(&[], "1"), node(&[], "0"));
        assert!(rel_b(&n2, &n1, &n0));
        assert!(rel_b(&n2, &n1, &node(&["1/2"], "1")));
        assert!(!rel_b(&n1, &n2, &n0));

        assert!(rel_r(&n2, &n1, &n0));
        assert!(rel_r(&node(&["1/2"], "2"), &node(&["1/2"], "1"), &n1));
        assert!(!rel_r(&n2, &n0, &n1));

        let x = node(&["1/2"], "1");
        let y = node(&["3/4"], "1");
        assert!(rel_d(&x, &y, &node(&["1/4"], "1"), &node(&["1/8"], "1")));
        assert!(!rel_d(&x, &x, &node(&["1/4"], "1"), &node(&["1/8"], "1")));
        assert!(!rel_d(&x, &y, &node(&["5/8"], "1"), &node(&[], "1")));
    }

    #[test]
    fn chain_relations() {
        assert!(chain_cyc(&1, &2, &3));
        assert!(chain_betw(&3, &2, &1));
        assert!(chain_sep(&1, &3, &2, &4));
        assert!(!chain_sep(&1, &2, &3, &4));
        assert!(!chain_betw(&2, &1, &3));
        assert!(!chain_cyc(&3, &2, &1));
    }

    #[test]
    fn names_round_trip() {
        for r in RelationName::ALL {
            assert_eq!(r.name().parse::<RelationName>().unwrap(), r);
        }
    }
}
