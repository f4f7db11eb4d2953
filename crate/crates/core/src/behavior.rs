//! Behaviors of canonical functions on 2-types, and their realizability on
//! small configurations.
//!
//! A configuration is a finite structure with a convex extension `≺`; each
//! ordered pair of distinct points then has one of four types. A behavior
//! rewrites every pair type, and survives size `k` when every rewritten
//! `k`-point configuration is again realizable. This is closure on finite
//! configurations only; whether a total function with that behavior exists
//! is a separate matter.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::convex::{convex_extensions, is_convex_extension, ConvexExtension};
use crate::engine::in_age;
use crate::enumerate::enumerate_age_structures;
use crate::error::{Error, Result};
use crate::node::Node;
use crate::csp::{solve, Instance};
use crate::node::node;
use crate::relations::{divergence, lt, perp, RelationName};
use crate::transform::{reroot, verify_preserves, RerootSpec};
use crate::structure::{FinitePoset, FiniteStructure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PairType {
    Lt,
    Gt,
    PerpBefore,
    PerpAfter,
}

impl PairType {
    pub const ALL: [PairType; 4] = [PairType::Lt, PairType::Gt, PairType::PerpBefore, PairType::PerpAfter];

    pub fn reversed(self) -> PairType {
        match self {
            PairType::Lt => PairType::Gt,
            PairType::Gt => PairType::Lt,
            PairType::PerpBefore => PairType::PerpAfter,
            PairType::PerpAfter => PairType::PerpBefore,
        }
    }

    pub fn is_perp(self) -> bool {
        matches!(self, PairType::PerpBefore | PairType::PerpAfter)
    }

    /// Whether the first point is `≺`-before the second.
    pub fn is_before(self) -> bool {
        matches!(self, PairType::Lt | PairType::PerpBefore)
    }

    /// Type of `(x, y)` in a configuration.
    pub fn of(ext: &ConvexExtension, x: usize, y: usize) -> PairType {
        let a = &ext.base;
        if a.lt(x, y) {
            PairType::Lt
        } else if a.lt(y, x) {
            PairType::Gt
        } else if ext.prec(x, y) {
            PairType::PerpBefore
        } else {
            PairType::PerpAfter
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for PairType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairType::Lt => "LT",
            PairType::Gt => "GT",
            PairType::PerpBefore => "PERP_BEFORE",
            PairType::PerpAfter => "PERP_AFTER",
        })
    }
}

/// A map on pair types commuting with reversal; fixed by where `Lt` and
/// `PerpBefore` go.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Behavior {
    map: [PairType; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BehaviorClass {
    Flat,
    Thin,
    OrderPreserving,
    Other,
}

impl fmt::Display for BehaviorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BehaviorClass::Flat => "flat",
            BehaviorClass::Thin => "thin",
            BehaviorClass::OrderPreserving => "order-preserving",
            BehaviorClass::Other => "other",
        })
    }
}

impl Behavior {
    pub fn new(lt: PairType, perp_before: PairType) -> Behavior {
        let mut map = [lt; 4];
        map[PairType::Lt.index()] = lt;
        map[PairType::Gt.index()] = lt.reversed();
        map[PairType::PerpBefore.index()] = perp_before;
        map[PairType::PerpAfter.index()] = perp_before.reversed();
        Behavior { map }
    }

    /// From a full table `[Lt, Gt, PerpBefore, PerpAfter]`, rejecting
    /// tables that do not commute with reversal.
    pub fn from_table(map: [PairType; 4]) -> Result<Behavior> {
        let b = Behavior::new(map[0], map[2]);
        if b.map != map {
            return Err(Error::Precondition(format!(
                "behavior must send reversed pairs to reversed images: {}",
                Self::asymmetry(&map)
            )));
        }
        Ok(b)
    }

    fn asymmetry(map: &[PairType; 4]) -> String {
        let (t, u) = if map[1] != map[0].reversed() { (0, 1) } else { (2, 3) };
        format!("{} maps to {} but {} maps to {}", PairType::ALL[t], map[t], PairType::ALL[u], map[u])
    }

    pub fn identity() -> Behavior {
        Behavior::new(PairType::Lt, PairType::PerpBefore)
    }

    pub fn all() -> Vec<Behavior> {
        PairType::ALL.iter().cartesian_product(PairType::ALL).map(|(&l, p)| Behavior::new(l, p)).collect()
    }

    pub fn apply(&self, t: PairType) -> PairType {
        self.map[t.index()]
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Behavior) -> Behavior {
        Behavior::new(self.apply(first.apply(PairType::Lt)), self.apply(first.apply(PairType::PerpBefore)))
    }

    pub fn class(&self) -> BehaviorClass {
        let (l, p) = (self.apply(PairType::Lt), self.apply(PairType::PerpBefore));
        if l.is_perp() && p.is_perp() {
            BehaviorClass::Flat
        } else if !l.is_perp() && !p.is_perp() {
            BehaviorClass::Thin
        } else if l == PairType::Lt && p.is_perp() {
            BehaviorClass::OrderPreserving
        } else {
            BehaviorClass::Other
        }
    }
}

impl fmt::Display for Behavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = PairType::ALL.iter().map(|&t| format!("{t}->{}", self.apply(t))).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Whether the rewritten pair types of `ext` under `b` are realized by
/// some configuration. Returns it when they are.
pub fn rewrite(b: &Behavior, ext: &ConvexExtension) -> Option<ConvexExtension> {
    let n = ext.base.len();
    let ty = |x: usize, y: usize| b.apply(PairType::of(ext, x, y));
    let poset = FinitePoset::from_fn(n, |x, y| x == y || ty(x, y) == PairType::Lt);
    if !poset_ok(&poset) {
        return None;
    }
    // the image order: sort by number of predecessors, then confirm it is linear
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (0..n).filter(|&y| y != x && ty(y, x).is_before()).count());
    let linear = order.iter().tuple_combinations().all(|(&x, &y)| ty(x, y).is_before());
    if !linear {
        return None;
    }
    let triples: Vec<(usize, usize, usize)> =
        (0..n).tuple_combinations().filter(|&(x, y, z)| poset.perp(x, y) && poset.perp(x, z) && poset.perp(y, z)).collect();
    for outsiders in (0..triples.len()).map(|_| 0..3).multi_cartesian_product() {
        let mut cs = Vec::new();
        for (&(x, y, z), o) in triples.iter().zip(outsiders) {
            let (out, p, q) = [(x, y, z), (y, x, z), (z, x, y)][o];
            cs.push([out, p, q]);
            cs.push([out, q, p]);
        }
        let s = FiniteStructure::new(poset.clone(), &cs).expect("indices in range");
        if is_convex_extension(&s, &order) && in_age(&s) {
            return Some(ConvexExtension { base: s, order });
        }
    }
    None
}

fn poset_ok(p: &FinitePoset) -> bool {
    let n = p.len();
    let antisym = (0..n).tuple_combinations().all(|(x, y)| !(p.leq(x, y) && p.leq(y, x)));
    let trans = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !(p.leq(x, y) && p.leq(y, z)) || p.leq(x, z))));
    antisym && trans && p.is_semilinear()
}

pub const MAX_CONFIGURATION: usize = 4;

/// `None` when every `k`-point configuration survives rewriting; otherwise
/// the first one that does not.
pub fn behavior_consistent(b: &Behavior, k: usize) -> Result<Option<ConvexExtension>> {
    if k > MAX_CONFIGURATION {
        return Err(Error::Bound { requested: k, bound: MAX_CONFIGURATION });
    }
    for s in enumerate_age_structures(k)? {
        for ext in convex_extensions(&s)? {
            if rewrite(b, &ext).is_none() {
                return Ok(Some(ext));
            }
        }
    }
    Ok(None)
}

pub fn enumerate_surviving_behaviors() -> Result<Vec<Behavior>> {
    let mut out = Vec::new();
    for b in Behavior::all() {
        if behavior_consistent(&b, 3)?.is_none() {
            out.push(b);
        }
    }
    Ok(out)
}

/// A rewriting known to break the tree axioms, with the configuration it
/// breaks.
#[derive(Debug, Clone)]
pub struct ContradictionPattern {
    pub name: &'static str,
    pub behavior: Behavior,
    pub configuration: ConvexExtension,
}

/// The three-point configurations that rule out mixed behaviors: each is
/// realizable, and its rewriting forces a point below two incomparable
/// points.
pub fn contradiction_patterns() -> Vec<ContradictionPattern> {
    use PairType::*;
    // points 0, 1, 2; `order` lists them by ≺
    let config = |le: fn(usize, usize) -> bool, order: Vec<usize>| ConvexExtension {
        base: FiniteStructure::from_fns(3, le, |_, _, _| false),
        order,
    };
    // 0 < 1, 2 incomparable to both and ≺-first
    let side_first = config(|x, y| x == y || (x, y) == (0, 1), vec![2, 0, 1]);
    // 0 < 1, 2 incomparable to both and ≺-last
    let side_last = config(|x, y| x == y || (x, y) == (0, 1), vec![0, 1, 2]);
    // 0, 1 incomparable, both below 2
    let vee = config(|x, y| x == y || y == 2, vec![0, 1, 2]);
    vec![
        ContradictionPattern { name: "comparable to perp-before, perp-before to below", behavior: Behavior::new(PerpBefore, Lt), configuration: side_first.clone() },
        ContradictionPattern { name: "comparable to perp-after, perp-before to below", behavior: Behavior::new(PerpAfter, Lt), configuration: side_first },
        ContradictionPattern { name: "comparable to perp, perp-before to above", behavior: Behavior::new(PerpBefore, Gt), configuration: side_last },
        ContradictionPattern { name: "comparable reversed, perp kept", behavior: Behavior::new(Gt, PerpBefore), configuration: vee },
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrbitLabel {
    Below,
    Above,
    PerpBefore,
    PerpAfter,
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitLabel::Below => "U_lt",
            OrbitLabel::Above => "U_gt",
            OrbitLabel::PerpBefore => "U_perp_before",
            OrbitLabel::PerpAfter => "U_perp_after",
        })
    }
}

/// How incomparable nodes are ordered, judged at their divergence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrecHint {
    /// The node whose path turns at the divergence comes after.
    TurnSideAfter,
    TurnSideBefore,
}

impl PrecHint {
    /// Whether `p` comes before `a`; both must be incomparable.
    pub fn before(self, p: &Node, a: &Node) -> bool {
        let d = divergence(p, a).expect("incomparable nodes diverge");
        let p_turns = p.turns().contains(d);
        match self {
            PrecHint::TurnSideAfter => !p_turns,
            PrecHint::TurnSideBefore => p_turns,
        }
    }
}

pub fn orbit_of(p: &Node, a: &Node, hint: PrecHint) -> Result<OrbitLabel> {
    if p == a {
        return Err(Error::Precondition(format!("{p} is the constant itself")));
    }
    Ok(if lt(p, a) {
        OrbitLabel::Below
    } else if lt(a, p) {
        OrbitLabel::Above
    } else if hint.before(p, a) {
        OrbitLabel::PerpBefore
    } else {
        OrbitLabel::PerpAfter
    })
}

/// One hard-coded configuration around a constant, with the verdict its
/// role in the case analysis requires.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigCheck {
    pub name: &'static str,
    pub expect_realizable: bool,
    pub realizable: bool,
}

impl ConfigCheck {
    pub fn passed(&self) -> bool {
        self.expect_realizable == self.realizable
    }
}

impl fmt::Display for ConfigCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let want = if self.expect_realizable { "realizable" } else { "unrealizable" };
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{verdict}  {:<48} expected {want}", self.name)
    }
}

/// Image patterns that a function fixing a constant `a` cannot produce, and
/// one it can: re-hanging everything below the points above `a`.
pub fn one_constant_checks() -> Result<Vec<ConfigCheck>> {
    let unrealizable = [
        ("u below z2 below z1, u perp z1", "u < z2\nz2 < z1\nu || z1"),
        ("z1 below z2, u below z1, u perp z2", "z1 < z2\nu < z1\nu || z2"),
        ("p below two incomparable points", "p < r\np < s\nr || s"),
    ];
    let mut out = Vec::new();
    for (name, text) in unrealizable {
        let sat = solve(&Instance::parse(text)?)?.is_some();
        out.push(ConfigCheck { name, expect_realizable: false, realizable: sat });
    }
    out.push(ConfigCheck { name: "empty configuration", expect_realizable: true, realizable: solve(&Instance::default())?.is_some() });

    // a, two points above it, one incomparable point on each side, one below
    let a = node(&["1/2"], "2");
    let above = [node(&["1/2"], "1"), node(&[], "0")];
    let pts = vec![a.clone(), above[0].clone(), above[1].clone(), node(&[], "1"), node(&["1/2", "3/2"], "2"), node(&["1/2"], "3")];
    let hint = PrecHint::TurnSideAfter;
    let sides_ok = orbit_of(&pts[3], &a, hint)? == OrbitLabel::PerpBefore && orbit_of(&pts[4], &a, hint)? == OrbitLabel::PerpAfter;
    let m = reroot(&pts, &RerootSpec::Chain(above.to_vec()))?;
    let realized = sides_ok
        && verify_preserves(&m, RelationName::B).is_ok()
        && m.image[1..3].iter().all(|z| perp(&m.image[0], z));
    out.push(ConfigCheck { name: "rerooting above the constant", expect_realizable: true, realizable: realized });
    Ok(out)
}
