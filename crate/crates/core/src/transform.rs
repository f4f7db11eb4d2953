//! Finite restrictions of the functions used to tell the reducts apart:
//! rerootings, flat maps, projections onto a chain.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iso::find_isomorphisms;
use crate::node::Node;
use crate::position::Position;
use crate::relations::{leq, lt, perp, rel_c, rel_r, RelationName};
use crate::structure::induced_structure;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappedSet {
    pub source: Vec<Node>,
    pub image: Vec<Node>,
}

impl MappedSet {
    pub fn new(source: Vec<Node>, image: Vec<Node>) -> Result<MappedSet> {
        if source.len() != image.len() {
            return Err(Error::Dimension(format!("{} source points, {} image points", source.len(), image.len())));
        }
        Ok(MappedSet { source, image })
    }

    pub fn identity(points: &[Node]) -> MappedSet {
        MappedSet { source: points.to_vec(), image: points.to_vec() }
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    pub fn from_json(s: &str) -> Result<MappedSet> {
        let m: MappedSet = serde_json::from_str(s)?;
        MappedSet::new(m.source, m.image)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("nodes always serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RerootSpec {
    /// `S` is every point at or above the pivot.
    Pivot(Node),
    Chain(Vec<Node>),
}

fn distinct(points: &[Node]) -> Result<()> {
    match points.iter().duplicates().next() {
        Some(p) => Err(Error::Precondition(format!("{p} listed twice"))),
        None => Ok(()),
    }
}

/// First pair violating the rerooting conditions for the given `S`.
fn reroot_violation(m: &MappedSet, in_s: &[bool]) -> Option<(usize, usize)> {
    let (src, img) = (&m.source, &m.image);
    let n = src.len();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                if src[x] != src[y] {
                    return Some((x, y));
                }
                continue;
            }
            let ok = match (in_s[x], in_s[y]) {
                (true, true) => lt(&src[x], &src[y]) == lt(&img[y], &img[x]),
                (false, false) => {
                    lt(&src[x], &src[y]) == lt(&img[x], &img[y]) && perp(&src[x], &src[y]) == perp(&img[x], &img[y])
                }
                (false, true) => {
                    (!lt(&src[x], &src[y]) || perp(&img[x], &img[y]))
                        && (!perp(&src[x], &src[y]) || lt(&img[x], &img[y]))
                }
                (true, false) => true,
            };
            if !ok || img[x] == img[y] {
                return Some((x, y));
            }
        }
    }
    None
}

/// A rerooting of `points` with respect to `S`: `S` is turned upside down
/// and everything hanging off it is re-hung below.
pub fn reroot(points: &[Node], spec: &RerootSpec) -> Result<MappedSet> {
    distinct(points)?;
    let in_s: Vec<bool> = match spec {
        RerootSpec::Pivot(p) => points.iter().map(|x| leq(p, x)).collect(),
        RerootSpec::Chain(chain) => {
            if let Some(c) = chain.iter().find(|c| !points.contains(c)) {
                return Err(Error::Precondition(format!("{c} is not one of the points")));
            }
            for (a, b) in chain.iter().tuple_combinations() {
                if perp(a, b) {
                    return Err(Error::Precondition(format!("S is not a chain: {a} and {b} are incomparable")));
                }
            }
            let in_s: Vec<bool> = points.iter().map(|x| chain.contains(x)).collect();
            for (i, x) in points.iter().enumerate() {
                if !in_s[i] && chain.iter().any(|s| lt(s, x)) {
                    return Err(Error::Precondition(format!("S is not upward closed: {x} lies above it")));
                }
            }
            in_s
        }
    };
    let mut s: Vec<usize> = (0..points.len()).filter(|&i| in_s[i]).collect();
    if s.is_empty() {
        return Ok(MappedSet::identity(points));
    }
    // s[0] is the lowest point of S
    s.sort_by(|&a, &b| points[b].depth().cmp(points[a].depth()));
    let mut image: Vec<Option<Node>> = vec![None; points.len()];
    for (j, &i) in s.iter().enumerate() {
        image[i] = Some(Node::from_parts_unchecked(Vec::new(), Position::integer(j as i64 + 1)));
    }
    // Points outside S group by how many points of S they are incomparable
    // to; group i hangs off the new trunk between depths i - 1 and i.
    let rest: Vec<usize> = (0..points.len()).filter(|&i| !in_s[i]).collect();
    if let Some(lo) = rest.iter().flat_map(|&i| points[i].positions()).min().map(|p| p.floor().add_int(-1)) {
        for &x in &rest {
            let group = 1 + s.iter().filter(|&&j| perp(&points[j], &points[x])).count() as i64;
            let turn = Position::ratio(2 * group - 1, 2);
            let shift = |p: &Position| Position::new(p.value() - lo.value()).add_int(group);
            let mut turns = vec![turn];
            turns.extend(points[x].turns().iter().map(shift));
            image[x] = Some(Node::from_parts_unchecked(turns, shift(points[x].depth())));
        }
    }
    let m = MappedSet { source: points.to_vec(), image: image.into_iter().map(|q| q.expect("every point mapped")).collect() };
    if let Some((x, y)) = reroot_violation(&m, &in_s) {
        return Err(Error::Internal(format!("rerooting fails on ({}, {})", points[x], points[y])));
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Indices into the source.
    pub tuple: Vec<usize>,
    pub holds_on_source: bool,
}

/// Whether `relation` holds on each source tuple exactly when it holds on
/// the image tuple; tuples are scanned lexicographically by index.
pub fn verify_preserves(m: &MappedSet, relation: RelationName) -> std::result::Result<(), Counterexample> {
    let n = m.len();
    for tuple in (0..relation.arity()).map(|_| 0..n).multi_cartesian_product() {
        let s: Vec<&Node> = tuple.iter().map(|&i| &m.source[i]).collect();
        let t: Vec<&Node> = tuple.iter().map(|&i| &m.image[i]).collect();
        let holds = relation.eval(&s);
        if holds != relation.eval(&t) {
            return Err(Counterexample { tuple, holds_on_source: holds });
        }
    }
    Ok(())
}

/// Sends every point to a leaf just below it on a fresh branch, so that
/// `R(a, b, c)` becomes `C(f(c), f(a) f(b))`.
pub fn flatten(points: &[Node]) -> Result<MappedSet> {
    distinct(points)?;
    let criticals: Vec<&Position> = points.iter().flat_map(|p| p.positions()).sorted().dedup().collect();
    let mut image = Vec::with_capacity(points.len());
    for v in points {
        let d = v.depth();
        let last = criticals.iter().rev().find(|&&c| c < d).map(|&c| c.clone()).unwrap_or_else(|| d.add_int(-1));
        let t = Position::turn_between(&last, d)?;
        let depth = Position::depth_between(&t, d)?;
        let mut turns = v.turns().to_vec();
        turns.push(t);
        image.push(Node::new(turns, depth)?);
    }
    let m = MappedSet { source: points.to_vec(), image };
    let n = points.len();
    for (a, b) in (0..n).tuple_combinations() {
        if !perp(&m.image[a], &m.image[b]) {
            return Err(Error::Internal(format!("flatten images of {} and {} are comparable", points[a], points[b])));
        }
    }
    for (a, b, c) in (0..n).tuple_combinations::<(_, _, _)>() {
        for [a, b, c] in [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
            if rel_r(&points[a], &points[b], &points[c]) != rel_c(&m.image[c], &m.image[a], &m.image[b]) {
                return Err(Error::Internal(format!(
                    "flatten breaks R({}, {}, {})",
                    points[a], points[b], points[c]
                )));
            }
        }
    }
    Ok(m)
}

/// Puts every point on the empty-turn chain at its own depth; points with
/// equal depths are pushed down, later ones (in node order) first.
pub fn project_to_chain(points: &[Node]) -> Result<MappedSet> {
    distinct(points)?;
    let mut depths: Vec<Position> = points.iter().map(|p| p.depth().clone()).collect();
    let mut by_node: Vec<usize> = (0..points.len()).collect();
    by_node.sort_by(|&a, &b| points[a].cmp(&points[b]));
    loop {
        let clash = by_node
            .iter()
            .tuple_combinations()
            .find(|(&a, &b)| depths[a] == depths[b])
            .map(|(_, &b)| b);
        let Some(b) = clash else { break };
        let d = depths[b].clone();
        let next = depths.iter().filter(|e| **e > d).min().cloned().unwrap_or_else(|| d.add_int(1));
        depths[b] = Position::depth_between(&d, &next)?;
    }
    let image = depths.into_iter().map(|d| Node::from_parts_unchecked(Vec::new(), d)).collect();
    let m = MappedSet { source: points.to_vec(), image };
    for (a, b) in (0..points.len()).tuple_combinations() {
        if lt(&points[a], &points[b]) && !lt(&m.image[a], &m.image[b])
            || lt(&points[b], &points[a]) && !lt(&m.image[b], &m.image[a])
        {
            return Err(Error::Internal(format!("projection reverses {} and {}", points[a], points[b])));
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapClass {
    Flat,
    Thin,
    OrderPreserving,
    RerootingLike,
    Other,
}

impl fmt::Display for MapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapClass::Flat => "flat",
            MapClass::Thin => "thin",
            MapClass::OrderPreserving => "order-preserving",
            MapClass::RerootingLike => "rerooting-like",
            MapClass::Other => "other",
        })
    }
}

pub fn classify_finite_map(m: &MappedSet) -> MapClass {
    let n = m.len();
    let pairs = || (0..n).tuple_combinations::<(usize, usize)>();
    if pairs().all(|(a, b)| perp(&m.image[a], &m.image[b])) {
        return MapClass::Flat;
    }
    if pairs().all(|(a, b)| !perp(&m.image[a], &m.image[b])) {
        return MapClass::Thin;
    }
    let same = |a: usize, b: usize| {
        leq(&m.source[a], &m.source[b]) == leq(&m.image[a], &m.image[b])
            && perp(&m.source[a], &m.source[b]) == perp(&m.image[a], &m.image[b])
    };
    if (0..n).all(|a| (0..n).all(|b| same(a, b))) {
        return MapClass::OrderPreserving;
    }
    // a nonempty upward-closed chain is the set of points above its least element
    for s in &m.source {
        let in_s: Vec<bool> = m.source.iter().map(|x| leq(s, x)).collect();
        if reroot_violation(m, &in_s).is_none() {
            return MapClass::RerootingLike;
        }
    }
    MapClass::Other
}

/// For five pairwise incomparable nodes, a pair `(i, j)` and an
/// automorphism of the induced `{<=, C}`-structure swapping them and fixing
/// the other three.
pub fn five_point_flip(points: &[Node]) -> Result<(usize, usize, Vec<usize>)> {
    if points.len() != 5 {
        return Err(Error::Dimension(format!("expected 5 points, got {}", points.len())));
    }
    if let Some((a, b)) = points.iter().tuple_combinations().find(|(a, b)| !perp(a, b)) {
        return Err(Error::Precondition(format!("{a} and {b} are comparable")));
    }
    let s = induced_structure(points)?;
    let autos = find_isomorphisms(&s, &s);
    for (i, j) in (0..5).tuple_combinations() {
        let flip = |k: usize| if k == i { j } else if k == j { i } else { k };
        if let Some(f) = autos.iter().find(|f| (0..5).all(|k| f[k] == flip(k))) {
            return Ok((i, j, f.clone()));
        }
    }
    Err(Error::Internal("no flippable pair among five incomparable points".into()))
}
