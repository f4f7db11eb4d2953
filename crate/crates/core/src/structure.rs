//! Finite `{<=, C}`-structures stored as explicit tables.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::node::Node;
use crate::relations::{leq, rel_c, RelationName};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinitePoset {
    n: usize,
    leq: Vec<bool>,
}

impl FinitePoset {
    pub fn from_table(table: &[Vec<bool>]) -> Result<FinitePoset> {
        let n = table.len();
        if let Some((i, row)) = table.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::Dimension(format!("row {i} of the order table has {} entries, expected {n}", row.len())));
        }
        Ok(FinitePoset { n, leq: table.concat() })
    }

    /// `i <= j` iff `f(i, j)`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> FinitePoset {
        let leq = (0..n * n).map(|k| f(k / n, k % n)).collect();
        FinitePoset { n, leq }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn perp(&self, i: usize, j: usize) -> bool {
        !self.leq(i, j) && !self.leq(j, i)
    }

    pub fn table(&self) -> Vec<Vec<bool>> {
        self.leq.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    /// Every principal up-set is a chain.
    pub fn is_semilinear(&self) -> bool {
        self.up_set_violation().is_none()
    }

    fn up_set_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                for c in b + 1..n {
                    if self.leq(a, b) && self.leq(a, c) && self.perp(b, c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteStructure {
    poset: FinitePoset,
    c: Vec<bool>,
}

impl FiniteStructure {
    /// `triples` lists the `[z, x, y]` with `C(z, xy)`; nothing is symmetrized.
    pub fn new(poset: FinitePoset, triples: &[[usize; 3]]) -> Result<FiniteStructure> {
        let n = poset.n;
        let mut c = vec![false; n * n * n];
        for t in triples {
            if let Some(&bad) = t.iter().find(|&&i| i >= n) {
                return Err(Error::Dimension(format!("C triple {t:?} names point {bad} of {n}")));
            }
            c[(t[0] * n + t[1]) * n + t[2]] = true;
        }
        Ok(FiniteStructure { poset, c })
    }

    pub fn from_fns(
        n: usize,
        le: impl Fn(usize, usize) -> bool,
        cf: impl Fn(usize, usize, usize) -> bool,
    ) -> FiniteStructure {
        let poset = FinitePoset::from_fn(n, le);
        let c = (0..n * n * n).map(|k| cf(k / (n * n), (k / n) % n, k % n)).collect();
        FiniteStructure { poset, c }
    }

    pub fn chain(n: usize) -> FiniteStructure {
        FiniteStructure::from_fns(n, |i, j| i <= j, |_, _, _| false)
    }

    pub fn len(&self) -> usize {
        self.poset.n
    }

    pub fn is_empty(&self) -> bool {
        self.poset.n == 0
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.poset.leq(i, j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.poset.lt(i, j)
    }

    pub fn perp(&self, i: usize, j: usize) -> bool {
        self.poset.perp(i, j)
    }

    pub fn c(&self, z: usize, x: usize, y: usize) -> bool {
        let n = self.poset.n;
        self.c[(z * n + x) * n + y]
    }

    pub fn c_triples(&self) -> Vec<[usize; 3]> {
        let n = self.len();
        (0..n * n * n)
            .filter(|&k| self.c[k])
            .map(|k| [k / (n * n), (k / n) % n, k % n])
            .collect()
    }

    pub fn b(&self, x: usize, y: usize, z: usize) -> bool {
        let (xy, yz, zy, yx) = (self.lt(x, y), self.lt(y, z), self.lt(z, y), self.lt(y, x));
        (xy && yz) || (zy && yx) || (xy && self.perp(y, z)) || (zy && self.perp(y, x))
    }

    pub fn r(&self, x: usize, y: usize, z: usize) -> bool {
        self.c(z, x, y)
            || (self.lt(x, z) && self.lt(y, z))
            || (self.perp(x, z) && self.perp(y, z) && (self.lt(x, y) || self.lt(y, x)))
    }

    pub fn d(&self, x: usize, y: usize, u: usize, v: usize) -> bool {
        (self.c(u, x, y) && self.c(v, x, y)) || (self.c(x, u, v) && self.c(y, u, v))
    }

    /// Table lookup for any relation; points are indices.
    pub fn eval(&self, rel: RelationName, a: &[usize]) -> bool {
        match rel {
            RelationName::Eq => a[0] == a[1],
            RelationName::Neq => a[0] != a[1],
            RelationName::Leq => self.leq(a[0], a[1]),
            RelationName::Lt => self.lt(a[0], a[1]),
            RelationName::Gt => self.lt(a[1], a[0]),
            RelationName::Geq => self.leq(a[1], a[0]),
            RelationName::Perp => self.perp(a[0], a[1]),
            RelationName::B => self.b(a[0], a[1], a[2]),
            RelationName::C => self.c(a[0], a[1], a[2]),
            RelationName::R => self.r(a[0], a[1], a[2]),
            RelationName::D => self.d(a[0], a[1], a[2], a[3]),
        }
    }

    /// The structure with point `i` renamed `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> FiniteStructure {
        let n = self.len();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        FiniteStructure::from_fns(n, |i, j| self.leq(inv[i], inv[j]), |z, x, y| self.c(inv[z], inv[x], inv[y]))
    }

    /// The substructure on `keep`, in that order.
    pub fn restrict(&self, keep: &[usize]) -> FiniteStructure {
        FiniteStructure::from_fns(
            keep.len(),
            |i, j| self.leq(keep[i], keep[j]),
            |z, x, y| self.c(keep[z], keep[x], keep[y]),
        )
    }

    /// Same order, no C facts.
    pub fn order_only(&self) -> FiniteStructure {
        FiniteStructure { poset: self.poset.clone(), c: vec![false; self.c.len()] }
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.len();
        let mut v = Vec::new();
        for i in 0..n {
            if !self.leq(i, i) {
                v.push(Violation::NotReflexive(i));
            }
            for j in 0..n {
                if i < j && self.leq(i, j) && self.leq(j, i) {
                    v.push(Violation::NotAntisymmetric(i, j));
                }
                for k in 0..n {
                    if self.leq(i, j) && self.leq(j, k) && !self.leq(i, k) {
                        v.push(Violation::NotTransitive(i, j, k));
                    }
                }
            }
        }
        if let Some((a, b, c)) = self.poset.up_set_violation() {
            v.push(Violation::UpSetNotChain(a, b, c));
        }
        for [z, x, y] in self.c_triples() {
            if !self.perp(x, y) {
                v.push(Violation::CPairComparable(z, x, y));
            }
            if !self.perp(z, x) || !self.perp(z, y) {
                v.push(Violation::COutsiderComparable(z, x, y));
            }
            if !self.c(z, y, x) {
                v.push(Violation::CNotSymmetric(z, x, y));
            }
        }
        ValidationReport { violations: v }
    }
}

/// Tables of the substructure induced on distinct nodes.
pub fn induced_structure(points: &[Node]) -> Result<FiniteStructure> {
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return Err(Error::Precondition(format!("duplicate point {p}")));
        }
    }
    let pts = points;
    Ok(FiniteStructure::from_fns(
        pts.len(),
        |i, j| leq(&pts[i], &pts[j]),
        |z, x, y| rel_c(&pts[z], &pts[x], &pts[y]),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotReflexive(usize),
    NotAntisymmetric(usize, usize),
    NotTransitive(usize, usize, usize),
    /// `a <= b`, `a <= c` with `b`, `c` incomparable.
    UpSetNotChain(usize, usize, usize),
    CPairComparable(usize, usize, usize),
    COutsiderComparable(usize, usize, usize),
    CNotSymmetric(usize, usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotReflexive(i) => write!(f, "not reflexive at {i}"),
            Violation::NotAntisymmetric(i, j) => write!(f, "not antisymmetric: {i} <= {j} <= {i}"),
            Violation::NotTransitive(i, j, k) => write!(f, "not transitive: {i} <= {j} <= {k}"),
            Violation::UpSetNotChain(a, b, c) => {
                write!(f, "up-set of {a} is not a chain: {b} and {c} are incomparable")
            }
            Violation::CPairComparable(z, x, y) => write!(f, "C({z},{x}{y}) with {x}, {y} comparable"),
            Violation::COutsiderComparable(z, x, y) => {
                write!(f, "C({z},{x}{y}) with {z} comparable to {x} or {y}")
            }
            Violation::CNotSymmetric(z, x, y) => write!(f, "C({z},{x}{y}) without C({z},{y}{x})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Bit {
    Bool(bool),
    Int(u8),
}

#[derive(Serialize, Deserialize)]
struct RawStructure {
    n: usize,
    leq: Vec<Vec<Bit>>,
    #[serde(rename = "C", default)]
    c: Vec<[usize; 3]>,
}

impl Serialize for FiniteStructure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let leq = self.poset.table().into_iter().map(|r| r.into_iter().map(Bit::Bool).collect()).collect();
        RawStructure { n: self.len(), leq, c: self.c_triples() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteStructure {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawStructure::deserialize(d)?;
        FiniteStructure::try_from(raw).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<RawStructure> for FiniteStructure {
    type Error = Error;

    fn try_from(raw: RawStructure) -> Result<FiniteStructure> {
        if raw.leq.len() != raw.n {
            return Err(Error::Dimension(format!("n is {} but the order table has {} rows", raw.n, raw.leq.len())));
        }
        let table: Vec<Vec<bool>> = raw
            .leq
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|b| match b {
                        Bit::Bool(b) => Ok(b),
                        Bit::Int(0) => Ok(false),
                        Bit::Int(1) => Ok(true),
                        Bit::Int(k) => Err(Error::Parse(format!("order table entry {k} is not 0 or 1"))),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        FiniteStructure::new(FinitePoset::from_table(&table)?, &raw.c)
    }
}

impl FiniteStructure {
    pub fn from_json(s: &str) -> Result<FiniteStructure> {
        let raw: RawStructure = serde_json::from_str(s)?;
        FiniteStructure::try_from(raw)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("structure serialization is infallible")
    }
}
