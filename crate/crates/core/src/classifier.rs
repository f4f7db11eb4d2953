//! Sampled classification of relations defined by quantifier-free formulas.
//!
//! A relation is tested for preservation under three families of maps on
//! finite sets: all bijections (standing in for the full symmetric group),
//! rerootings (beyond the order automorphisms but inside the automorphisms
//! of betweenness), and extended partial isomorphisms (order
//! automorphisms). A violation is a checkable counterexample; preservation
//! is only ever observed on samples.

use std::fmt;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::engine::{embed_structure, homogeneity_extend, PartialIso};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::node::Node;
use crate::sample::Sampler;
use crate::structure::{induced_structure, FiniteStructure};
use crate::transform::{flatten, project_to_chain, reroot, MappedSet, RerootSpec};

pub const DEFAULT_SAMPLE_SIZE: usize = 200;
pub const DEFAULT_STRUCTURE_BOUND: usize = 5;
pub const MAX_STRUCTURE_BOUND: usize = 6;

pub const CAVEAT: &str =
    "violations are exact counterexamples; preservation was only observed on the sampled finite sets";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Bijections,
    Rerootings,
    PartialIsomorphisms,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Bijections => "bijections",
            Family::Rerootings => "rerootings",
            Family::PartialIsomorphisms => "partial isomorphisms",
        })
    }
}

/// A tuple on which the relation holds before the map but not after, or
/// the other way round.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub source: Vec<Node>,
    pub image: Vec<Node>,
    /// Indices into `source` (and, positionally, `image`).
    pub tuple: Vec<usize>,
    pub holds_on_source: bool,
}

impl Violation {
    /// Re-evaluates the formula on the recorded nodes.
    pub fn recheck(&self, phi: &Formula) -> bool {
        let s: Vec<&Node> = self.tuple.iter().map(|&i| &self.source[i]).collect();
        let t: Vec<&Node> = self.tuple.iter().map(|&i| &self.image[i]).collect();
        phi.eval_nodes(&s) == self.holds_on_source && phi.eval_nodes(&t) != self.holds_on_source
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyEvidence {
    pub family: Family,
    pub trials: usize,
    pub violation: Option<Violation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictClass {
    Equality,
    Betweenness,
    Order,
}

impl fmt::Display for VerdictClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictClass::Equality => "equality-class",
            VerdictClass::Betweenness => "B-class",
            VerdictClass::Order => "order-class",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub class: VerdictClass,
    pub evidence: Vec<FamilyEvidence>,
    pub caveat: &'static str,
}

impl Verdict {
    pub fn family(&self, family: Family) -> &FamilyEvidence {
        self.evidence.iter().find(|e| e.family == family).expect("every family is tested")
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.class)?;
        for e in &self.evidence {
            match &e.violation {
                None => writeln!(f, "  {:<22} preserved on {} samples", e.family.to_string(), e.trials)?,
                Some(v) => {
                    let src = v.tuple.iter().map(|&i| v.source[i].to_string()).join(", ");
                    let img = v.tuple.iter().map(|&i| v.image[i].to_string()).join(", ");
                    let (before, after) = if v.holds_on_source { ("holds", "fails") } else { ("fails", "holds") };
                    writeln!(f, "  {:<22} violated after {} samples: {before} on ({src}), {after} on ({img})", e.family.to_string(), e.trials)?;
                }
            }
        }
        write!(f, "  note: {}", self.caveat)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyConfig {
    pub sample_size: usize,
    pub structure_bound: usize,
    pub seed: u64,
}

impl ClassifyConfig {
    pub fn with_seed(seed: u64) -> ClassifyConfig {
        ClassifyConfig { sample_size: DEFAULT_SAMPLE_SIZE, structure_bound: DEFAULT_STRUCTURE_BOUND, seed }
    }

    fn validate(&self) -> Result<()> {
        if self.structure_bound == 0 || self.structure_bound > MAX_STRUCTURE_BOUND {
            return Err(Error::Bound { requested: self.structure_bound, bound: MAX_STRUCTURE_BOUND });
        }
        Ok(())
    }
}

/// First tuple over `0..n` on which `phi` differs between `src` and `img`
/// (point `i` of one paired with point `i` of the other).
fn first_difference(phi: &Formula, src: &FiniteStructure, img: &FiniteStructure) -> Option<(Vec<usize>, bool)> {
    let k = phi.arity();
    (0..k).map(|_| 0..src.len()).multi_cartesian_product().find_map(|t| {
        let holds = phi.eval(src, &t);
        (holds != phi.eval(img, &t)).then_some((t, holds))
    })
}

fn mapped_difference(phi: &Formula, m: &MappedSet) -> Result<Option<Violation>> {
    let (src, img) = (induced_structure(&m.source)?, induced_structure(&m.image)?);
    Ok(first_difference(phi, &src, &img).map(|(tuple, holds_on_source)| Violation {
        source: m.source.clone(),
        image: m.image.clone(),
        tuple,
        holds_on_source,
    }))
}

fn run_family(
    phi: &Formula,
    cfg: &ClassifyConfig,
    family: Family,
    mut trial: impl FnMut(&mut Sampler, usize) -> Result<Option<Violation>>,
) -> Result<FamilyEvidence> {
    let mut sampler = Sampler::new(cfg.seed.wrapping_mul(31).wrapping_add(family as u64 + 1));
    let lo = phi.arity().clamp(1, cfg.structure_bound);
    for t in 0..cfg.sample_size {
        let size = sampler.rng().gen_range(lo..=cfg.structure_bound);
        if let Some(v) = trial(&mut sampler, size)? {
            return Ok(FamilyEvidence { family, trials: t + 1, violation: Some(v) });
        }
    }
    Ok(FamilyEvidence { family, trials: cfg.sample_size, violation: None })
}

pub fn classify(phi: &Formula, cfg: &ClassifyConfig) -> Result<Verdict> {
    cfg.validate()?;
    let bijections = run_family(phi, cfg, Family::Bijections, |s, n| {
        let (a, b) = (s.set(n), s.set(n));
        let sb = induced_structure(&b)?;
        let sa = induced_structure(&a)?;
        for f in (0..n).permutations(n) {
            if let Some((tuple, holds)) = first_difference(phi, &sa, &sb.restrict(&f)) {
                let image = f.iter().map(|&j| b[j].clone()).collect();
                return Ok(Some(Violation { source: a, image, tuple, holds_on_source: holds }));
            }
        }
        Ok(None)
    })?;
    let rerootings = run_family(phi, cfg, Family::Rerootings, |s, n| {
        let pts = s.set(n);
        let pivot = pts[s.index(n)].clone();
        mapped_difference(phi, &reroot(&pts, &RerootSpec::Pivot(pivot))?)
    })?;
    let partial = run_family(phi, cfg, Family::PartialIsomorphisms, |s, n| {
        let base_len = s.rng().gen_range(1..=n);
        let pts = s.set(n + 3);
        let (base, extra) = pts.split_at(base_len);
        let extra_len = s.rng().gen_range(0..=3.min(extra.len()));
        let target = embed_structure(&induced_structure(base)?)?;
        let rho = homogeneity_extend(&PartialIso::new(base.to_vec(), target)?, &extra[..extra_len])?;
        mapped_difference(phi, &MappedSet::new(rho.domain().to_vec(), rho.range().to_vec())?)
    })?;
    let class = if bijections.violation.is_none() {
        VerdictClass::Equality
    } else if rerootings.violation.is_none() {
        VerdictClass::Betweenness
    } else {
        VerdictClass::Order
    };
    Ok(Verdict { class, evidence: vec![bijections, rerootings, partial], caveat: CAVEAT })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ChainClass {
    Linear,
    Betw,
    Cyc,
    Sep,
    Equality,
}

impl fmt::Display for ChainClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainClass::Linear => "linear",
            ChainClass::Betw => "Betw-class",
            ChainClass::Cyc => "Cyc-class",
            ChainClass::Sep => "Sep-class",
            ChainClass::Equality => "equality-class",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ChainMap {
    Monotone,
    Reversal,
    CyclicShift,
    Permutation,
}

/// Preservation of `psi` on finite chains under monotone maps, reversal,
/// cyclic shifts and arbitrary permutations; only the order type of a
/// sample matters, so samples are the chains `0 < 1 < ... < m-1`.
pub fn chain_classify(psi: &Formula, sample_size: usize, seed: u64) -> Result<(ChainClass, Vec<(ChainMap, bool)>)> {
    let mut sampler = Sampler::new(seed);
    let lo = psi.arity().max(2);
    let mut ok = [true; 4];
    for _ in 0..sample_size {
        let m = sampler.rng().gen_range(lo..=6);
        let chain = FiniteStructure::chain(m);
        let shift = sampler.rng().gen_range(1..m);
        let mut perm: Vec<usize> = (0..m).collect();
        perm.shuffle(sampler.rng());
        let maps = [
            (0..m).collect::<Vec<_>>(),
            (0..m).rev().collect(),
            (0..m).map(|i| (i + shift) % m).collect(),
            perm,
        ];
        for (slot, f) in ok.iter_mut().zip(maps) {
            if *slot && first_difference(psi, &chain, &chain.restrict(&f)).is_some() {
                *slot = false;
            }
        }
    }
    let [_, rev, cyc, perm] = ok;
    let class = match (perm, rev, cyc) {
        (true, _, _) => ChainClass::Equality,
        (false, true, true) => ChainClass::Sep,
        (false, true, false) => ChainClass::Betw,
        (false, false, true) => ChainClass::Cyc,
        (false, false, false) => ChainClass::Linear,
    };
    let evidence = [ChainMap::Monotone, ChainMap::Reversal, ChainMap::CyclicShift, ChainMap::Permutation].into_iter().zip(ok).collect();
    Ok((class, evidence))
}

fn arrows(orders: &[[&str; 3]]) -> String {
    orders.iter().map(|[a, b, c]| format!("({a} < {b} & {b} < {c})")).join(" | ")
}

pub fn betw_formula() -> Formula {
    Formula::parse(&arrows(&[["x", "y", "z"], ["z", "y", "x"]])).expect("well-formed")
}

pub fn cyc_formula() -> Formula {
    Formula::parse(&arrows(&[["x", "y", "z"], ["y", "z", "x"], ["z", "x", "y"]])).expect("well-formed")
}

/// `{x1, y1}` and `{x2, y2}` separate each other on the circle.
pub fn sep_formula() -> Formula {
    let cyc = |a: &str, b: &str, c: &str| format!("({})", arrows(&[[a, b, c], [b, c, a], [c, a, b]]));
    let text = format!(
        "({} & {}) | ({} & {})",
        cyc("x1", "x2", "y1"),
        cyc("x1", "y1", "y2"),
        cyc("x1", "y2", "y1"),
        cyc("x1", "y1", "x2")
    );
    Formula::parse(&text).expect("well-formed")
}

pub fn b_formula() -> Formula {
    Formula::parse("(x < y & y < z) | (z < y & y < x) | (x < y & y || z) | (z < y & y || x)").expect("well-formed")
}

pub fn r_formula() -> Formula {
    Formula::parse("C(z, x y) | (x < z & y < z) | (x || z & y || z & (x < y | y < x))").expect("well-formed")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CoreLabel {
    TreeOrder,
    TreeBetweenness,
    LeavesC,
    LeavesD,
    Rationals,
    RationalsBetw,
    RationalsCyc,
    RationalsSep,
    RationalsNeq,
    OneElement,
}

impl fmt::Display for CoreLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoreLabel::TreeOrder => "(S2;<,⊥)",
            CoreLabel::TreeBetweenness => "(S2;B)",
            CoreLabel::LeavesC => "(L2;C)",
            CoreLabel::LeavesD => "(L2;D)",
            CoreLabel::Rationals => "(Q;<)",
            CoreLabel::RationalsBetw => "(Q;Betw)",
            CoreLabel::RationalsCyc => "(Q;Cyc)",
            CoreLabel::RationalsSep => "(Q;Sep)",
            CoreLabel::RationalsNeq => "(Q;≠)",
            CoreLabel::OneElement => "one-element",
        })
    }
}

/// A heuristic guess, with the observations behind it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreHint {
    pub label: CoreLabel,
    pub notes: Vec<String>,
}

fn collapse_preserves(phis: &[Formula], seed: u64, samples: usize, map: fn(&[Node]) -> Result<MappedSet>) -> Result<bool> {
    let mut s = Sampler::new(seed);
    for _ in 0..samples {
        let n = s.rng().gen_range(1..=DEFAULT_STRUCTURE_BOUND);
        let m = map(&s.set(n))?;
        for phi in phis {
            if mapped_difference(phi, &m)?.is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether every bijection between random antichains that preserves `D`
/// also preserves each formula.
fn d_automorphisms_preserve(phis: &[Formula], seed: u64, samples: usize) -> Result<bool> {
    let mut s = Sampler::new(seed);
    let d = Formula::parse("D(x,y,u,v)").expect("well-formed");
    for _ in 0..samples {
        let (a, b) = (s.antichain(5), s.antichain(5));
        let (sa, sb) = (induced_structure(&a)?, induced_structure(&b)?);
        for f in (0..5).permutations(5) {
            let img = sb.restrict(&f);
            if first_difference(&d, &sa, &img).is_none() && phis.iter().any(|p| first_difference(p, &sa, &img).is_some()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Guesses which of the ten model-complete cores the structure defined by
/// `phis` has. Heuristic: combines the classifier with tests of whether
/// collapsing onto a chain or onto an antichain keeps every formula.
pub fn model_complete_core_hint(phis: &[Formula], seed: u64) -> Result<CoreHint> {
    let mut notes = Vec::new();
    let point = FiniteStructure::chain(1);
    if phis.iter().all(|p| p.eval(&point, &vec![0; p.arity()])) {
        notes.push("every relation contains a constant tuple".to_string());
        return Ok(CoreHint { label: CoreLabel::OneElement, notes });
    }
    let cfg = ClassifyConfig::with_seed(seed);
    let mut worst = VerdictClass::Equality;
    for p in phis {
        let v = classify(p, &cfg)?;
        notes.push(format!("{p}: {}", v.class));
        worst = match (worst, v.class) {
            (VerdictClass::Order, _) | (_, VerdictClass::Order) => VerdictClass::Order,
            (VerdictClass::Betweenness, _) | (_, VerdictClass::Betweenness) => VerdictClass::Betweenness,
            _ => VerdictClass::Equality,
        };
    }
    if worst == VerdictClass::Equality {
        return Ok(CoreHint { label: CoreLabel::RationalsNeq, notes });
    }
    if collapse_preserves(phis, seed, DEFAULT_SAMPLE_SIZE, project_to_chain)? {
        notes.push("projection onto a chain preserves every relation".to_string());
        let mut classes = Vec::new();
        for p in phis {
            classes.push(chain_classify(p, DEFAULT_SAMPLE_SIZE, seed)?.0);
        }
        let has = |c| classes.contains(&c);
        let label = if has(ChainClass::Linear) || (has(ChainClass::Betw) && has(ChainClass::Cyc)) {
            CoreLabel::Rationals
        } else if has(ChainClass::Betw) {
            CoreLabel::RationalsBetw
        } else if has(ChainClass::Cyc) {
            CoreLabel::RationalsCyc
        } else if has(ChainClass::Sep) {
            CoreLabel::RationalsSep
        } else {
            CoreLabel::RationalsNeq
        };
        return Ok(CoreHint { label, notes });
    }
    if collapse_preserves(phis, seed, DEFAULT_SAMPLE_SIZE, flatten)? {
        notes.push("flattening onto an antichain preserves every relation".to_string());
        let label = if d_automorphisms_preserve(phis, seed, DEFAULT_SAMPLE_SIZE / 4)? {
            CoreLabel::LeavesD
        } else {
            CoreLabel::LeavesC
        };
        return Ok(CoreHint { label, notes });
    }
    let label = if worst == VerdictClass::Betweenness { CoreLabel::TreeBetweenness } else { CoreLabel::TreeOrder };
    Ok(CoreHint { label, notes })
}
