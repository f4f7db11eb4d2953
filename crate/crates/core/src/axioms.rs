//! Randomized property suite for the axioms of the model.

use std::fmt;

use crate::node::Node;
use crate::relations::{divergence, leq, lt, perp, rel_c};
use crate::sample::Sampler;
use crate::witness::{
    above, below, between, branch_below, branching_pair, common_upper_bound, nice,
    refine_upper_bound,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub checked: usize,
    pub violations: usize,
    pub example: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn violations(&self) -> usize {
        self.checks.iter().map(|c| c.violations).sum()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "samples={} seed={}", self.samples, self.seed)?;
        for c in &self.checks {
            write!(f, "{:<22} checked={:<7} violations={}", c.name, c.checked, c.violations)?;
            if let Some(e) = &c.example {
                write!(f, "  first: {e}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

struct Tally(Vec<AxiomCheck>);

impl Tally {
    fn record(&mut self, name: &'static str, ok: bool, example: impl FnOnce() -> String) {
        let idx = match self.0.iter().position(|c| c.name == name) {
            Some(i) => i,
            None => {
                self.0.push(AxiomCheck { name, checked: 0, violations: 0, example: None });
                self.0.len() - 1
            }
        };
        let c = &mut self.0[idx];
        c.checked += 1;
        if !ok {
            c.violations += 1;
            c.example.get_or_insert_with(example);
        }
    }
}

/// A point strictly above `a`, drawn from the sampler when possible.
fn strictly_above(s: &mut Sampler, a: &Node) -> Node {
    let b = s.relative(a);
    if lt(a, &b) {
        b
    } else {
        above(a)
    }
}

pub fn run_suite(samples: usize, seed: u64) -> AxiomReport {
    let mut s = Sampler::new(seed);
    let mut t = Tally(Vec::new());
    for _ in 0..samples {
        let xs = s.set(3);
        let (a, b, c) = (&xs[0], &xs[1], &xs[2]);
        let show = || format!("{a} {b} {c}");

        t.record("reflexive", leq(a, a), show);
        t.record("antisymmetric", !(leq(a, b) && leq(b, a)) || a == b, show);
        t.record("transitive", !(leq(a, b) && leq(b, c)) || leq(a, c), show);
        t.record("perp closed form", perp(a, b) == (!leq(a, b) && !leq(b, a)), show);

        let mut ups: Vec<Node> = (0..4).map(|_| s.relative(a)).collect();
        ups.extend(xs.iter().cloned());
        let ups: Vec<&Node> = ups.iter().filter(|u| leq(a, u)).collect();
        let chain = ups.iter().all(|x| ups.iter().all(|y| leq(x, y) || leq(y, x)));
        t.record("up-sets are chains", chain, show);

        let top = common_upper_bound(&xs);
        t.record("common upper bound", xs.iter().all(|x| lt(x, &top)), show);

        let hi = strictly_above(&mut s, a);
        t.record("dense", between(a, &hi).is_ok(), || format!("{a} < {hi}"));
        t.record("unbounded", lt(a, &above(a)) && lt(&below(a), a), show);
        t.record("branching below", branch_below(a, &hi).is_ok(), || format!("{a} < {hi}"));

        let ac = s.antichain(3);
        let (x, y, z) = (&ac[0], &ac[1], &ac[2]);
        let show3 = || format!("{x} {y} {z}");
        t.record("nice", nice(x, y).is_ok(), show3);
        t.record("branching pair", branching_pair(x, y, z).is_ok(), show3);
        let ub = common_upper_bound(&ac);
        t.record("no joins", refine_upper_bound(x, y, &ub).is_ok(), show3);
        let ones = [rel_c(x, y, z), rel_c(y, x, z), rel_c(z, x, y)].iter().filter(|b| **b).count();
        t.record("exactly one outsider", ones == 1, show3);
        let d = divergence(x, y);
        t.record("divergence iff perp", d.is_some(), show3);
    }
    AxiomReport { samples, seed, checks: t.0 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_is_clean() {
        let r = run_suite(300, 3);
        assert_eq!(r.violations(), 0, "{r}");
        assert!(r.checks.iter().all(|c| c.checked == 300));
    }
}
