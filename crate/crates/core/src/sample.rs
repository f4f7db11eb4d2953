//! Seeded random nodes with plenty of shared structure.
//!
//! Positions come from two small pools (quarters for turns, thirds for
//! depths) so that random nodes share prefixes, coincide in depth and end up
//! comparable often enough to exercise every relation.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::node::Node;
use crate::position::Position;
use crate::relations::perp;

pub struct Sampler {
    rng: ChaCha8Rng,
    turns: Vec<Position>,
    depths: Vec<Position>,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        let turns = (1..=31).filter(|m| m % 4 != 0).map(|m| Position::ratio(m, 4)).collect();
        let depths = (1..=24).map(|i| Position::ratio(i, 3)).collect();
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), turns, depths }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn depth(&mut self) -> Position {
        self.depths.choose(&mut self.rng).expect("pool").clone()
    }

    /// An independent random node.
    pub fn node(&mut self) -> Node {
        let depth = self.depth();
        let turns = self
            .turns
            .iter()
            .filter(|t| *t < &depth)
            .filter(|_| self.rng.gen_bool(0.2))
            .cloned()
            .collect::<Vec<_>>();
        Node::from_parts_unchecked(turns, depth)
    }

    /// A node derived from `a`: a point on its path, or a branch off it.
    pub fn relative(&mut self, a: &Node) -> Node {
        let d = self.depth();
        if self.rng.gen_bool(0.5) {
            return a.path_point(&d);
        }
        let options: Vec<Position> = self.turns.iter().filter(|t| *t < &d).cloned().collect();
        match options.choose(&mut self.rng) {
            Some(t) => a.branch_point(t, &d),
            None => a.path_point(&d),
        }
    }

    /// `n` distinct nodes, most of them related to earlier ones.
    pub fn set(&mut self, n: usize) -> Vec<Node> {
        let mut out: Vec<Node> = Vec::with_capacity(n);
        while out.len() < n {
            let cand = if out.is_empty() || self.rng.gen_bool(0.25) {
                self.node()
            } else {
                let base = out.choose(&mut self.rng).expect("non-empty").clone();
                self.relative(&base)
            };
            if !out.contains(&cand) {
                out.push(cand);
            }
        }
        out
    }

    /// `n` pairwise incomparable nodes.
    pub fn antichain(&mut self, n: usize) -> Vec<Node> {
        let mut out: Vec<Node> = Vec::with_capacity(n);
        let mut misses = 0;
        while out.len() < n {
            // A shallow first pick can leave no room below the turn pool.
            if misses > 64 {
                out.clear();
                misses = 0;
            }
            let cand = self.set(1 + out.len()).pop().expect("non-empty");
            let cand = if out.is_empty() || self.rng.gen_bool(0.3) {
                cand
            } else {
                let base = out.choose(&mut self.rng).expect("non-empty").clone();
                self.relative(&base)
            };
            if out.iter().all(|o| perp(o, &cand)) {
                out.push(cand);
            } else {
                misses += 1;
            }
        }
        out
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}
