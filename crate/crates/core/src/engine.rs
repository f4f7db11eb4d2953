//! Back-and-forth: extending finite partial isomorphisms of `(<=, C)` one
//! point at a time, embedding finite structures, and the age test.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{structure_type_key, witness_grid};
use crate::node::Node;
use crate::relations::{divergence, leq, lt, perp, rel_c};
use crate::structure::{induced_structure, FiniteStructure};
use crate::witness::{below, branch_off, lemma_key_witness};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialIso {
    domain: Vec<Node>,
    range: Vec<Node>,
}

impl PartialIso {
    pub fn empty() -> PartialIso {
        PartialIso { domain: Vec::new(), range: Vec::new() }
    }

    pub fn new(domain: Vec<Node>, range: Vec<Node>) -> Result<PartialIso> {
        if domain.len() != range.len() {
            return Err(Error::Dimension(format!("{} domain points, {} range points", domain.len(), range.len())));
        }
        let rho = PartialIso { domain, range };
        rho.verify()?;
        Ok(rho)
    }

    pub fn domain(&self) -> &[Node] {
        &self.domain
    }

    pub fn range(&self) -> &[Node] {
        &self.range
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn image(&self, p: &Node) -> Option<&Node> {
        self.domain.iter().position(|d| d == p).map(|i| &self.range[i])
    }

    /// Checks that `<=` and `C` hold on domain tuples exactly when they hold
    /// on the paired range tuples.
    pub fn verify(&self) -> Result<()> {
        let (d, r) = (&self.domain, &self.range);
        let n = d.len();
        for i in 0..n {
            for j in 0..n {
                if leq(&d[i], &d[j]) != leq(&r[i], &r[j]) {
                    return Err(Error::Precondition(format!(
                        "pairing does not preserve <= on ({}, {})",
                        d[i], d[j]
                    )));
                }
            }
        }
        for z in 0..n {
            for x in 0..n {
                for y in x + 1..n {
                    if rel_c(&d[z], &d[x], &d[y]) != rel_c(&r[z], &r[x], &r[y]) {
                        return Err(Error::Precondition(format!(
                            "pairing does not preserve C({}, {} {})",
                            d[z], d[x], d[y]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Extends `rho` by `p`, choosing the image the way the back-and-forth
/// argument does.
pub fn extend_partial_iso(rho: &PartialIso, p: &Node) -> Result<PartialIso> {
    rho.verify()?;
    if rho.domain.contains(p) {
        return Err(Error::Precondition(format!("{p} is already in the domain")));
    }
    let q = choose_image(rho, p)?;
    let mut next = rho.clone();
    next.domain.push(p.clone());
    next.range.push(q);
    next.verify().map_err(|e| Error::Internal(format!("extension by {p} failed to verify: {e}")))?;
    Ok(next)
}

fn choose_image(rho: &PartialIso, p: &Node) -> Result<Node> {
    let pairs: Vec<(&Node, &Node)> = rho.domain.iter().zip(&rho.range).collect();
    let img = |f: &dyn Fn(&Node) -> bool| -> Vec<Node> {
        pairs.iter().filter(|(d, _)| f(d)).map(|(_, r)| (*r).clone()).collect()
    };
    let lower = img(&|d| lt(d, p));
    let upper = img(&|d| lt(p, d));
    let side = img(&|d| perp(d, p));

    if !lower.is_empty() {
        return lemma_key_witness(&lower, &upper, &side);
    }
    if rho.is_empty() {
        return Ok(Node::from_parts_unchecked(Vec::new(), crate::Position::integer(0)));
    }

    // Nothing below p. If the lowest point above p sees everything beside p
    // as incomparable, any point just below its image will do.
    let lowest_above = pairs
        .iter()
        .filter(|(d, _)| lt(p, d))
        .max_by(|a, b| a.0.depth().cmp(b.0.depth()));
    let perps: Vec<&(&Node, &Node)> = pairs.iter().filter(|(d, _)| perp(d, p)).collect();
    if let Some((v, rv)) = lowest_above {
        if perps.iter().all(|(w, _)| perp(v, w)) {
            return Ok(below(rv));
        }
    }

    // Otherwise p leaves the tree spanned by the domain beside the points
    // that stay with it longest. Those form the group G; the rest, E, split
    // off earlier.
    let (w0, _) = perps
        .iter()
        .map(|pair| **pair)
        .max_by(|a, b| {
            let (da, db) = (divergence(a.0, p), divergence(b.0, p));
            da.cmp(&db).then_with(|| b.0.cmp(a.0))
        })
        .expect("some point is incomparable to p");
    let group = img(&|d| perp(d, p) && !rel_c(d, p, w0));
    let early = img(&|d| perp(d, p) && rel_c(d, p, w0));
    let x = lemma_key_witness(&group, &upper, &early)?;
    let mut upper2 = upper.clone();
    upper2.push(x.clone());
    let x2 = lemma_key_witness(&group, &upper2, &early)?;
    let avoid: Vec<crate::Position> = rho.range.iter().flat_map(|r| r.turns().iter().cloned()).collect();
    branch_off(&x2, x.depth(), x2.depth(), &avoid)
}

/// Extends `rho` by every point of `extra`, in order.
pub fn homogeneity_extend(rho: &PartialIso, extra: &[Node]) -> Result<PartialIso> {
    let mut cur = rho.clone();
    for p in extra {
        cur = extend_partial_iso(&cur, p)?;
    }
    Ok(cur)
}

/// Nodes realizing `a`, or the first point that cannot be placed. Points
/// are placed from the top down; each is matched by type against the
/// witness grid over the points placed so far.
pub fn embed_structure(a: &FiniteStructure) -> Result<Vec<Node>> {
    let n = a.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| ((0..n).filter(|&j| a.lt(i, j)).count(), i));
    let mut placed: Vec<usize> = Vec::with_capacity(n);
    let mut nodes: Vec<Node> = Vec::with_capacity(n);
    for &i in &order {
        let key = structure_type_key(a, i, &placed);
        let q = witness_grid(&nodes)
            .into_iter()
            .find(|(k, _)| *k == key)
            .map(|(_, q)| q)
            .ok_or(Error::AgeRejection { point: i })?;
        placed.push(i);
        nodes.push(q);
    }
    let mut out = vec![None; n];
    for (i, q) in placed.into_iter().zip(nodes) {
        out[i] = Some(q);
    }
    let out: Vec<Node> = out.into_iter().map(|q| q.expect("every point placed")).collect();
    match induced_structure(&out) {
        Ok(s) if s == *a => Ok(out),
        _ => Err(Error::AgeRejection { point: order.last().copied().unwrap_or(0) }),
    }
}

/// Age membership: whether `a` embeds into the model.
pub fn in_age(a: &FiniteStructure) -> bool {
    embed_structure(a).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::node::node;
    use crate::structure::FinitePoset;

    #[test]
    fn extension_examples() {
        let r = extend_partial_iso(&PartialIso::empty(), &node(&["1/2"], "3")).unwrap();
        assert_eq!(r.len(), 1);

        let rho = PartialIso::new(vec![node(&[], "2")], vec![node(&[], "10")]).unwrap();
        let r = extend_partial_iso(&rho, &node(&[], "1")).unwrap();
        assert!(lt(&node(&[], "10"), &r.range()[1]));

        let rho = PartialIso::new(vec![node(&[], "2")], vec![node(&[], "2")]).unwrap();
        let r = extend_partial_iso(&rho, &node(&["3/2"], "2")).unwrap();
        assert!(perp(&node(&[], "2"), &r.range()[1]));
        assert!(extend_partial_iso(&rho, &node(&[], "2")).is_err());
    }

    #[test]
    fn embed_examples() {
        let chain = embed_structure(&FiniteStructure::chain(2)).unwrap();
        assert!(lt(&chain[0], &chain[1]));

        let anti = FiniteStructure::new(FinitePoset::from_fn(3, |i, j| i == j), &[[2, 0, 1], [2, 1, 0]]).unwrap();
        let pts = embed_structure(&anti).unwrap();
        assert!(rel_c(&pts[2], &pts[0], &pts[1]));

        let lambda = FiniteStructure::from_fns(3, |i, j| i == j || i == 0, |_, _, _| false);
        assert_eq!(embed_structure(&lambda), Err(Error::AgeRejection { point: 0 }));

        let both = FiniteStructure::new(FinitePoset::from_fn(3, |i, j| i == j), &[[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0]]).unwrap();
        assert!(!in_age(&both));
    }

    #[test]
    fn homogeneity_examples() {
        let a = vec![node(&["1/2"], "1"), node(&[], "1")];
        let swap = PartialIso::new(a.clone(), vec![a[1].clone(), a[0].clone()]).unwrap();
        let r = homogeneity_extend(&swap, &[node(&[], "0")]).unwrap();
        assert!(lt(&a[0], &r.range()[2]) && lt(&a[1], &r.range()[2]));
        assert_eq!(homogeneity_extend(&swap, &[]).unwrap(), swap);

        let rho = PartialIso::new(vec![node(&[], "1")], vec![node(&["7/2"], "4")]).unwrap();
        let r = homogeneity_extend(&rho, &[node(&[], "0"), node(&["1/2"], "1")]).unwrap();
        assert_eq!(r.len(), 3);
    }
}
