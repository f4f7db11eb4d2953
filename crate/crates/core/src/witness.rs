//! Constructors witnessing the axioms, and the key extension lemma.
//!
//! Every constructor re-checks its postcondition with the relation
//! evaluators, so a returned node is a proof of the property it claims.

use crate::error::{Error, Result};
use crate::node::Node;
use crate::position::Position;
use crate::relations::{divergence, lt, perp, rel_c};

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(what()))
    }
}

fn certify(node: Node, ok: bool, what: &str) -> Result<Node> {
    if ok {
        Ok(node)
    } else {
        Err(Error::Internal(format!("{what}: produced {node}")))
    }
}

/// Density: some `z` with `a < z < b`.
pub fn between(a: &Node, b: &Node) -> Result<Node> {
    ensure(lt(a, b), || format!("between needs {a} < {b}"))?;
    let z = a.path_point(&Position::depth_between(b.depth(), a.depth())?);
    let ok = lt(a, &z) && lt(&z, b);
    certify(z, ok, "between")
}

/// Unboundedness upward.
pub fn above(a: &Node) -> Node {
    a.path_point(&a.depth().add_int(-1))
}

/// Unboundedness downward.
pub fn below(a: &Node) -> Node {
    Node::from_parts_unchecked(a.turns().to_vec(), a.depth().add_int(1))
}

/// A node incomparable to `a` whose divergence from `a` lies in `(lo, hi)`
/// and is not in `avoid`. The interval must sit on `a`'s upward path, so
/// `hi <= depth(a)`.
pub fn branch_off(a: &Node, lo: &Position, hi: &Position, avoid: &[Position]) -> Result<Node> {
    ensure(lo < hi, || format!("branch_off needs lo {lo} < hi {hi}"))?;
    ensure(hi <= a.depth(), || {
        format!("branch_off interval ends at {hi}, below depth {} of {a}", a.depth())
    })?;
    let mut cuts: Vec<&Position> = avoid.iter().filter(|p| lo < *p && *p < hi).collect();
    cuts.sort();
    let gap_hi = cuts.first().copied().unwrap_or(hi);
    let t = Position::turn_between(lo, gap_hi)?;
    let d = Position::depth_between(&t, &t.add_int(1))?;
    let u = a.branch_point(&t, &d);
    let ok = divergence(&u, a) == Some(&t);
    certify(u, ok, "branch_off")
}

/// Binary branching (a): for `x < y`, some `u < y` with `u` incomparable to `x`.
pub fn branch_below(x: &Node, y: &Node) -> Result<Node> {
    ensure(lt(x, y), || format!("branch_below needs {x} < {y}"))?;
    let u = branch_off(x, y.depth(), x.depth(), &[])?;
    let ok = lt(&u, y) && perp(&u, x);
    certify(u, ok, "branch_below")
}

/// Niceness: for incomparable `x`, `y`, some `z > x` still incomparable to `y`.
pub fn nice(x: &Node, y: &Node) -> Result<Node> {
    let t = divergence(x, y).ok_or_else(|| Error::Precondition(format!("nice needs {x} ⊥ {y}")))?;
    let z = x.path_point(&Position::depth_between(t, x.depth())?);
    let ok = lt(x, &z) && perp(&z, y);
    certify(z, ok, "nice")
}

/// A point above every given node.
pub fn common_upper_bound(nodes: &[Node]) -> Node {
    let min = nodes
        .iter()
        .flat_map(|n| n.positions())
        .min()
        .map(|p| p.floor().add_int(-1))
        .unwrap_or_else(|| Position::integer(0));
    Node::from_parts_unchecked(Vec::new(), min)
}

/// No joins: for incomparable `a`, `b` below `z`, a strictly smaller common
/// upper bound.
pub fn refine_upper_bound(a: &Node, b: &Node, z: &Node) -> Result<Node> {
    let t = divergence(a, b).ok_or_else(|| Error::Precondition(format!("{a} ⊥ {b} fails")))?;
    ensure(lt(a, z) && lt(b, z), || format!("{z} is not above both {a} and {b}"))?;
    let u = a.path_point(&Position::depth_between(z.depth(), t)?);
    let ok = lt(a, &u) && lt(b, &u) && lt(&u, z);
    certify(u, ok, "refine_upper_bound")
}

/// Binary branching (b): for pairwise incomparable `a`, `b`, `c`, a node above
/// exactly two of them and incomparable to the third. Returns the node and
/// the index (0, 1, 2) of the excluded point.
pub fn branching_pair(a: &Node, b: &Node, c: &Node) -> Result<(Node, usize)> {
    let pts = [a, b, c];
    let div = |i: usize, j: usize| {
        divergence(pts[i], pts[j])
            .ok_or_else(|| Error::Precondition(format!("{} ⊥ {} fails", pts[i], pts[j])))
    };
    let pairs = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];
    let mut best: Option<(&Position, usize, usize, usize)> = None;
    for (i, j, k) in pairs {
        let d = div(i, j)?;
        if best.as_ref().is_none_or(|(bd, ..)| d > *bd) {
            best = Some((d, i, j, k));
        }
    }
    let (dij, i, j, k) = best.expect("three pairs");
    let lower = div(i, k)?;
    let u = pts[i].path_point(&Position::depth_between(lower, dij)?);
    let ok = lt(pts[i], &u) && lt(pts[j], &u) && perp(&u, pts[k]);
    certify(u, ok, "branching_pair").map(|u| (u, k))
}

fn maximal(u: &[Node]) -> Vec<Node> {
    let mut out: Vec<Node> = u
        .iter()
        .filter(|x| !u.iter().any(|y| lt(x, y)))
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `p ⊲ q` relative to the current set `u` of maximal elements.
fn precedes(p: &Node, q: &Node, u: &[Node]) -> bool {
    lt(p, q)
        || (perp(p, q) && u.iter().all(|x| lt(x, p)))
        || u.iter().all(|x| rel_c(q, p, x))
}

/// Some `x` with `U < x`, `x < V` and `x ⊥ W`.
///
/// Preconditions: `U` non-empty, `U < V`, every `w` incomparable to every
/// `u`, and `C(w, u1 u2)` for distinct maximal `u1`, `u2` of `U`.
pub fn lemma_key_witness(u: &[Node], v: &[Node], w: &[Node]) -> Result<Node> {
    ensure(!u.is_empty(), || "U is empty".to_string())?;
    for a in u {
        for b in v {
            ensure(lt(a, b), || format!("U < V fails: {a} < {b} does not hold"))?;
        }
        for c in w {
            ensure(perp(a, c), || format!("W ⊥ U fails: {c} ⊥ {a} does not hold"))?;
        }
    }
    let mut top = maximal(u);
    for c in w {
        for (i, a) in top.iter().enumerate() {
            for b in &top[i + 1..] {
                ensure(rel_c(c, a, b), || format!("C({c}, {a} {b}) does not hold"))?;
            }
        }
    }

    while top.len() >= 3 {
        top = merge_closest_pair(top)?;
    }

    let mut rest: Vec<(&Node, bool)> = v.iter().map(|n| (n, true)).chain(w.iter().map(|n| (n, false))).collect();
    rest.sort();
    let m = rest
        .iter()
        .find(|(q, _)| !rest.iter().any(|(p, _)| p != q && precedes(p, q, &top)))
        .copied();
    if m.is_none() && !rest.is_empty() {
        return Err(Error::Internal("no ⊲-minimal element among V ∪ W".into()));
    }

    let u0 = &top[0];
    let x = match (top.len(), m) {
        (1, None) => above(u0),
        (1, Some((m, true))) => between(u0, m)?,
        (1, Some((m, false))) => nice(u0, m)?,
        (_, m) => {
            let split = divergence(u0, &top[1]).expect("maximal elements are incomparable");
            let lo = match m {
                None => split.add_int(-1),
                Some((m, true)) => m.depth().clone(),
                Some((m, false)) => divergence(m, u0).expect("W ⊥ U").clone(),
            };
            u0.path_point(&Position::depth_between(&lo, split)?)
        }
    };

    let ok = u.iter().all(|a| lt(a, &x)) && v.iter().all(|b| lt(&x, b)) && w.iter().all(|c| perp(&x, c));
    certify(x, ok, "lemma_key_witness")
}

/// Replaces the two maximal elements that stay together longest by a point
/// just above both, incomparable to the others.
fn merge_closest_pair(top: Vec<Node>) -> Result<Vec<Node>> {
    let mut best: Option<(Position, usize, usize)> = None;
    for i in 0..top.len() {
        for j in i + 1..top.len() {
            let d = divergence(&top[i], &top[j]).expect("maximal elements are incomparable");
            if best.as_ref().is_none_or(|(bd, ..)| d > bd) {
                best = Some((d.clone(), i, j));
            }
        }
    }
    let (dij, i, j) = best.expect("at least three maximal elements");
    let lower = (0..top.len())
        .filter(|&k| k != i && k != j)
        .map(|k| divergence(&top[k], &top[i]).expect("incomparable").clone())
        .max()
        .expect("a third element");
    let s = top[i].path_point(&Position::depth_between(&lower, &dij)?);
    let mut next: Vec<Node> = top
        .into_iter()
        .enumerate()
        .filter(|(k, _)| *k != i && *k != j)
        .map(|(_, n)| n)
        .collect();
    next.push(s);
    next.sort();
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::node::node;
    use crate::relations::leq;

    fn p(s: &str) -> Position {
        s.parse().unwrap()
    }

    #[test]
    fn axiom_examples() {
        assert_eq!(between(&node(&[], "2"), &node(&[], "0")).unwrap(), node(&[], "1"));
        assert_eq!(above(&node(&[], "0")), node(&[], "-1"));
        assert_eq!(below(&node(&[], "0")), node(&[], "1"));
        let a = node(&[], "3");
        let u = branch_off(&a, &p("0"), &p("3"), &[]).unwrap();
        let t = divergence(&u, &a).unwrap();
        assert!(t > &p("0") && t < &p("3"));
    }

    #[test]
    fn branch_off_avoids() {
        let a = node(&[], "3");
        let avoid = [p("3/2"), p("1/2")];
        let u = branch_off(&a, &p("0"), &p("3"), &avoid).unwrap();
        let t = divergence(&u, &a).unwrap();
        assert!(!avoid.contains(t));
        assert!(branch_off(&a, &p("0"), &p("4"), &[]).is_err());
        assert!(between(&node(&[], "0"), &node(&[], "2")).is_err());
    }

    #[test]
    fn lemma_examples() {
        let x = lemma_key_witness(&[node(&[], "3")], &[node(&[], "0")], &[node(&["5/2"], "3")]).unwrap();
        assert_eq!(x, node(&[], "8/3"));
        assert_eq!(lemma_key_witness(&[node(&[], "3")], &[], &[]).unwrap(), node(&[], "2"));
        let x = lemma_key_witness(&[node(&["1/2"], "2"), node(&[], "2")], &[node(&[], "0")], &[]).unwrap();
        assert!(x.turns().is_empty() && x.depth() > &p("0") && x.depth() < &p("1/2"));
    }

    #[test]
    fn lemma_rejects_bad_input() {
        assert!(lemma_key_witness(&[], &[], &[]).is_err());
        let e = lemma_key_witness(&[node(&[], "3")], &[node(&[], "4")], &[]).unwrap_err();
        assert!(e.to_string().contains("U < V"), "{e}");
        let e = lemma_key_witness(&[node(&[], "3")], &[], &[node(&[], "1")]).unwrap_err();
        assert!(e.to_string().contains("⊥"), "{e}");
    }

    #[test]
    fn lemma_with_many_maximal() {
        let u = [node(&["1/2"], "1"), node(&["3/4"], "1"), node(&["1/4"], "1"), node(&["1/8"], "1")];
        let x = lemma_key_witness(&u, &[], &[]).unwrap();
        assert!(u.iter().all(|a| lt(a, &x)));
        let w = [node(&["1/16"], "1")];
        let x = lemma_key_witness(&u, &[node(&[], "0")], &w).unwrap();
        assert!(perp(&x, &w[0]) && leq(&x, &node(&[], "0")));
    }
}
