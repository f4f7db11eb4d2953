//! Isomorphism search and canonical labelings by backtracking.

use crate::structure::FiniteStructure;

/// Cheap per-point invariant used to prune both searches.
fn invariant(s: &FiniteStructure, i: usize) -> (usize, usize, usize, usize) {
    let n = s.len();
    let up = (0..n).filter(|&j| s.lt(i, j)).count();
    let down = (0..n).filter(|&j| s.lt(j, i)).count();
    let mut outsider = 0;
    let mut inside = 0;
    for a in 0..n {
        for b in 0..n {
            outsider += s.c(i, a, b) as usize;
            inside += s.c(a, i, b) as usize + s.c(a, b, i) as usize;
        }
    }
    (up, down, outsider, inside)
}

/// Whether `i -> j` is consistent with the partial map `m` (`m[k]` for the
/// already mapped `k < i`).
fn consistent(a: &FiniteStructure, b: &FiniteStructure, m: &[usize], i: usize, j: usize) -> bool {
    if a.leq(i, i) != b.leq(j, j) {
        return false;
    }
    for (k, &mk) in m.iter().enumerate() {
        if a.leq(i, k) != b.leq(j, mk) || a.leq(k, i) != b.leq(mk, j) {
            return false;
        }
    }
    let full: Vec<(usize, usize)> = m.iter().copied().enumerate().chain(std::iter::once((i, j))).collect();
    for &(x, mx) in &full {
        for &(y, my) in &full {
            let trio = [(i, j, x, mx, y, my), (x, mx, i, j, y, my), (x, mx, y, my, i, j)];
            for (p, mp, q, mq, r, mr) in trio {
                if a.c(p, q, r) != b.c(mp, mq, mr) {
                    return false;
                }
            }
        }
    }
    true
}

/// All bijections `f` (as `f[i]`) preserving `<=` and `C` in both directions.
pub fn find_isomorphisms(a: &FiniteStructure, b: &FiniteStructure) -> Vec<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return Vec::new();
    }
    let ia: Vec<_> = (0..n).map(|i| invariant(a, i)).collect();
    let ib: Vec<_> = (0..n).map(|j| invariant(b, j)).collect();
    let mut out = Vec::new();
    let mut m = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(a, b, &ia, &ib, &mut m, &mut used, &mut out, false);
    out
}

pub fn is_isomorphic(a: &FiniteStructure, b: &FiniteStructure) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    let ia: Vec<_> = (0..n).map(|i| invariant(a, i)).collect();
    let ib: Vec<_> = (0..n).map(|j| invariant(b, j)).collect();
    let mut out = Vec::new();
    search(a, b, &ia, &ib, &mut Vec::new(), &mut vec![false; n], &mut out, true);
    !out.is_empty()
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &FiniteStructure,
    b: &FiniteStructure,
    ia: &[(usize, usize, usize, usize)],
    ib: &[(usize, usize, usize, usize)],
    m: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
    first_only: bool,
) {
    let i = m.len();
    if i == a.len() {
        out.push(m.clone());
        return;
    }
    for j in 0..b.len() {
        if used[j] || ia[i] != ib[j] || !consistent(a, b, m, i, j) {
            continue;
        }
        used[j] = true;
        m.push(j);
        search(a, b, ia, ib, m, used, out, first_only);
        m.pop();
        used[j] = false;
        if first_only && !out.is_empty() {
            return;
        }
    }
}

/// Encoding of `s` read through `order` (`order[k]` is the old index placed
/// at position `k`).
fn encode(s: &FiniteStructure, order: &[usize]) -> Vec<bool> {
    let n = order.len();
    let mut code = Vec::with_capacity(n * n + n * n * n);
    for &i in order {
        for &j in order {
            code.push(s.leq(i, j));
        }
    }
    for &z in order {
        for &x in order {
            for &y in order {
                code.push(s.c(z, x, y));
            }
        }
    }
    code
}

/// A relabeling permutation `perm` (old index `i` becomes `perm[i]`) such
/// that isomorphic structures get identical relabeled tables.
pub fn canonical_labeling(s: &FiniteStructure) -> Vec<usize> {
    let n = s.len();
    let mut idx: Vec<usize> = (0..n).collect();
    let inv: Vec<_> = (0..n).map(|i| invariant(s, i)).collect();
    idx.sort_by_key(|&i| (inv[i], i));
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &i in &idx {
        match blocks.last_mut() {
            Some(b) if inv[b[0]] == inv[i] => b.push(i),
            _ => blocks.push(vec![i]),
        }
    }
    let mut best: Option<(Vec<bool>, Vec<usize>)> = None;
    let mut order = Vec::with_capacity(n);
    walk_blocks(s, &blocks, 0, &mut order, &mut vec![false; n], &mut best);
    let order = best.map(|(_, o)| o).unwrap_or_default();
    let mut perm = vec![0; n];
    for (k, &i) in order.iter().enumerate() {
        perm[i] = k;
    }
    perm
}

fn walk_blocks(
    s: &FiniteStructure,
    blocks: &[Vec<usize>],
    bi: usize,
    order: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut Option<(Vec<bool>, Vec<usize>)>,
) {
    if bi == blocks.len() {
        let code = encode(s, order);
        if best.as_ref().is_none_or(|(c, _)| code < *c) {
            *best = Some((code, order.clone()));
        }
        return;
    }
    let block = &blocks[bi];
    let placed = order.len() - blocks[..bi].iter().map(Vec::len).sum::<usize>();
    if placed == block.len() {
        return walk_blocks(s, blocks, bi + 1, order, used, best);
    }
    for &i in block {
        if used[i] {
            continue;
        }
        used[i] = true;
        order.push(i);
        walk_blocks(s, blocks, bi, order, used, best);
        order.pop();
        used[i] = false;
    }
}

pub fn canonical_form(s: &FiniteStructure) -> FiniteStructure {
    s.relabel(&canonical_labeling(s))
}
