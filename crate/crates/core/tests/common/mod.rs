//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use sparse_hyper::Hypergraph;

/// Union size of a set of edges, by plain set insertion.
pub fn span(edges: &[&Vec<u32>]) -> usize {
    edges.iter().flat_map(|e| e.iter()).unique().count()
}

/// Whether some `e` distinct edges have union of at most `v` vertices.
pub fn brute_violates(h: &Hypergraph, v: usize, e: usize) -> bool {
    h.edges().iter().combinations(e).any(|c| span(&c) <= v)
}

pub fn all_edges(n: usize, r: usize) -> Vec<Vec<u32>> {
    (0..n as u32).combinations(r).collect()
}

// Some `left` masks from `masks[start..]` whose union with `acc` has at most `v` bits.
fn any_small_union(masks: &[u64], start: usize, left: usize, acc: u64, v: usize) -> bool {
    if left == 0 {
        return acc.count_ones() as usize <= v;
    }
    (start..masks.len()).any(|i| any_small_union(masks, i + 1, left - 1, acc | masks[i], v))
}

/// Whether the edge set `chosen` (as vertex masks) violates any `(v, e)`.
fn mask_violates(chosen: &[u64], constraints: &[(usize, usize)]) -> bool {
    constraints.iter().any(|&(v, e)| any_small_union(chosen, 0, e, 0, v))
}

/// `f_r(n, constraints)` by checking every edge subset. Feasible up to 20 candidate edges.
pub fn turan_by_subsets(n: usize, r: usize, constraints: &[(usize, usize)]) -> usize {
    turan_by_subsets_with(n, r, constraints, |_| true)
}

/// Like [`turan_by_subsets`], keeping only edge sets accepted by `extra`.
pub fn turan_by_subsets_with(
    n: usize,
    r: usize,
    constraints: &[(usize, usize)],
    extra: impl Fn(&[Vec<u32>]) -> bool,
) -> usize {
    let edges = all_edges(n, r);
    let cands: Vec<u64> = edges
        .iter()
        .map(|e| e.iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    assert!(cands.len() <= 20, "too many candidates for subset enumeration");
    let mut best = 0;
    let mut chosen = Vec::with_capacity(cands.len());
    for bits in 0u32..(1 << cands.len()) {
        let size = bits.count_ones() as usize;
        if size <= best {
            continue;
        }
        chosen.clear();
        chosen.extend((0..cands.len()).filter(|i| bits >> i & 1 == 1).map(|i| cands[i]));
        if !mask_violates(&chosen, constraints) {
            let set: Vec<Vec<u32>> = (0..cands.len()).filter(|i| bits >> i & 1 == 1).map(|i| edges[i].clone()).collect();
            if !extra(&set) {
                continue;
            }
            best = size;
        }
    }
    best
}

/// `f_r(n, constraints)` by enumerating every free edge set: each free set is
/// reached by adding edges in increasing order, since freeness is inherited
/// by subsets. Returns the optimum and one maximum free set.
pub fn turan_by_downsets(n: usize, r: usize, constraints: &[(usize, usize)]) -> (usize, Vec<Vec<u32>>) {
    let edges = all_edges(n, r);
    let cands: Vec<u64> = edges
        .iter()
        .map(|e| e.iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    let mut best: Vec<usize> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(
        cands: &[u64],
        constraints: &[(usize, usize)],
        next: usize,
        stack: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        if stack.len() > best.len() {
            *best = stack.clone();
        }
        for i in next..cands.len() {
            let chosen: Vec<u64> = stack.iter().map(|&j| cands[j]).collect();
            let ok = constraints
                .iter()
                .all(|&(v, e)| !any_small_union(&chosen, 0, e - 1, cands[i], v));
            if ok {
                stack.push(i);
                rec(cands, constraints, i + 1, stack, best);
                stack.pop();
            }
        }
    }
    rec(&cands, constraints, 0, &mut stack, &mut best);
    let witness: Vec<Vec<u32>> = best.iter().map(|&i| edges[i].clone()).collect();
    let masks: Vec<u64> = best.iter().map(|&i| cands[i]).collect();
    assert!(!mask_violates(&masks, constraints), "downset enumeration produced a violating set");
    (best.len(), witness)
}

/// Exact optimum: subset enumeration when small enough, downsets otherwise.
pub fn turan_oracle(n: usize, r: usize, constraints: &[(usize, usize)]) -> usize {
    if all_edges(n, r).len() <= 20 {
        turan_by_subsets(n, r, constraints)
    } else {
        turan_by_downsets(n, r, constraints).0
    }
}

/// A random `r`-graph on `n` vertices with up to `max_edges` distinct edges.
pub fn random_hypergraph<R: Rng>(rng: &mut R, n: usize, r: usize, max_edges: usize) -> Hypergraph {
    let mut pool = all_edges(n, r);
    pool.shuffle(rng);
    let m = rng.gen_range(0..=max_edges.min(pool.len()));
    Hypergraph::build(n, r, pool.into_iter().take(m)).unwrap()
}

/// Codegree of a vertex subset, by scanning every edge.
pub fn scan_codegree(h: &Hypergraph, subset: &[u32]) -> usize {
    h.edges().iter().filter(|e| subset.iter().all(|v| e.contains(v))).count()
}

pub fn fano() -> Hypergraph {
    Hypergraph::build(
        7,
        3,
        [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]],
    )
    .unwrap()
}

/// Every `(k-1)`-subset of `[n]` has codegree `0` or at least `e` in `edges`.
pub fn codegree_rule_holds(n: usize, k: usize, e: usize, edges: &[Vec<u32>]) -> bool {
    (0..n as u32).combinations(k - 1).all(|s| {
        let d = edges.iter().filter(|a| s.iter().all(|v| a.contains(v))).count();
        d == 0 || d >= e
    })
}
