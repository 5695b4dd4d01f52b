//! Brute-force reference computations, written straight from the
//! definitions and used to cross-check the fast algorithms.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::{EdgeSet, VertexSet};
use crate::count::CountParams;
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::matroid::RankOracle;

pub const SUBSET_CAP: usize = 20;

fn induced_count(pairs: &[(usize, usize)], x: u32) -> usize {
    pairs
        .iter()
        .filter(|&&(a, b)| x >> a & 1 == 1 && x >> b & 1 == 1)
        .count()
}

/// `|I[X]| <= k|X| - l` for every vertex set `X` with at least two
/// vertices; equivalent to the subset condition on `I`.
pub fn count_independent(n: usize, pairs: &[(usize, usize)], p: CountParams) -> bool {
    assert!(n <= 24, "vertex-subset scan limited to 24 vertices");
    (0u32..1 << n)
        .filter(|x| x.count_ones() >= 2)
        .all(|x| induced_count(pairs, x) as i64 <= p.bound(x.count_ones() as usize))
}

/// Largest independent subset by enumerating all edge subsets.
pub fn count_rank_exhaustive(n: usize, pairs: &[(usize, usize)], p: CountParams) -> Result<usize> {
    let m = pairs.len();
    if m > SUBSET_CAP {
        return Err(Error::OverCap {
            what: "edge subsets",
            size: m,
            cap: SUBSET_CAP,
        });
    }
    let mut best = 0;
    let mut sub = Vec::with_capacity(m);
    for mask in 0u32..1 << m {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        sub.clear();
        sub.extend((0..m).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]));
        if count_independent(n, &sub, p) {
            best = size;
        }
    }
    Ok(best)
}

/// Matroid greedy with the vertex-subset test kept incremental: the number
/// of accepted edges induced by every vertex set is stored, and an edge is
/// accepted when no superset of its ends would exceed its bound.
pub fn count_rank_greedy(n: usize, pairs: &[(usize, usize)], p: CountParams) -> usize {
    assert!(n <= 16, "greedy vertex-subset table limited to 16 vertices");
    let full: u32 = (1 << n) - 1;
    let mut induced = vec![0i64; 1 << n];
    let bound: Vec<i64> = (0..=n).map(|s| p.bound(s)).collect();
    let mut rank = 0;
    let mut supersets = Vec::new();
    for &(a, b) in pairs {
        let base = 1u32 << a | 1u32 << b;
        let rest = full & !base;
        supersets.clear();
        // All supersets of {a, b}: submasks of the remaining vertices.
        let mut s = rest;
        loop {
            supersets.push(base | s);
            if s == 0 {
                break;
            }
            s = (s - 1) & rest;
        }
        let ok = supersets
            .iter()
            .all(|&x| induced[x as usize] < bound[x.count_ones() as usize]);
        if ok {
            for &x in &supersets {
                induced[x as usize] += 1;
            }
            rank += 1;
        }
    }
    rank
}

/// Components as minimal nonempty separators: `S` separates when
/// `r(S) + r(E - S) = r(E)`.
pub fn separator_components<O: RankOracle + ?Sized>(o: &O) -> Result<Vec<EdgeSet>> {
    let m = o.ground_size();
    if m > SUBSET_CAP {
        return Err(Error::OverCap {
            what: "separator scan",
            size: m,
            cap: SUBSET_CAP,
        });
    }
    let total = o.full_rank();
    let mut comp: Vec<EdgeSet> = (0..m).map(|_| EdgeSet::full(m)).collect();
    for mask in 1u64..1 << m {
        let s = EdgeSet::from_mask(m, mask);
        let rest = s.complement();
        if o.rank(&s) + o.rank(&rest) == total {
            for e in &s {
                comp[e] = comp[e].intersection(&s);
            }
        }
    }
    let mut out: Vec<EdgeSet> = Vec::new();
    for c in comp {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out.sort_by_key(|c| c.first());
    Ok(out)
}

/// Smallest vertex set whose removal disconnects the underlying simple
/// graph, or `n - 1` when none exists.
pub fn vertex_connectivity_brute(g: &MultiGraph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 20, "vertex-cut scan limited to 20 vertices");
    let mut best = n.saturating_sub(1);
    for mask in 0u32..1 << n {
        let size = mask.count_ones() as usize;
        if size >= best || n - size < 2 {
            continue;
        }
        let keep = VertexSet::from_indices(n, (0..n).filter(|&v| mask >> v & 1 == 0));
        if !g.induced_subgraph(&keep).is_connected() {
            best = size;
        }
    }
    best
}
