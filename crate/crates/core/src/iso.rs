//! Multigraph isomorphism by backtracking over multiplicity matrices.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::MultiGraph;

/// Per-vertex invariant: degree and sorted multiset of edge multiplicities
/// to neighbours, each tagged with the neighbour's degree.
fn signatures(mult: &[Vec<usize>]) -> Vec<(usize, Vec<(usize, usize)>)> {
    let deg: Vec<usize> = mult.iter().map(|r| r.iter().sum()).collect();
    (0..mult.len())
        .map(|v| {
            let mut s: Vec<(usize, usize)> = (0..mult.len())
                .filter(|&w| mult[v][w] > 0)
                .map(|w| (mult[v][w], deg[w]))
                .collect();
            s.sort_unstable();
            (deg[v], s)
        })
        .collect()
}

/// Returns `map` with `map[v]` the image in `h` of vertex `v` of `g`, so that
/// every pair keeps its edge multiplicity.
pub fn isomorphic(g: &MultiGraph, h: &MultiGraph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let (mg, mh) = (g.multiplicities(), h.multiplicities());
    let (sg, sh) = (signatures(&mg), signatures(&mh));
    let mut a = sg.clone();
    let mut b = sh.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    // Visit g's vertices so that each one after the first is adjacent to an
    // earlier one when possible; rarer signatures first.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let rarity = |v: usize| sg.iter().filter(|s| **s == sg[v]).count();
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| {
                let linked = order.iter().any(|&u: &usize| mg[u][v] > 0);
                (!linked, rarity(v), v)
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(0, &order, &mg, &mh, &sg, &sh, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    depth: usize,
    order: &[usize],
    mg: &[Vec<usize>],
    mh: &[Vec<usize>],
    sg: &[(usize, Vec<(usize, usize)>)],
    sh: &[(usize, Vec<(usize, usize)>)],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..mh.len() {
        if used[w] || sg[v] != sh[w] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| mg[u][v] == mh[map[u]][w]);
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(depth + 1, order, mg, mh, sg, sh, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}
