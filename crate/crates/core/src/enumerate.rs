//! Exhaustive enumeration of small graphs.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::construct::complete_pairs;
use crate::graph::MultiGraph;

// Simple graphs are handled as bitmasks over the pairs of `complete_pairs`.

fn pair_index(n: usize) -> Vec<Vec<usize>> {
    let mut idx = vec![vec![usize::MAX; n]; n];
    for (i, &(a, b)) in complete_pairs(n).iter().enumerate() {
        idx[a][b] = i;
        idx[b][a] = i;
    }
    idx
}

fn degrees(n: usize, mask: u32, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut d = vec![0; n];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            d[a] += 1;
            d[b] += 1;
        }
    }
    d
}

/// Smallest relabeled mask over all labelings that respect a refinement of
/// the vertices by degree and neighbour degrees.
fn canonical(n: usize, mask: u32, pairs: &[(usize, usize)], idx: &[Vec<usize>]) -> u32 {
    let deg = degrees(n, mask, pairs);
    let adjacent = |a: usize, b: usize| a != b && mask >> idx[a][b] & 1 == 1;
    let mut inv: Vec<(usize, Vec<usize>, usize)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = (0..n).filter(|&w| adjacent(v, w)).map(|w| deg[w]).collect();
            nd.sort_unstable();
            (deg[v], nd, v)
        })
        .collect();
    inv.sort();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if i > 0 && inv[i].0 == inv[i - 1].0 && inv[i].1 == inv[i - 1].1 {
            cells.last_mut().unwrap().push(inv[i].2);
        } else {
            cells.push(vec![inv[i].2]);
        }
    }
    let mut best = u32::MAX;
    let mut label = vec![0usize; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    permute_cells(&cells, 0, &mut order, &mut |ord: &[usize]| {
        for (pos, &v) in ord.iter().enumerate() {
            label[v] = pos;
        }
        let mut m = 0u32;
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                m |= 1 << idx[label[a]][label[b]];
            }
        }
        best = best.min(m);
    });
    best
}

fn permute_cells(cells: &[Vec<usize>], c: usize, order: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if c == cells.len() {
        f(order);
        return;
    }
    let mut cell = cells[c].clone();
    let len = cell.len();
    heap_permutations(&mut cell, len, &mut |perm: &[usize]| {
        let base = order.len();
        order.extend_from_slice(perm);
        permute_cells(cells, c + 1, order, f);
        order.truncate(base);
    });
}

fn heap_permutations(a: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k <= 1 {
        f(a);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(a, k - 1, f);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap_permutations(a, k - 1, f);
}

/// All simple graphs on exactly `n` vertices up to isomorphism (isolated
/// vertices allowed), `n <= 8`.
pub fn simple_graphs(n: usize) -> Vec<MultiGraph> {
    assert!(n <= 8, "simple_graphs supports at most 8 vertices");
    let pairs = complete_pairs(n);
    let idx = pair_index(n);
    let mut level: BTreeSet<u32> = BTreeSet::from([0]);
    let mut all: Vec<u32> = vec![0];
    for _ in 0..pairs.len() {
        let mut next = BTreeSet::new();
        for &m in &level {
            for i in 0..pairs.len() {
                if m >> i & 1 == 0 {
                    next.insert(canonical(n, m | 1 << i, &pairs, &idx));
                }
            }
        }
        all.extend(next.iter().copied());
        level = next;
    }
    all.into_iter()
        .map(|m| {
            let chosen: Vec<(usize, usize)> = (0..pairs.len())
                .filter(|&i| m >> i & 1 == 1)
                .map(|i| pairs[i])
                .collect();
            MultiGraph::from_pairs(n, &chosen).expect("valid pairs")
        })
        .collect()
}

/// Calls `f` with a multiplicity for each pair of [`complete_pairs`]`(n)`,
/// over all vectors with entries at most `max_mult` whose degree sequence is
/// non-increasing in vertex order. Every multigraph on at most `n` vertices
/// with that multiplicity bound is isomorphic to at least one visited
/// vector.
pub fn for_each_multigraph(n: usize, max_mult: u8, mut f: impl FnMut(&[u8])) {
    let pairs = complete_pairs(n);
    let mut mult = vec![0u8; pairs.len()];
    let mut deg = vec![0usize; n];
    rec(&pairs, 0, max_mult, &mut mult, &mut deg, &mut f);
}

fn rec(
    pairs: &[(usize, usize)],
    i: usize,
    max_mult: u8,
    mult: &mut [u8],
    deg: &mut [usize],
    f: &mut impl FnMut(&[u8]),
) {
    let n = deg.len();
    // Vertex a's degree is final once the row of pairs (a, *) is done.
    let row_done = |i: usize| i == pairs.len() || (i > 0 && pairs[i].0 != pairs[i - 1].0);
    if row_done(i) && i > 0 {
        let a = pairs[i - 1].0;
        if a > 0 && deg[a - 1] < deg[a] {
            return;
        }
        if i == pairs.len() && n >= 2 && deg[n - 2] < deg[n - 1] {
            return;
        }
    }
    if i == pairs.len() {
        f(mult);
        return;
    }
    let (a, b) = pairs[i];
    for m in 0..=max_mult {
        mult[i] = m;
        deg[a] += m as usize;
        deg[b] += m as usize;
        rec(pairs, i + 1, max_mult, mult, deg, f);
        deg[a] -= m as usize;
        deg[b] -= m as usize;
    }
    mult[i] = 0;
}

/// Expands a multiplicity vector into the edge list of a multigraph.
pub fn multigraph_from_multiplicities(n: usize, mult: &[u8]) -> MultiGraph {
    let pairs = complete_pairs(n);
    let mut out = Vec::new();
    for (i, &m) in mult.iter().enumerate() {
        for _ in 0..m {
            out.push(pairs[i]);
        }
    }
    MultiGraph::from_pairs(n, &out).expect("valid pairs")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        // Numbers of graphs on n unlabeled vertices.
        let expected = [1usize, 1, 2, 4, 11, 34, 156];
        for (n, &want) in expected.iter().enumerate().skip(1) {
            assert_eq!(simple_graphs(n).len(), want, "n = {n}");
        }
    }

    #[test]
    fn multigraph_visit_covers_degree_sorted_vectors() {
        let mut count = 0;
        for_each_multigraph(3, 1, |m| {
            count += 1;
            let g = multigraph_from_multiplicities(3, m);
            let d = g.degrees();
            assert!(d.windows(2).all(|w| w[0] >= w[1]));
        });
        // empty, one edge {0,1}, path centered at 0, triangle
        assert_eq!(count, 4);
    }
}
