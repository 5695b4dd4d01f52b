//! Count matroids `M_{k,l}` on multigraphs.
//!
//! For `0 <= l <= 2k-1` rank comes from a `(k,l)`-pebble game; for `l < 0`
//! it comes from a min-cut over vertex sets. Rank certificates are
//! returned as an edge set `F` plus a thin cover of the remaining edges.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::{EdgeSet, VertexSet};
use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, INF};
use crate::graph::MultiGraph;
use crate::matroid::{self, RankOracle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CountParams {
    pub k: usize,
    pub l: i64,
}

impl CountParams {
    pub fn new(k: usize, l: i64) -> Result<Self> {
        if k == 0 || l > 2 * k as i64 - 1 {
            return Err(Error::InvalidParams(format!(
                "count matroid needs k >= 1 and l <= 2k-1, got ({k},{l})"
            )));
        }
        Ok(CountParams { k, l })
    }

    /// `k|X| - l` for a set of `size` vertices.
    pub fn bound(self, size: usize) -> i64 {
        self.k as i64 * size as i64 - self.l
    }

    /// Multiplied by `t`: the parameters whose matroid is the `t`-fold union.
    pub fn scaled(self, t: usize) -> Self {
        CountParams {
            k: self.k * t,
            l: self.l * t as i64,
        }
    }
}

/// Pebble game state over a fixed vertex set: each vertex starts with `k`
/// pebbles and every accepted edge is covered by a pebble of its tail.
#[derive(Debug, Clone)]
pub struct PebbleGame {
    k: usize,
    l: usize,
    pebbles: Vec<usize>,
    /// Heads of the accepted edges leaving each vertex.
    out: Vec<Vec<usize>>,
    accepted: usize,
    stamp: Vec<u32>,
    epoch: u32,
    parent: Vec<usize>,
    stack: Vec<usize>,
}

impl PebbleGame {
    /// Requires `0 <= l <= 2k - 1`.
    pub fn new(n: usize, p: CountParams) -> Self {
        assert!(p.l >= 0, "pebble game needs l >= 0");
        PebbleGame {
            k: p.k,
            l: p.l as usize,
            pebbles: vec![p.k; n],
            out: vec![Vec::new(); n],
            accepted: 0,
            stamp: vec![0; n],
            epoch: 0,
            parent: vec![usize::MAX; n],
            stack: Vec::new(),
        }
    }

    pub fn accepted(&self) -> usize {
        self.accepted
    }

    pub fn pebbles(&self) -> &[usize] {
        &self.pebbles
    }

    /// Out-neighbours (heads of covered edges) of every vertex.
    pub fn orientation(&self) -> &[Vec<usize>] {
        &self.out
    }

    /// Moves one free pebble to `root` along a reversed path, never passing
    /// through `other`. Returns false when no free pebble is reachable.
    fn fetch(&mut self, root: usize, other: usize) -> bool {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        let ep = self.epoch;
        self.stamp[root] = ep;
        self.stamp[other] = ep;
        self.stack.clear();
        self.stack.push(root);
        let mut found = usize::MAX;
        'search: while let Some(x) = self.stack.pop() {
            for i in 0..self.out[x].len() {
                let y = self.out[x][i];
                if self.stamp[y] == ep {
                    continue;
                }
                self.stamp[y] = ep;
                self.parent[y] = x;
                if self.pebbles[y] > 0 {
                    found = y;
                    break 'search;
                }
                self.stack.push(y);
            }
        }
        if found == usize::MAX {
            return false;
        }
        self.pebbles[found] -= 1;
        let mut y = found;
        while y != root {
            let x = self.parent[y];
            let pos = self.out[x].iter().position(|&h| h == y).expect("path arc");
            self.out[x].swap_remove(pos);
            self.out[y].push(x);
            y = x;
        }
        self.pebbles[root] += 1;
        true
    }

    /// Gathers pebbles on `u` and `v` until they hold `target` together or
    /// no more can be fetched; returns the number they hold.
    pub fn gather(&mut self, u: usize, v: usize, target: usize) -> usize {
        while self.pebbles[u] + self.pebbles[v] < target {
            if self.pebbles[u] < self.k && self.fetch(u, v) {
                continue;
            }
            if self.pebbles[v] < self.k && self.fetch(v, u) {
                continue;
            }
            break;
        }
        self.pebbles[u] + self.pebbles[v]
    }

    /// Accepts `uv` when `l + 1` pebbles can be gathered on its ends.
    pub fn insert(&mut self, u: usize, v: usize) -> bool {
        if self.gather(u, v, self.l + 1) <= self.l {
            return false;
        }
        let (tail, head) = if self.pebbles[u] > 0 { (u, v) } else { (v, u) };
        self.pebbles[tail] -= 1;
        self.out[tail].push(head);
        self.accepted += 1;
        true
    }

    /// After a failed gather on `u`, `v` (exactly `l` pebbles there), the
    /// vertices that reach no free pebble other than those on `u` and `v`.
    /// This is the largest tight set containing both ends.
    pub fn tight_closure(&self, u: usize, v: usize) -> VertexSet {
        let n = self.pebbles.len();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (x, heads) in self.out.iter().enumerate() {
            for &y in heads {
                rev[y].push(x);
            }
        }
        let mut loose = vec![false; n];
        let mut stack: Vec<usize> = (0..n)
            .filter(|&x| x != u && x != v && self.pebbles[x] > 0)
            .collect();
        for &x in &stack {
            loose[x] = true;
        }
        while let Some(y) = stack.pop() {
            for &x in &rev[y] {
                if !loose[x] {
                    loose[x] = true;
                    stack.push(x);
                }
            }
        }
        VertexSet::from_indices(n, (0..n).filter(|&x| !loose[x]))
    }
}

fn pebble_rank(n: usize, pairs: &[(usize, usize)], p: CountParams) -> usize {
    let mut game = PebbleGame::new(n, p);
    for &(a, b) in pairs {
        game.insert(a, b);
    }
    game.accepted()
}

/// Maximum of `|E'[W]| - k|W|` over vertex sets `W`, with a maximiser.
/// The empty set counts, so the value is never negative.
fn max_closure(n: usize, pairs: &[(usize, usize)], k: usize) -> (i64, VertexSet) {
    let mut groups: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for &(a, b) in pairs {
        *groups.entry((a.min(b), a.max(b))).or_insert(0) += 1;
    }
    let src = 0;
    let sink = 1;
    let vnode = |v: usize| 2 + v;
    let mut f = FlowNetwork::new(2 + n + groups.len());
    for (i, (&(a, b), &mult)) in groups.iter().enumerate() {
        let node = 2 + n + i;
        f.add_arc(src, node, mult);
        f.add_arc(node, vnode(a), INF);
        f.add_arc(node, vnode(b), INF);
    }
    for v in 0..n {
        f.add_arc(vnode(v), sink, k as i64);
    }
    let flow = f.max_flow(src, sink);
    let side = f.source_side(src);
    let w = VertexSet::from_indices(n, (0..n).filter(|&v| side[vnode(v)]));
    (pairs.len() as i64 - flow, w)
}

fn mincut_rank(n: usize, pairs: &[(usize, usize)], p: CountParams) -> (usize, VertexSet) {
    let m = pairs.len() as i64;
    let (best, w) = max_closure(n, pairs, p.k);
    if w.is_empty() {
        return (m as usize, w);
    }
    ((m - p.l - best).min(m) as usize, w)
}

/// Rank of the edge list `pairs` on vertices `0..n`.
pub fn rank_pairs(n: usize, pairs: &[(usize, usize)], p: CountParams) -> usize {
    if p.l >= 0 {
        pebble_rank(n, pairs, p)
    } else {
        mincut_rank(n, pairs, p).0
    }
}

/// `M_{k,l}(G)` as a rank oracle on the edge indices of `G`.
#[derive(Debug, Clone)]
pub struct CountMatroid {
    n: usize,
    pairs: Vec<(usize, usize)>,
    params: CountParams,
}

impl CountMatroid {
    pub fn new(g: &MultiGraph, params: CountParams) -> Self {
        CountMatroid {
            n: g.vertex_count(),
            pairs: g.pairs(),
            params,
        }
    }

    pub fn params(&self) -> CountParams {
        self.params
    }
}

impl RankOracle for CountMatroid {
    fn ground_size(&self) -> usize {
        self.pairs.len()
    }
    fn rank(&self, set: &EdgeSet) -> usize {
        let sub: Vec<(usize, usize)> = set.iter().map(|e| self.pairs[e]).collect();
        rank_pairs(self.n, &sub, self.params)
    }
}

pub fn rank(g: &MultiGraph, p: CountParams, set: &EdgeSet) -> usize {
    rank_pairs(g.vertex_count(), &g.pairs_of(set), p)
}

pub fn is_independent(g: &MultiGraph, p: CountParams, set: &EdgeSet) -> bool {
    rank(g, p, set) == set.len()
}

/// Accepted edges of a pebble game run over `set` in index order (`l >= 0`),
/// or a greedy basis through the min-cut rank (`l < 0`).
pub fn basis(g: &MultiGraph, p: CountParams, set: &EdgeSet) -> EdgeSet {
    if p.l >= 0 {
        let mut game = PebbleGame::new(g.vertex_count(), p);
        EdgeSet::from_indices(
            g.edge_count(),
            set.iter().filter(|&e| {
                let (a, b) = g.ends(e);
                game.insert(a, b)
            }),
        )
    } else {
        matroid::basis_within(&CountMatroid::new(g, p), set)
    }
}

/// `F` together with a cover of `E' - F`; its value is
/// `|F| + Σ (k|X| - l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCertificate {
    pub f: EdgeSet,
    pub cover: Vec<VertexSet>,
    pub value: i64,
}

impl CoverCertificate {
    pub fn evaluate(f: &EdgeSet, cover: &[VertexSet], p: CountParams) -> i64 {
        f.len() as i64 + cover.iter().map(|x| p.bound(x.len())).sum::<i64>()
    }

    /// Re-checks the certificate from scratch: every set has at least two
    /// vertices, `cover` induces every edge of `within - F`, pairwise
    /// intersections obey the thinness required for the regime of `l`, and
    /// the stored value is the evaluated value.
    pub fn verify(&self, g: &MultiGraph, p: CountParams, within: &EdgeSet) -> Result<()> {
        let fail = |m: &str| Err(Error::Precondition(format!("certificate: {m}")));
        if !self.f.is_subset(within) {
            return fail("F is not inside the edge set");
        }
        if self.cover.iter().any(|x| x.len() < 2) {
            return fail("cover set with fewer than two vertices");
        }
        let rest = within.difference(&self.f);
        for e in &rest {
            let (a, b) = g.ends(e);
            if !self.cover.iter().any(|x| x.contains(a) && x.contains(b)) {
                return fail("edge outside F not induced by the cover");
            }
        }
        let thin = if p.l > 0 && p.l <= p.k as i64 { 0 } else { 1 };
        for (i, x) in self.cover.iter().enumerate() {
            for y in &self.cover[i + 1..] {
                if x.intersection(y).len() > thin {
                    return fail("cover is not thin enough");
                }
            }
        }
        if p.l <= 0 && !rest.is_empty() && self.cover != [g.vertices_of(&rest)] {
            return fail("cover is not the single set V(E' - F)");
        }
        if Self::evaluate(&self.f, &self.cover, p) != self.value {
            return fail("stored value differs from evaluation");
        }
        Ok(())
    }
}

/// Merges parts whose vertex sets meet in at least two vertices (one
/// vertex when `0 < l <= k`; everything when `l <= 0`) until no such pair
/// remains, returning the vertex sets of the merged parts.
pub fn uncross_partition(g: &MultiGraph, p: CountParams, parts: &[EdgeSet]) -> Vec<VertexSet> {
    let mut sets: Vec<VertexSet> = parts
        .iter()
        .filter(|y| !y.is_empty())
        .map(|y| g.vertices_of(y))
        .collect();
    if p.l <= 0 {
        let mut all = VertexSet::new(g.vertex_count());
        for s in &sets {
            all.union_with(s);
        }
        return if sets.is_empty() { sets } else { vec![all] };
    }
    let threshold = if p.l <= p.k as i64 { 1 } else { 2 };
    loop {
        let mut merged = false;
        'outer: for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if sets[i].intersection(&sets[j]).len() >= threshold {
                    let b = sets.swap_remove(j);
                    sets[i].union_with(&b);
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            break;
        }
    }
    sets.sort_by_key(|s| s.first());
    sets
}

/// A minimising `(F, cover)` pair whose value equals the rank of `set`.
pub fn rank_certificate(g: &MultiGraph, p: CountParams, set: &EdgeSet) -> Result<CoverCertificate> {
    if set.is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    let n = g.vertex_count();
    if p.l < 0 {
        let pairs = g.pairs_of(set);
        let (r, w) = mincut_rank(n, &pairs, p);
        let inner = g.induced_edges(&w, set);
        let f = set.difference(&inner);
        let cover = vec![g.vertices_of(&inner)];
        let value = CoverCertificate::evaluate(&f, &cover, p);
        let cert = if !inner.is_empty() && value == r as i64 {
            CoverCertificate { f, cover, value }
        } else {
            CoverCertificate { value: set.len() as i64, f: set.clone(), cover: Vec::new() }
        };
        debug_assert_eq!(cert.value, r as i64);
        return Ok(cert);
    }
    let mut game = PebbleGame::new(n, p);
    for e in set {
        let (a, b) = g.ends(e);
        game.insert(a, b);
    }
    let l = p.l as usize;
    let mut tight: Vec<VertexSet> = Vec::new();
    for e in set {
        let (a, b) = g.ends(e);
        if tight.iter().any(|s| s.contains(a) && s.contains(b)) {
            continue;
        }
        if game.gather(a, b, l + 1) <= l {
            tight.push(game.tight_closure(a, b));
        }
    }
    let parts: Vec<EdgeSet> = tight.iter().map(|s| g.induced_edges(s, set)).collect();
    let mut covered = EdgeSet::new(g.edge_count());
    for y in &parts {
        covered.union_with(y);
    }
    let f = set.difference(&covered);
    let cover = uncross_partition(g, p, &parts);
    let value = CoverCertificate::evaluate(&f, &cover, p);
    debug_assert_eq!(value, game.accepted() as i64);
    Ok(CoverCertificate { f, cover, value })
}

pub fn is_sparse(g: &MultiGraph, p: CountParams) -> bool {
    rank(g, p, &g.all_edges()) == g.edge_count()
}

pub fn is_rigid(g: &MultiGraph, p: CountParams) -> bool {
    rank(g, p, &g.all_edges()) as i64 == p.bound(g.vertex_count())
}

pub fn is_tight(g: &MultiGraph, p: CountParams) -> bool {
    is_rigid(g, p) && g.edge_count() as i64 == p.bound(g.vertex_count())
}

/// `G - e` is rigid for every edge `e`. Deleting an edge outside a basis
/// leaves the rank unchanged, so only basis edges need a rank query.
pub fn is_redundant(g: &MultiGraph, p: CountParams) -> bool {
    if g.edge_count() == 0 {
        return true;
    }
    let all = g.all_edges();
    let b = basis(g, p, &all);
    let target = p.bound(g.vertex_count());
    if b.len() as i64 != target {
        return false;
    }
    b.iter().all(|e| rank(g, p, &all.without(e)) as i64 == target)
}

/// Connected count matroid.
pub fn is_m_connected(g: &MultiGraph, p: CountParams) -> bool {
    g.edge_count() > 0 && matroid::components(&CountMatroid::new(g, p)).len() == 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MComponent {
    pub edges: EdgeSet,
    pub trivial: bool,
}

pub fn m_components(g: &MultiGraph, p: CountParams) -> Vec<MComponent> {
    matroid::components(&CountMatroid::new(g, p))
        .into_iter()
        .map(|edges| MComponent {
            trivial: edges.len() == 1,
            edges,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::Family;

    fn cp(k: usize, l: i64) -> CountParams {
        CountParams::new(k, l).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(CountParams::new(0, 0).is_err());
        assert!(CountParams::new(2, 4).is_err());
        assert!(CountParams::new(2, -7).is_ok());
    }

    #[test]
    fn independence_examples() {
        let k4 = Family::Complete(4).build().unwrap();
        assert!(!is_independent(&k4, cp(2, 3), &k4.all_edges()));
        for (k, l) in [(1usize, 1i64), (2, 3), (2, 0), (3, 5), (2, -1)] {
            let m = (2 * k as i64 - l + 1) as usize;
            let g = Family::ParallelPair(m).build().unwrap();
            assert!(!is_independent(&g, cp(k, l), &g.all_edges()));
            assert!(is_independent(&g, cp(k, l), &g.all_edges().without(0)));
            assert!(is_independent(&g, cp(k, l), &g.empty_edge_set()));
        }
    }

    #[test]
    fn rank_examples() {
        for n in 3..8 {
            let c = Family::Cycle(n).build().unwrap();
            assert_eq!(rank(&c, cp(1, 1), &c.all_edges()), n - 1);
        }
        let k4 = Family::Complete(4).build().unwrap();
        assert_eq!(rank(&k4, cp(2, 3), &k4.all_edges()), 5);
        assert_eq!(rank(&k4, cp(2, 3), &k4.empty_edge_set()), 0);
    }

    #[test]
    fn certificate_examples() {
        let k4 = Family::Complete(4).build().unwrap();
        let c = rank_certificate(&k4, cp(2, 3), &k4.all_edges()).unwrap();
        assert!(c.f.is_empty());
        assert_eq!(c.cover, vec![VertexSet::full(4)]);
        assert_eq!(c.value, 5);
        c.verify(&k4, cp(2, 3), &k4.all_edges()).unwrap();

        let tri2 = MultiGraph::from_pairs(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let c = rank_certificate(&tri2, cp(1, 1), &tri2.all_edges()).unwrap();
        assert!(c.f.is_empty());
        assert_eq!(
            c.cover,
            vec![VertexSet::from_indices(6, [0, 1, 2]), VertexSet::from_indices(6, [3, 4, 5])]
        );
        assert_eq!(c.value, 4);
        assert_eq!(rank_certificate(&k4, cp(1, 1), &k4.empty_edge_set()), Err(Error::EmptyEdgeSet));
    }

    #[test]
    fn uncross_examples() {
        let pair = Family::ParallelPair(2).build().unwrap();
        let parts = [EdgeSet::from_indices(2, [0]), EdgeSet::from_indices(2, [1])];
        for (k, l) in [(1, 1), (2, 3), (2, 0), (2, -3)] {
            assert_eq!(uncross_partition(&pair, cp(k, l), &parts).len(), 1);
        }
        let split = MultiGraph::from_pairs(4, &[(0, 1), (2, 3)]).unwrap();
        let parts = [EdgeSet::from_indices(2, [0]), EdgeSet::from_indices(2, [1])];
        assert_eq!(uncross_partition(&split, cp(2, 3), &parts).len(), 2);
        let path = MultiGraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(uncross_partition(&path, cp(2, 0), &parts).len(), 1);
        assert_eq!(uncross_partition(&path, cp(2, 3), &parts).len(), 2);
    }

    #[test]
    fn predicate_examples() {
        let k7 = Family::Complete(7).build().unwrap();
        assert!(is_redundant(&k7, cp(2, 3)));
        for (k, l) in [(1usize, 1i64), (2, 3), (2, 1), (3, 5)] {
            let g = Family::ParallelPair((2 * k as i64 - l) as usize).build().unwrap();
            assert!(is_tight(&g, cp(k, l)));
        }
        let ly = Family::LovaszYemini { k: 2, l: 3 }.build().unwrap();
        assert!(!is_rigid(&ly, cp(2, 3)));
    }

    #[test]
    fn component_examples() {
        let k7 = Family::Complete(7).build().unwrap();
        let two = k7.disjoint_union(&k7);
        let comps = m_components(&two, cp(2, 3));
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| !c.trivial));
        let tree = Family::Path(6).build().unwrap();
        assert!(m_components(&tree, cp(1, 1)).iter().all(|c| c.trivial));
        let comps = m_components(&k7, cp(2, 3));
        assert_eq!(comps.len(), 1);
        assert!(!comps[0].trivial);
    }
}
