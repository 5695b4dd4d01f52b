//! Rank of the generic 3-dimensional cofactor matroid `C(G)` and of its
//! `t`-fold union, by exhaustive search over hinged covers.
//!
//! A candidate is a family of vertex sets, each of size at least five,
//! pairwise meeting in at most two vertices and admitting an order in which
//! every set meets the union of its predecessors in at most four vertices.
//! The value of a family is `|F| + t Σ (3|X| - 6) - t Σ_h (deg(h) - 1)` where
//! `F` is the set of edges not induced by any member and `h` ranges over the
//! hinges (pairs shared by two members).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::{EdgeSet, VertexSet};
use crate::connectivity::vertex_connectivity;
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, UnionFind};
use crate::matroid::RankOracle;

/// A pair of vertices shared by at least two sets of a family.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hinge {
    pub pair: (usize, usize),
    pub degree: usize,
}

/// Hinges of a family with their degrees, sorted by pair. Fails when two
/// sets share more than two vertices.
pub fn hinges(sets: &[VertexSet]) -> Result<Vec<Hinge>> {
    let mut found: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, x) in sets.iter().enumerate() {
        for (j, y) in sets.iter().enumerate().skip(i + 1) {
            let common = x.intersection(y);
            if common.len() > 2 {
                return Err(Error::NotThin(i, j));
            }
            if common.len() == 2 {
                let v = common.to_vec();
                found.insert((v[0], v[1]), 0);
            }
        }
    }
    Ok(found
        .into_keys()
        .map(|(a, b)| Hinge {
            pair: (a, b),
            degree: sets.iter().filter(|s| s.contains(a) && s.contains(b)).count(),
        })
        .collect())
}

/// An order of `sets` in which each set meets the union of the earlier ones
/// in at most four vertices, or `None` if no such order exists.
///
/// Sets are peeled from the back: any set meeting the union of all others
/// in at most four vertices can go last, and what remains is again
/// shellable whenever the whole family is, so the first choice never needs
/// to be undone.
pub fn shelling_order(sets: &[VertexSet]) -> Option<Vec<usize>> {
    let mut left: Vec<usize> = (0..sets.len()).collect();
    let mut rev = Vec::with_capacity(sets.len());
    while left.len() > 1 {
        let pos = left.iter().position(|&i| {
            let mut others = VertexSet::new(sets[i].universe());
            for &j in &left {
                if j != i {
                    others.union_with(&sets[j]);
                }
            }
            sets[i].intersection(&others).len() <= 4
        })?;
        rev.push(left.remove(pos));
    }
    rev.extend(left);
    rev.reverse();
    Some(rev)
}

/// Checks that `order` is a permutation witnessing 4-shellability.
pub fn is_shelling(sets: &[VertexSet], order: &[usize]) -> bool {
    let mut seen = vec![false; sets.len()];
    if order.len() != sets.len() || order.iter().any(|&i| i >= sets.len() || core::mem::replace(&mut seen[i], true)) {
        return false;
    }
    let Some(&first) = order.first() else {
        return true;
    };
    let mut union = sets[first].clone();
    for &i in &order[1..] {
        if sets[i].intersection(&union).len() > 4 {
            return false;
        }
        union.union_with(&sets[i]);
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HingedCover {
    pub sets: Vec<VertexSet>,
    pub hinges: Vec<Hinge>,
    /// Indices into `sets` in shelling order.
    pub shelling: Vec<usize>,
}

impl HingedCover {
    /// Builds the cover, computing hinges and a shelling order.
    pub fn new(sets: Vec<VertexSet>) -> Result<Self> {
        if let Some(x) = sets.iter().find(|x| x.len() < 5) {
            return Err(Error::Precondition(format!("cover set of size {} (< 5)", x.len())));
        }
        let hinges = hinges(&sets)?;
        let shelling = shelling_order(&sets)
            .ok_or_else(|| Error::Precondition("cover is not 4-shellable".into()))?;
        Ok(HingedCover { sets, hinges, shelling })
    }

    /// `Σ (3|X| - 6) - Σ_h (deg(h) - 1)`.
    pub fn weight(&self) -> i64 {
        self.sets.iter().map(|x| 3 * x.len() as i64 - 6).sum::<i64>()
            - self.hinges.iter().map(|h| h.degree as i64 - 1).sum::<i64>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CofactorCertificate {
    pub t: usize,
    pub f: EdgeSet,
    pub cover: HingedCover,
    pub value: i64,
}

impl CofactorCertificate {
    /// Recomputes hinges, shelling validity, coverage and value from the
    /// bare sets and `F`.
    pub fn verify(&self, g: &MultiGraph, within: &EdgeSet) -> Result<()> {
        let fail = |m: &str| Err(Error::Precondition(format!("cofactor certificate: {m}")));
        let sets = &self.cover.sets;
        if sets.iter().any(|x| x.len() < 5) {
            return fail("set smaller than five");
        }
        if hinges(sets)? != self.cover.hinges {
            return fail("hinge list differs from recomputation");
        }
        if !is_shelling(sets, &self.cover.shelling) {
            return fail("stored order is not a shelling");
        }
        if !self.f.is_subset(within) {
            return fail("F is not inside the edge set");
        }
        for e in &within.difference(&self.f) {
            let (a, b) = g.ends(e);
            if !sets.iter().any(|x| x.contains(a) && x.contains(b)) {
                return fail("edge outside F not induced by the cover");
            }
        }
        let fresh = HingedCover::new(sets.clone())?;
        if self.f.len() as i64 + self.t as i64 * fresh.weight() != self.value {
            return fail("stored value differs from evaluation");
        }
        Ok(())
    }
}

pub const DEFAULT_CAP: usize = 8;
const HARD_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest number of vertices in one connected piece of the edge set.
    pub cap: usize,
    /// Skip subtrees whose lower bound cannot beat the incumbent.
    pub prune: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { cap: DEFAULT_CAP, prune: true }
    }
}

/// One connected piece of the edge set, on local vertex indices.
struct Piece {
    verts: Vec<usize>,
    edges: Vec<(usize, usize)>,
    ids: Vec<usize>,
}

fn edge_mask(edges: &[(usize, usize)], x: u32) -> u128 {
    let mut m = 0u128;
    for (i, &(a, b)) in edges.iter().enumerate() {
        if x >> a & 1 == 1 && x >> b & 1 == 1 {
            m |= 1 << i;
        }
    }
    m
}

fn local_weight(family: &[u32]) -> i64 {
    let base: i64 = family.iter().map(|x| 3 * x.count_ones() as i64 - 6).sum();
    let mut hs: Vec<u32> = Vec::new();
    for (i, &x) in family.iter().enumerate() {
        for &y in &family[i + 1..] {
            let c = x & y;
            if c.count_ones() == 2 && !hs.contains(&c) {
                hs.push(c);
            }
        }
    }
    let saving: i64 = hs
        .iter()
        .map(|&h| family.iter().filter(|&&x| x & h == h).count() as i64 - 1)
        .sum();
    base - saving
}

fn local_shellable(family: &[u32]) -> bool {
    // Two sets of a 2-thin family meet in at most two vertices.
    if family.len() <= 2 {
        return true;
    }
    let mut left: Vec<u32> = family.to_vec();
    while left.len() > 1 {
        let pos = (0..left.len()).find(|&i| {
            let others = left
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(0u32, |acc, (_, &y)| acc | y);
            (left[i] & others).count_ones() <= 4
        });
        match pos {
            Some(i) => {
                left.swap_remove(i);
            }
            None => return false,
        }
    }
    true
}

struct Search<'a> {
    piece: &'a Piece,
    t: i64,
    prune: bool,
    candidates: Vec<(u32, u128)>,
    best: i64,
    best_family: Vec<u32>,
    family: Vec<u32>,
    covers: Vec<u128>,
}

impl Search<'_> {
    fn visit(&mut self, start: usize) {
        for j in start..self.candidates.len() {
            let (x, em) = self.candidates[j];
            if self.family.iter().any(|&y| (x & y).count_ones() > 2) {
                continue;
            }
            self.family.push(x);
            // Each later set adds at least 3|X| - 6 and recovers at most six
            // through hinges with the sets before it in a shelling order.
            let bound = self.t * (self.family.iter().map(|y| 3 * y.count_ones() as i64 - 12).sum::<i64>() + 6);
            // Families containing a non-shellable family are non-shellable.
            let shellable = local_shellable(&self.family);
            if shellable && (!self.prune || bound < self.best) {
                let covered = self.covers.last().copied().unwrap_or(0) | em;
                let uncovered = self.piece.edges.len() as i64 - covered.count_ones() as i64;
                let value = uncovered + self.t * local_weight(&self.family);
                if value < self.best {
                    self.best = value;
                    self.best_family = self.family.clone();
                }
                self.covers.push(covered);
                self.visit(j + 1);
                self.covers.pop();
            }
            self.family.pop();
        }
    }
}

fn pieces(g: &MultiGraph, within: &EdgeSet) -> Vec<Piece> {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    let mut touched = vec![false; n];
    for e in within {
        let (a, b) = g.ends(e);
        uf.union(a, b);
        touched[a] = true;
        touched[b] = true;
    }
    let mut slot = vec![usize::MAX; n];
    let mut local = vec![usize::MAX; n];
    let mut out: Vec<Piece> = Vec::new();
    for v in 0..n {
        if !touched[v] {
            continue;
        }
        let root = uf.find(v);
        if slot[root] == usize::MAX {
            slot[root] = out.len();
            out.push(Piece { verts: Vec::new(), edges: Vec::new(), ids: Vec::new() });
        }
        let piece = &mut out[slot[root]];
        local[v] = piece.verts.len();
        piece.verts.push(v);
    }
    for e in within {
        let (a, b) = g.ends(e);
        let piece = &mut out[slot[uf.find(a)]];
        piece.edges.push((local[a], local[b]));
        piece.ids.push(e);
    }
    out
}

fn check_simple(g: &MultiGraph, within: &EdgeSet) -> Result<()> {
    let mut pairs: Vec<(usize, usize)> = within.iter().map(|e| g.ends(e)).collect();
    pairs.sort_unstable();
    if pairs.windows(2).any(|w| w[0] == w[1]) {
        Err(Error::NotSimple)
    } else {
        Ok(())
    }
}

/// Exact rank of `within` in the `t`-fold union of `C(G)`, with a
/// minimising certificate. Connected pieces of the edge set are searched
/// independently (the matroid is their direct sum).
pub fn rt_with(g: &MultiGraph, within: &EdgeSet, t: usize, opts: SearchOptions) -> Result<(usize, CofactorCertificate)> {
    if t == 0 {
        return Err(Error::InvalidParams("t must be at least 1".into()));
    }
    check_simple(g, within)?;
    let cap = opts.cap.min(HARD_CAP);
    let parts = pieces(g, within);
    if let Some(p) = parts.iter().find(|p| p.verts.len() > cap) {
        return Err(Error::OverCap {
            what: "cofactor search vertices",
            size: p.verts.len(),
            cap,
        });
    }
    let n = g.vertex_count();
    let mut f = EdgeSet::new(g.edge_count());
    let mut sets = Vec::new();
    let mut total = 0i64;
    for piece in &parts {
        let (best, family) = search_piece(piece, t as i64, opts.prune);
        total += best;
        let mut covered = 0u128;
        for &x in &family {
            covered |= edge_mask(&piece.edges, x);
            let global = piece
                .verts
                .iter()
                .enumerate()
                .filter(|&(i, _)| x >> i & 1 == 1)
                .map(|(_, &v)| v);
            sets.push(VertexSet::from_indices(n, global));
        }
        for (i, &e) in piece.ids.iter().enumerate() {
            if covered >> i & 1 == 0 {
                f.insert(e);
            }
        }
    }
    let cover = HingedCover::new(sets)?;
    let value = f.len() as i64 + t as i64 * cover.weight();
    debug_assert_eq!(value, total);
    Ok((total as usize, CofactorCertificate { t, f, cover, value }))
}

/// Minimum value over the families of one piece and a minimising family.
fn search_piece(piece: &Piece, t: i64, prune: bool) -> (i64, Vec<u32>) {
    let m = piece.edges.len() as i64;
    // A nonempty family is worth at least 9t.
    if prune && m <= 9 * t {
        return (m, Vec::new());
    }
    let k = piece.verts.len();
    let candidates: Vec<(u32, u128)> = (0u32..1 << k)
        .filter(|x| x.count_ones() >= 5)
        .map(|x| (x, edge_mask(&piece.edges, x)))
        .collect();
    let mut s = Search {
        piece,
        t,
        prune,
        candidates,
        best: m,
        best_family: Vec::new(),
        family: Vec::new(),
        covers: Vec::new(),
    };
    s.visit(0);
    (s.best, s.best_family)
}

/// Rank only, without building a certificate.
fn rank_value(g: &MultiGraph, within: &EdgeSet, t: usize, opts: SearchOptions) -> usize {
    pieces(g, within)
        .iter()
        .map(|p| search_piece(p, t as i64, opts.prune).0 as usize)
        .sum()
}

pub fn rt(g: &MultiGraph, within: &EdgeSet, t: usize) -> Result<(usize, CofactorCertificate)> {
    rt_with(g, within, t, SearchOptions::default())
}

pub fn r1(g: &MultiGraph, within: &EdgeSet) -> Result<(usize, CofactorCertificate)> {
    rt(g, within, 1)
}

/// `C^t(G)` as a rank oracle (exhaustive search per query).
#[derive(Debug, Clone)]
pub struct CofactorMatroid {
    graph: MultiGraph,
    t: usize,
    opts: SearchOptions,
}

impl CofactorMatroid {
    pub fn new(g: &MultiGraph, t: usize) -> Result<Self> {
        Self::with_options(g, t, SearchOptions::default())
    }

    /// Fails up front when the graph is not simple or a connected piece
    /// exceeds the cap, so that later rank queries cannot fail.
    pub fn with_options(g: &MultiGraph, t: usize, opts: SearchOptions) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidParams("t must be at least 1".into()));
        }
        check_simple(g, &g.all_edges())?;
        let cap = opts.cap.min(HARD_CAP);
        if let Some(c) = g.components_of(&g.all_edges()).iter().find(|c| c.len() > cap) {
            return Err(Error::OverCap {
                what: "cofactor search vertices",
                size: c.len(),
                cap,
            });
        }
        Ok(CofactorMatroid { graph: g.clone(), t, opts })
    }

    pub fn t(&self) -> usize {
        self.t
    }
}

impl RankOracle for CofactorMatroid {
    fn ground_size(&self) -> usize {
        self.graph.edge_count()
    }
    fn rank(&self, set: &EdgeSet) -> usize {
        rank_value(&self.graph, set, self.t, self.opts)
    }
}

/// `3tn - 6t`, valid for `n >= 6t`.
pub fn kn_rank(n: usize, t: usize) -> Result<usize> {
    if t == 0 || n < 6 * t {
        return Err(Error::Precondition(format!("kn_rank needs n >= 6t, got n={n}, t={t}")));
    }
    Ok(3 * t * n - 6 * t)
}

/// Rank of a graph known in closed form: no edges, a complete graph on at
/// most four vertices (independent), or a complete graph on at least `6t`
/// vertices.
fn known_base_rank(g: &MultiGraph, within: &EdgeSet, t: usize) -> Option<usize> {
    if within.is_empty() {
        return Some(0);
    }
    let m = g.vertices_of(within).len();
    let complete = g.edge_subgraph(within).is_simple() && within.len() == m * (m - 1) / 2;
    if !complete {
        return None;
    }
    if m <= 4 {
        Some(within.len())
    } else {
        kn_rank(m, t).ok()
    }
}

/// Lower bound on `r_t(within)` from deleting the vertices of `order` one
/// at a time: each deletion contributes `min(3t, current degree)`, and the
/// final graph must have a known rank.
pub fn peel_lower_bound(g: &MultiGraph, within: &EdgeSet, t: usize, order: &[usize]) -> Result<usize> {
    let mut seen = VertexSet::new(g.vertex_count());
    let mut left = within.clone();
    let mut bound = 0;
    for &v in order {
        if v >= g.vertex_count() || !seen.insert(v) {
            return Err(Error::InvalidParams("peeling order must list distinct vertices".into()));
        }
        let star = g.star(v).intersection(&left);
        bound += star.len().min(3 * t);
        left = left.difference(&star);
    }
    let base = known_base_rank(g, &left, t)
        .ok_or_else(|| Error::Precondition("rank of the peeled base graph is unknown".into()))?;
    Ok(bound + base)
}

/// Both sides of the bipartition have rank below `3t|V| - 6t`.
pub fn is_essential(g: &MultiGraph, e1: &EdgeSet, e2: &EdgeSet, t: usize) -> Result<bool> {
    let target = 3 * t as i64 * g.vertex_count() as i64 - 6 * t as i64;
    let (r1, _) = rt(g, e1, t)?;
    let (r2, _) = rt(g, e2, t)?;
    Ok((r1.max(r2) as i64) < target)
}

/// A spanning subgraph of rank `3|V| - 6` with a peeling order proving it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeConnectedPart {
    pub edges: EdgeSet,
    /// Vertices in deletion order; the remainder is a `K_4`.
    pub peel: Vec<usize>,
    pub certified_rank: usize,
    pub connectivity: usize,
}

const EXTRACT_ATTEMPTS: usize = 400;

/// Finds `t` edge-disjoint spanning subgraphs, each built from a `K_4` by
/// adding vertices of degree three, so each has rank `3|V| - 6` in `C(G)`
/// by peeling and is 3-connected (checked by max-flow).
///
/// The rank condition `r_t(E) = 3t|V| - 6t` is established first through
/// [`kn_rank`] for complete graphs or through exhaustive search within the
/// cap; for larger graphs the packing found certifies it. Fails when the
/// condition is false or no packing is found.
pub fn extract_three_connected(g: &MultiGraph, t: usize, seed: u64) -> Result<Vec<ThreeConnectedPart>> {
    if t == 0 {
        return Err(Error::InvalidParams("t must be at least 1".into()));
    }
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    let n = g.vertex_count();
    if n < 5 {
        return Err(Error::Precondition("need at least five vertices".into()));
    }
    let target = 3 * t * n - 6 * t;
    let all = g.all_edges();
    let complete = g.edge_count() == n * (n - 1) / 2;
    let known = if complete && n >= 6 * t {
        Some(kn_rank(n, t)?)
    } else {
        match rt(g, &all, t) {
            Ok((r, _)) => Some(r),
            Err(Error::OverCap { .. }) => None,
            Err(e) => return Err(e),
        }
    };
    if let Some(r) = known {
        if r != target {
            return Err(Error::Precondition(format!(
                "r_t(E) = {r}, below 3t|V| - 6t = {target}"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..EXTRACT_ATTEMPTS {
        if let Some(parts) = try_packing(g, t, &mut rng) {
            let mut out = Vec::with_capacity(t);
            for (edges, peel) in parts {
                let certified_rank = peel_lower_bound(g, &edges, 1, &peel)?;
                let h = g.edge_subgraph(&edges);
                let connectivity = vertex_connectivity(&h)?;
                if certified_rank != 3 * n - 6 || connectivity < 3 {
                    return Err(Error::Precondition("packing failed its own audit".into()));
                }
                out.push(ThreeConnectedPart { edges, peel, certified_rank, connectivity });
            }
            return Ok(out);
        }
    }
    Err(Error::Precondition(format!(
        "no packing of {t} three-connected spanning subgraphs found"
    )))
}

fn try_packing(g: &MultiGraph, t: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(EdgeSet, Vec<usize>)>> {
    let n = g.vertex_count();
    let mult = g.multiplicities();
    let edge_of = |a: usize, b: usize| -> usize {
        let (a, b) = (a.min(b), a.max(b));
        (0..g.edge_count()).find(|&e| g.ends(e) == (a, b)).expect("edge exists")
    };
    let mut free: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| mult[a][b] > 0).collect()).collect();
    let mut parts = Vec::with_capacity(t);
    for _ in 0..t {
        let resid = |free: &Vec<Vec<bool>>, v: usize| free[v].iter().filter(|&&x| x).count();
        // Base K_4 among free edges, found by random restarts.
        let mut verts: Vec<usize> = (0..n).collect();
        verts.shuffle(rng);
        let mut base = None;
        'find: for &a in &verts {
            for &b in &verts {
                if b <= a || !free[a][b] {
                    continue;
                }
                for &c in &verts {
                    if c <= b || !free[a][c] || !free[b][c] {
                        continue;
                    }
                    for &d in &verts {
                        if d <= c || !free[a][d] || !free[b][d] || !free[c][d] {
                            continue;
                        }
                        base = Some([a, b, c, d]);
                        break 'find;
                    }
                }
            }
        }
        let base = base?;
        let mut inside = vec![false; n];
        let mut order: Vec<usize> = base.to_vec();
        let mut edges = EdgeSet::new(g.edge_count());
        for (i, &a) in base.iter().enumerate() {
            inside[a] = true;
            for &b in &base[i + 1..] {
                free[a][b] = false;
                free[b][a] = false;
                edges.insert(edge_of(a, b));
            }
        }
        while order.len() < n {
            let options: Vec<usize> = (0..n)
                .filter(|&x| !inside[x] && (0..n).filter(|&y| inside[y] && free[x][y]).count() >= 3)
                .collect();
            if options.is_empty() {
                return None;
            }
            // Fewest usable attachments first, random among ties.
            let slack = |x: usize| (0..n).filter(|&y| inside[y] && free[x][y]).count();
            let low = options.iter().map(|&x| slack(x)).min().unwrap();
            let ties: Vec<usize> = options.into_iter().filter(|&x| slack(x) == low).collect();
            let x = ties[rng.gen_range(0..ties.len())];
            let mut targets: Vec<usize> = (0..n).filter(|&y| inside[y] && free[x][y]).collect();
            targets.shuffle(rng);
            targets.sort_by_key(|&y| core::cmp::Reverse(resid(&free, y)));
            for &y in &targets[..3] {
                free[x][y] = false;
                free[y][x] = false;
                edges.insert(edge_of(x, y));
            }
            inside[x] = true;
            order.push(x);
        }
        let peel: Vec<usize> = order[4..].iter().rev().copied().collect();
        parts.push((edges, peel));
    }
    Some(parts)
}
