//! Recovering a graph from an edge-labelled matroid: find the complements
//! of vertex stars as connected flats of a fixed rank drop, then glue the
//! stars back into a graph.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::EdgeSet;
use crate::cofactor::CofactorMatroid;
use crate::count::{CountMatroid, CountParams};
use crate::error::{Error, Result};
use crate::graph::{padded, MultiGraph};
use crate::matroid::{basis_within, components, fundamental_circuit, is_closed, is_connected_within, RankOracle};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyTag {
    Count(CountParams),
    Cofactor { t: usize },
}

impl FamilyTag {
    /// Rank lost by deleting one vertex star.
    pub fn drop(self) -> usize {
        match self {
            FamilyTag::Count(p) => p.k,
            FamilyTag::Cofactor { t } => 3 * t,
        }
    }
}

/// Element ids, a family tag and a rank oracle indexed like `elements`.
#[derive(Debug, Clone)]
pub struct LabeledMatroid<O> {
    pub elements: Vec<String>,
    pub family: FamilyTag,
    pub oracle: O,
}

impl<O: RankOracle> LabeledMatroid<O> {
    pub fn new(elements: Vec<String>, family: FamilyTag, oracle: O) -> Result<Self> {
        if elements.len() != oracle.ground_size() {
            return Err(Error::InvalidParams(format!(
                "{} element ids for a ground set of size {}",
                elements.len(),
                oracle.ground_size()
            )));
        }
        let unique: BTreeSet<&String> = elements.iter().collect();
        if unique.len() != elements.len() {
            return Err(Error::InvalidParams("duplicate element ids".into()));
        }
        Ok(LabeledMatroid { elements, family, oracle })
    }
}

/// Builds the oracle of the tagged family on `g`, labelled by its edge ids.
pub fn labeled_from_graph(g: &MultiGraph, family: FamilyTag) -> Result<LabeledMatroid<FamilyOracle>> {
    let oracle = match family {
        FamilyTag::Count(p) => FamilyOracle::Count(CountMatroid::new(g, p)),
        FamilyTag::Cofactor { t } => FamilyOracle::Cofactor(CofactorMatroid::new(g, t)?),
    };
    LabeledMatroid::new(g.edges().iter().map(|e| e.id.clone()).collect(), family, oracle)
}

/// Either oracle behind a [`FamilyTag`].
#[derive(Debug, Clone)]
pub enum FamilyOracle {
    Count(CountMatroid),
    Cofactor(CofactorMatroid),
}

impl RankOracle for FamilyOracle {
    fn ground_size(&self) -> usize {
        match self {
            FamilyOracle::Count(o) => o.ground_size(),
            FamilyOracle::Cofactor(o) => o.ground_size(),
        }
    }
    fn rank(&self, set: &EdgeSet) -> usize {
        match self {
            FamilyOracle::Count(o) => o.rank(set),
            FamilyOracle::Cofactor(o) => o.rank(set),
        }
    }
}

/// Element sets, each the star of one vertex to be.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarFamily {
    pub stars: Vec<EdgeSet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarSearch {
    /// Largest star considered.
    pub d_max: usize,
    /// Search nodes allowed before refusing.
    pub budget: usize,
}

impl Default for StarSearch {
    fn default() -> Self {
        StarSearch { d_max: 9, budget: 2_000_000 }
    }
}

struct Hunt<'a, O: ?Sized> {
    o: &'a O,
    full: usize,
    d_max: usize,
    budget: usize,
    nodes: usize,
    forbidden: EdgeSet,
    seen: BTreeSet<EdgeSet>,
    found: BTreeSet<EdgeSet>,
}

impl<O: RankOracle + ?Sized> Hunt<'_, O> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::OverCap {
                what: "star search nodes",
                size: self.nodes,
                cap: self.budget,
            });
        }
        Ok(())
    }

    /// Collects every cocircuit containing `d` and no forbidden element.
    /// `basis` is a basis of `E - d` when that set spans, and `last` is the
    /// element added most recently.
    fn grow(&mut self, d: EdgeSet, last: usize, basis: Option<EdgeSet>) -> Result<()> {
        self.tick()?;
        let Some(b) = basis else {
            let rest = d.complement();
            // A hyperplane inside E - D has its rank, so it is E - D or nothing.
            if self.o.rank(&rest) + 1 == self.full && is_closed(self.o, &rest) {
                self.found.insert(d);
            }
            return Ok(());
        };
        // E - D spans, so `last` is spanned by it, and every cocircuit
        // through D deletes part of its circuit.
        let hit = fundamental_circuit(self.o, &b, last)?.without(last).difference(&self.forbidden);
        for y in &hit {
            let next = d.with(y);
            if next.len() > self.d_max || !self.seen.insert(next.clone()) {
                continue;
            }
            let cut = b.without(y);
            let swap = next
                .complement()
                .difference(&cut)
                .iter()
                .find(|&f| self.o.rank(&cut.with(f)) == b.len());
            self.grow(next, y, swap.map(|f| cut.with(f)))?;
        }
        Ok(())
    }
}

/// All cocircuits with at most `d_max` elements.
pub fn small_cocircuits<O: RankOracle + ?Sized>(o: &O, opts: StarSearch) -> Result<Vec<EdgeSet>> {
    let m = o.ground_size();
    let mut hunt = Hunt {
        o,
        full: o.full_rank(),
        d_max: opts.d_max,
        budget: opts.budget,
        nodes: 0,
        forbidden: EdgeSet::new(m),
        seen: BTreeSet::new(),
        found: BTreeSet::new(),
    };
    // Cocircuits through an earlier seed were all found from that seed.
    for e in (0..m).filter(|_| opts.d_max > 0) {
        let d = EdgeSet::from_indices(m, [e]);
        let b = basis_within(o, &d.complement());
        let spans = b.len() == hunt.full;
        hunt.grow(d, e, spans.then_some(b))?;
        hunt.forbidden.insert(e);
        hunt.seen.clear();
    }
    Ok(hunt.found.into_iter().collect())
}

/// Every set `D` with `|D| <= d_max` whose complement is a closed,
/// connected set of rank `r(E) - drop`, returned as complements `E - D`.
///
/// The complement of a flat is a union of cocircuits, and one of nullity
/// `drop` in the dual is the union of `drop` of them, so candidates are
/// unions of at most `drop` small cocircuits. A connected flat lies inside
/// one component, so `D` contains every other component.
pub fn find_star_complements<O: RankOracle + ?Sized>(o: &O, drop: usize, opts: StarSearch) -> Result<Vec<EdgeSet>> {
    let m = o.ground_size();
    let parts = components(o);
    if parts.len() <= 1 {
        return connected_flats(o, drop, opts);
    }
    let mut out = Vec::new();
    for part in &parts {
        let others = part.complement();
        let lost = o.rank(&others);
        if others.len() > opts.d_max || lost > drop {
            continue;
        }
        let map = part.to_vec();
        let local = Restriction { o, map: &map };
        let budget = StarSearch { d_max: opts.d_max - others.len(), ..opts };
        for f in connected_flats(&local, drop - lost, budget)? {
            out.push(EdgeSet::from_indices(m, f.iter().map(|i| map[i])));
        }
    }
    out.sort();
    Ok(out)
}

/// `o` restricted to the elements listed in `map`, renumbered from zero.
struct Restriction<'a, O: ?Sized> {
    o: &'a O,
    map: &'a [usize],
}

impl<O: RankOracle + ?Sized> RankOracle for Restriction<'_, O> {
    fn ground_size(&self) -> usize {
        self.map.len()
    }
    fn rank(&self, set: &EdgeSet) -> usize {
        self.o.rank(&EdgeSet::from_indices(self.o.ground_size(), set.iter().map(|i| self.map[i])))
    }
}

fn connected_flats<O: RankOracle + ?Sized>(o: &O, drop: usize, opts: StarSearch) -> Result<Vec<EdgeSet>> {
    let m = o.ground_size();
    let full = o.full_rank();
    if drop == 0 {
        let all = o.ground();
        return Ok(if is_connected_within(o, &all) { vec![all] } else { Vec::new() });
    }
    let cocircuits = small_cocircuits(o, opts)?;
    let mut found = BTreeSet::new();
    let mut seen = BTreeSet::new();
    let mut level: Vec<EdgeSet> = vec![EdgeSet::new(m)];
    // Breadth first, so each union is first met with the fewest parts.
    for _ in 0..drop {
        let mut next = Vec::new();
        for d in &level {
            for c in &cocircuits {
                let u = d.union(c);
                if u.len() > opts.d_max || u == *d || !seen.insert(u.clone()) {
                    continue;
                }
                let rest = u.complement();
                let lost = full - o.rank(&rest);
                if lost == drop {
                    if is_connected_within(o, &rest) {
                        found.insert(u);
                    }
                } else if lost < drop {
                    next.push(u);
                }
            }
        }
        level = next;
    }
    Ok(found.into_iter().map(|d| d.complement()).collect())
}

/// One vertex per star and one edge per element, joining the two stars
/// that contain it.
pub fn assemble(elements: &[String], stars: &StarFamily) -> Result<MultiGraph> {
    let m = elements.len();
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, s) in stars.stars.iter().enumerate() {
        if s.universe() != m {
            return Err(Error::NotStarFamily("star over a different ground set".into()));
        }
        for e in s {
            holders[e].push(i);
        }
    }
    let names: Vec<String> = (0..stars.stars.len()).map(|i| padded("u", i, stars.stars.len())).collect();
    let mut edges = Vec::with_capacity(m);
    for (e, h) in holders.iter().enumerate() {
        if h.len() != 2 {
            return Err(Error::NotStarFamily(format!(
                "element {:?} lies in {} stars",
                elements[e],
                h.len()
            )));
        }
        edges.push((elements[e].clone(), names[h[0]].clone(), names[h[1]].clone()));
    }
    MultiGraph::new(names, edges)
}

const SAMPLED_SUBSETS: usize = 200;

/// Compares the oracle with the tagged matroid of `g` (same element order)
/// on the whole ground set and on seeded random subsets.
pub fn agrees_on_samples<O: RankOracle + ?Sized>(o: &O, g: &MultiGraph, family: FamilyTag, seed: u64) -> Result<bool> {
    let theirs = match family {
        FamilyTag::Count(p) => FamilyOracle::Count(CountMatroid::new(g, p)),
        FamilyTag::Cofactor { t } => FamilyOracle::Cofactor(CofactorMatroid::new(g, t)?),
    };
    let m = o.ground_size();
    if theirs.ground_size() != m || o.full_rank() != theirs.full_rank() {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLED_SUBSETS {
        let keep = rng.gen_range(0.0..1.0);
        let s = EdgeSet::from_indices(m, (0..m).filter(|_| rng.gen_bool(keep)));
        if o.rank(&s) != theirs.rank(&s) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn stars_from(complements: &[EdgeSet]) -> StarFamily {
    StarFamily {
        stars: complements.iter().map(EdgeSet::complement).collect(),
    }
}

fn finish<O: RankOracle>(m: &LabeledMatroid<O>, stars: &StarFamily) -> Result<MultiGraph> {
    let g = assemble(&m.elements, stars).map_err(|e| Error::ReconstructionFailed(format!("{e}")))?;
    match agrees_on_samples(&m.oracle, &g, m.family, 0x5eed) {
        Ok(true) => Ok(g),
        Ok(false) => Err(Error::ReconstructionFailed(
            "assembled graph has a different rank function".into(),
        )),
        Err(e) => Err(Error::ReconstructionFailed(format!("{e}"))),
    }
}

/// Each element in exactly two stars.
fn two_per_element(m: usize, stars: &StarFamily) -> bool {
    let mut times = vec![0usize; m];
    for s in &stars.stars {
        for e in s {
            times[e] += 1;
        }
    }
    times.iter().all(|&c| c == 2)
}

/// Searches with growing star size limits and returns the first assembled
/// graph that passes the rank comparison. Under the uniqueness hypotheses
/// no further star complements exist once every element lies in two stars;
/// outside them the output is still checked against the oracle.
fn deepen<O: RankOracle>(
    m: &LabeledMatroid<O>,
    drop: usize,
    opts: StarSearch,
    complete: impl Fn(StarFamily) -> StarFamily,
) -> Result<MultiGraph> {
    let size = m.elements.len();
    let mut last = Error::ReconstructionFailed("no star complements found".into());
    for d in 1..=opts.d_max.min(size) {
        let comps = find_star_complements(&m.oracle, drop, StarSearch { d_max: d, ..opts })?;
        if comps.is_empty() {
            continue;
        }
        let stars = complete(stars_from(&comps));
        if !two_per_element(size, &stars) {
            last = Error::ReconstructionFailed(format!(
                "{} star complements found with at most {d} deleted elements do not form a star family",
                comps.len()
            ));
            continue;
        }
        match finish(m, &stars) {
            Ok(g) => return Ok(g),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Graph whose count matroid is `m` under the identity on element ids.
pub fn reconstruct_count<O: RankOracle>(m: &LabeledMatroid<O>, opts: StarSearch) -> Result<MultiGraph> {
    let FamilyTag::Count(p) = m.family else {
        return Err(Error::InvalidParams("matroid is not tagged as a count matroid".into()));
    };
    deepen(m, p.k, opts, |s| s)
}

/// As [`reconstruct_count`] for `M_{1,0}`. When the found stars miss one
/// vertex (the hub of a wheel, whose deletion leaves a cycle with a free
/// matroid), the elements covered only once form its star.
pub fn reconstruct_bicircular<O: RankOracle>(m: &LabeledMatroid<O>, opts: StarSearch) -> Result<MultiGraph> {
    let bicircular = CountParams { k: 1, l: 0 };
    if m.family != FamilyTag::Count(bicircular) {
        return Err(Error::InvalidParams("matroid is not tagged as bicircular".into()));
    }
    let n = m.elements.len();
    deepen(m, 1, opts, |mut stars| {
        let mut times = vec![0usize; n];
        for s in &stars.stars {
            for e in s {
                times[e] += 1;
            }
        }
        let once = EdgeSet::from_indices(n, (0..n).filter(|&e| times[e] == 1));
        if !once.is_empty() && times.iter().all(|&c| c == 1 || c == 2) {
            stars.stars.push(once);
        }
        stars
    })
}

/// Graph whose `t`-fold cofactor matroid is `m`; stars drop the rank by `3t`.
pub fn reconstruct_cofactor<O: RankOracle>(m: &LabeledMatroid<O>, opts: StarSearch) -> Result<MultiGraph> {
    let FamilyTag::Cofactor { t } = m.family else {
        return Err(Error::InvalidParams("matroid is not tagged as cofactor".into()));
    };
    deepen(m, 3 * t, opts, |s| s)
}

/// Dispatches on the family tag.
pub fn reconstruct<O: RankOracle>(m: &LabeledMatroid<O>, opts: StarSearch) -> Result<MultiGraph> {
    match m.family {
        FamilyTag::Count(p) if p.k == 1 && p.l == 0 => reconstruct_bicircular(m, opts),
        FamilyTag::Count(_) => reconstruct_count(m, opts),
        FamilyTag::Cofactor { .. } => reconstruct_cofactor(m, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::Family;
    use crate::iso::isomorphic;

    fn cp(k: usize, l: i64) -> CountParams {
        CountParams::new(k, l).unwrap()
    }

    fn roundtrip(g: &MultiGraph, family: FamilyTag) -> Result<MultiGraph> {
        reconstruct(&labeled_from_graph(g, family)?, StarSearch::default())
    }

    #[test]
    fn k4_triangles() {
        let k4 = Family::Complete(4).build().unwrap();
        let o = CountMatroid::new(&k4, cp(1, 1));
        let comps = find_star_complements(&o, 1, StarSearch::default()).unwrap();
        let want: BTreeSet<EdgeSet> = (0..4).map(|v| k4.star(v).complement()).collect();
        assert_eq!(comps.into_iter().collect::<BTreeSet<_>>(), want);
    }

    #[test]
    fn assemble_examples() {
        let k4 = Family::Complete(4).build().unwrap();
        let ids: Vec<String> = k4.edges().iter().map(|e| e.id.clone()).collect();
        let stars = StarFamily { stars: (0..4).map(|v| k4.star(v)).collect() };
        assert!(isomorphic(&assemble(&ids, &stars).unwrap(), &k4).is_some());
        let both = EdgeSet::full(2);
        let pair = assemble(&["e1".into(), "e2".into()], &StarFamily { stars: vec![both.clone(), both] }).unwrap();
        assert!(isomorphic(&pair, &Family::ParallelPair(2).build().unwrap()).is_some());
        let bad = StarFamily { stars: vec![EdgeSet::full(2)] };
        assert!(matches!(assemble(&["a".into(), "b".into()], &bad), Err(Error::NotStarFamily(_))));
    }

    #[test]
    fn count_roundtrips() {
        let k5 = Family::Complete(5).build().unwrap();
        let out = roundtrip(&k5, FamilyTag::Count(cp(1, 1))).unwrap();
        assert!(isomorphic(&out, &k5).is_some());
        let k8 = Family::Complete(8).build().unwrap();
        let out = roundtrip(&k8, FamilyTag::Count(cp(2, 3))).unwrap();
        assert!(isomorphic(&out, &k8).is_some());
    }

    #[test]
    fn bicircular_roundtrips() {
        for g in [Family::Wheel(6).build().unwrap(), Family::Complete(5).build().unwrap()] {
            let out = roundtrip(&g, FamilyTag::Count(cp(1, 0))).unwrap();
            assert!(isomorphic(&out, &g).is_some());
        }
    }

    #[test]
    fn refusals() {
        let c6 = Family::Cycle(6).build().unwrap();
        let p7 = Family::Path(7).build().unwrap();
        let bic = FamilyTag::Count(cp(1, 0));
        assert!(matches!(roundtrip(&c6, bic), Err(Error::ReconstructionFailed(_))));
        assert!(matches!(roundtrip(&p7, bic), Err(Error::ReconstructionFailed(_))));
        let c3 = Family::Cycle(4).build().unwrap();
        let two = c3.disjoint_union(&c3);
        assert!(matches!(roundtrip(&two, FamilyTag::Count(cp(1, 1))), Err(Error::ReconstructionFailed(_))));
    }

    #[test]
    fn cofactor_k6() {
        let k6 = Family::Complete(6).build().unwrap();
        let out = roundtrip(&k6, FamilyTag::Cofactor { t: 1 }).unwrap();
        assert!(isomorphic(&out, &k6).is_some());
    }
}
