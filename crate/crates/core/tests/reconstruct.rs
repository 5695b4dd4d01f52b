mod common;

use std::collections::BTreeSet;

use common::*;
use graphmat_core::connectivity::is_k_connected;
use graphmat_core::construct::Family;
use graphmat_core::count::CountMatroid;
use graphmat_core::enumerate::simple_graphs;
use graphmat_core::error::Error;
use graphmat_core::iso::isomorphic;
use graphmat_core::matroid::{is_closed, is_connected_within, RankOracle};
use graphmat_core::reconstruct::{
    agrees_on_samples, find_star_complements, labeled_from_graph, reconstruct, small_cocircuits, FamilyTag,
    StarSearch,
};
use graphmat_core::cofactor::CofactorMatroid;
use graphmat_core::{EdgeSet, MultiGraph};

/// Element ids around each non-isolated vertex.
fn star_ids(g: &MultiGraph) -> BTreeSet<BTreeSet<String>> {
    (0..g.vertex_count())
        .map(|v| g.edge_ids_of(&g.star(v)).into_iter().collect::<BTreeSet<_>>())
        .filter(|s| !s.is_empty())
        .collect()
}

fn roundtrip(g: &MultiGraph, family: FamilyTag) -> Result<MultiGraph, Error> {
    reconstruct(&labeled_from_graph(g, family)?, StarSearch::default())
}

fn assert_same(g: &MultiGraph, out: &MultiGraph) {
    assert!(isomorphic(g, out).is_some(), "{:?} vs {:?}", g.pairs(), out.pairs());
    let mut a = g.degrees();
    let mut b = out.degrees();
    a.sort_unstable();
    b.sort_unstable();
    assert_eq!(a, b);
    // Each element joins the same pair of vertices.
    assert_eq!(star_ids(g), star_ids(out));
}

fn three_connected(lo: usize, hi: usize) -> Vec<MultiGraph> {
    (lo..=hi)
        .flat_map(simple_graphs)
        .filter(|g| g.min_degree() >= 3 && is_k_connected(g, 3))
        .collect()
}

#[test]
fn graphic_roundtrip_on_three_connected_graphs() {
    let graphs = three_connected(4, 7);
    assert!(graphs.len() > 150);
    for g in &graphs {
        let out = roundtrip(g, FamilyTag::Count(cp(1, 1))).unwrap();
        assert_same(g, &out);
    }
}

#[test]
fn bicircular_roundtrip_on_three_connected_graphs() {
    let mut graphs = three_connected(5, 7);
    graphs.extend((5..=7).map(|n| Family::Wheel(n).build().unwrap()));
    for g in &graphs {
        let out = roundtrip(g, FamilyTag::Count(cp(1, 0))).unwrap();
        assert_same(g, &out);
    }
}

#[test]
fn rigidity_roundtrip_on_k8() {
    let g = Family::Complete(8).build().unwrap();
    assert_same(&g, &roundtrip(&g, FamilyTag::Count(cp(2, 3))).unwrap());
}

#[test]
fn cofactor_roundtrip_on_k6() {
    let g = Family::Complete(6).build().unwrap();
    assert_same(&g, &roundtrip(&g, FamilyTag::Cofactor { t: 1 }).unwrap());
}

/// All `D` with `|D| <= d_max` whose complement is a connected closed set
/// of rank `r(E) - drop`, by plain enumeration.
fn scan(o: &dyn RankOracle, drop: usize, d_max: usize) -> BTreeSet<EdgeSet> {
    let m = o.ground_size();
    let full = o.full_rank();
    let mut out = BTreeSet::new();
    let mut pick = Vec::new();
    fn rec(
        o: &dyn RankOracle,
        m: usize,
        start: usize,
        left: usize,
        pick: &mut Vec<usize>,
        target: usize,
        out: &mut BTreeSet<EdgeSet>,
    ) {
        let d = EdgeSet::from_indices(m, pick.iter().copied());
        let f = d.complement();
        if !pick.is_empty() && o.rank(&f) == target && is_closed(o, &f) && is_connected_within(o, &f) {
            out.insert(d);
        }
        if left == 0 {
            return;
        }
        for e in start..m {
            pick.push(e);
            rec(o, m, e + 1, left - 1, pick, target, out);
            pick.pop();
        }
    }
    rec(o, m, 0, d_max, &mut pick, full - drop, &mut out);
    out
}

fn stars(g: &MultiGraph) -> BTreeSet<EdgeSet> {
    (0..g.vertex_count()).map(|v| g.star(v)).collect()
}

#[test]
fn rigidity_star_complements_of_k8_by_scan() {
    let g = Family::Complete(8).build().unwrap();
    let o = CountMatroid::new(&g, cp(2, 3));
    let brute = scan(&o, 2, 7);
    assert_eq!(brute.len(), 8);
    assert_eq!(brute, stars(&g));
    let found: BTreeSet<EdgeSet> = find_star_complements(&o, 2, StarSearch::default())
        .unwrap()
        .into_iter()
        .filter(|f| f.len() >= g.edge_count() - 7)
        .map(|f| f.complement())
        .collect();
    assert_eq!(found, brute);
}

#[test]
fn cofactor_star_complements_of_k6_by_scan() {
    let g = Family::Complete(6).build().unwrap();
    let o = CofactorMatroid::new(&g, 1).unwrap();
    let brute = scan(&o, 3, 9);
    assert_eq!(brute, stars(&g));
}

#[test]
fn cocircuits_of_small_graphs_by_scan() {
    for n in 3..=5 {
        for g in simple_graphs(n) {
            let o = CountMatroid::new(&g, cp(1, 1));
            let m = g.edge_count();
            let full = o.full_rank();
            let mut brute = BTreeSet::new();
            for mask in 1u64..1 << m {
                let d = EdgeSet::from_mask(m, mask);
                let f = d.complement();
                if o.rank(&f) + 1 == full && is_closed(&o, &f) {
                    brute.insert(d);
                }
            }
            let fast: BTreeSet<EdgeSet> = small_cocircuits(&o, StarSearch { d_max: m, ..StarSearch::default() })
                .unwrap()
                .into_iter()
                .collect();
            assert_eq!(fast, brute, "{:?}", g.pairs());
        }
    }
}

#[test]
fn ambiguous_or_split_inputs_are_refused() {
    let bic = FamilyTag::Count(cp(1, 0));
    // Free matroids on six elements: no graph is singled out.
    for g in [Family::Cycle(6).build().unwrap(), Family::Path(7).build().unwrap()] {
        assert!(matches!(roundtrip(&g, bic), Err(Error::ReconstructionFailed(_))));
    }
    let c4 = Family::Cycle(4).build().unwrap();
    assert!(roundtrip(&c4.disjoint_union(&c4), FamilyTag::Count(cp(1, 1))).is_err());
    let k6 = Family::Complete(6).build().unwrap();
    assert!(roundtrip(&k6.disjoint_union(&k6), FamilyTag::Cofactor { t: 1 }).is_err());
    let k4 = Family::Complete(4).build().unwrap();
    assert!(roundtrip(&k4.disjoint_union(&k4), FamilyTag::Count(cp(2, 3))).is_err());
}

#[test]
fn sampling_tells_graphs_apart() {
    let k5 = Family::Complete(5).build().unwrap();
    let w5 = Family::Wheel(5).build().unwrap();
    let fam = FamilyTag::Count(cp(1, 1));
    let o = CountMatroid::new(&k5, cp(1, 1));
    assert!(agrees_on_samples(&o, &k5, fam, 3).unwrap());
    // Two edges trade places; no vertex map does that.
    let mut pairs = k5.pairs();
    pairs.swap(0, 9);
    let shuffled = MultiGraph::from_pairs(5, &pairs).unwrap();
    assert!(!agrees_on_samples(&o, &shuffled, fam, 3).unwrap());
    let relabeled = k5.relabeled(&["c", "a", "e", "b", "d"].map(String::from)).unwrap();
    assert!(agrees_on_samples(&o, &relabeled, fam, 3).unwrap());
    let c = MultiGraph::from_pairs(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (0, 3), (1, 3), (1, 4), (0, 1)]).unwrap();
    assert!(!agrees_on_samples(&o, &c, fam, 3).unwrap());
    assert!(!agrees_on_samples(&o, &w5, fam, 3).unwrap());
}
