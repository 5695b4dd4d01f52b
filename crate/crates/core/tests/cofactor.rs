mod common;

use common::*;
use graphmat_core::cofactor::{
    extract_three_connected, hinges, is_essential, is_shelling, kn_rank, peel_lower_bound, r1, rt, rt_with,
    shelling_order, CofactorMatroid, HingedCover, SearchOptions,
};
use graphmat_core::connectivity::vertex_connectivity;
use graphmat_core::construct::{cofactor_packing, complete_pairs, Family};
use graphmat_core::enumerate::simple_graphs;
use graphmat_core::matroid::RankOracle;
use graphmat_core::{EdgeSet, MultiGraph, VertexSet};
use proptest::prelude::*;
use rand::Rng;

const EXHAUSTIVE: SearchOptions = SearchOptions { cap: 8, prune: false };

fn vs(n: usize, v: &[usize]) -> VertexSet {
    VertexSet::from_indices(n, v.iter().copied())
}

/// Tries every permutation of the family.
fn shellable_by_permutation(sets: &[VertexSet]) -> bool {
    fn go(sets: &[VertexSet], order: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if order.len() == sets.len() {
            return is_shelling(sets, order);
        }
        for i in 0..sets.len() {
            if !used[i] {
                used[i] = true;
                order.push(i);
                if go(sets, order, used) {
                    return true;
                }
                order.pop();
                used[i] = false;
            }
        }
        false
    }
    go(sets, &mut Vec::new(), &mut vec![false; sets.len()])
}

#[test]
fn pruned_search_matches_plain_enumeration() {
    for n in 2..=7 {
        for g in simple_graphs(n) {
            let all = g.all_edges();
            for t in 1..=2 {
                let (fast, cert) = rt(&g, &all, t).unwrap();
                let (slow, slow_cert) = rt_with(&g, &all, t, EXHAUSTIVE).unwrap();
                assert_eq!(fast, slow, "t={t} {:?}", g.pairs());
                cert.verify(&g, &all).unwrap();
                slow_cert.verify(&g, &all).unwrap();
                assert_eq!(cert.value, fast as i64);
                assert!(fast <= all.len());
                if t == 2 {
                    let (one, _) = r1(&g, &all).unwrap();
                    assert!(fast <= 2 * one);
                }
            }
        }
    }
}

#[test]
fn free_edges_of_an_optimum_are_bridges() {
    for n in 5..=7 {
        for g in simple_graphs(n) {
            let all = g.all_edges();
            let (r, cert) = r1(&g, &all).unwrap();
            for e in &cert.f {
                let (without, _) = r1(&g, &all.without(e)).unwrap();
                assert_eq!(without + 1, r, "{:?} edge {e}", g.pairs());
            }
        }
    }
}

#[test]
fn vertex_addition_bound_at_every_vertex() {
    for n in 2..=7 {
        for g in simple_graphs(n) {
            let all = g.all_edges();
            for t in 1..=2 {
                let (r, _) = rt(&g, &all, t).unwrap();
                for v in 0..n {
                    let star = g.star(v);
                    let (rest, _) = rt(&g, &all.difference(&star), t).unwrap();
                    assert!(r >= rest + star.len().min(3 * t), "t={t} v={v} {:?}", g.pairs());
                    if star.len() <= 3 * t {
                        assert_eq!(r, rest + star.len(), "t={t} v={v} {:?}", g.pairs());
                    }
                }
            }
        }
    }
}

#[test]
fn complete_graph_rank_by_search() {
    for n in 6..=8 {
        let g = Family::Complete(n).build().unwrap();
        let all = g.all_edges();
        let (r, cert) = r1(&g, &all).unwrap();
        assert_eq!(r, kn_rank(n, 1).unwrap());
        assert_eq!(r, 3 * n - 6);
        cert.verify(&g, &all).unwrap();
    }
    assert_eq!(kn_rank(12, 2).unwrap(), 60);
    assert!(kn_rank(11, 2).is_err());
}

#[test]
fn packings_certify_by_peeling() {
    for (n, t) in [(12, 2), (18, 3)] {
        let pack = cofactor_packing(n, t).unwrap();
        let g = &pack.graph;
        for (part, block) in pack.parts.iter().zip(&pack.blocks) {
            let order: Vec<usize> = (0..n).filter(|v| !block.contains(v)).chain(block[..2].iter().copied()).collect();
            assert_eq!(peel_lower_bound(g, part, 1, &order).unwrap(), 3 * n - 6);
            assert!(vertex_connectivity(&g.edge_subgraph(part)).unwrap() >= 3);
        }
        for (i, a) in pack.parts.iter().enumerate() {
            for b in &pack.parts[i + 1..] {
                assert!(a.is_disjoint(b));
            }
        }
    }
}

#[test]
fn rank_grows_along_nested_edge_sets() {
    let g = Family::Complete(7).build().unwrap();
    let o = CofactorMatroid::new(&g, 1).unwrap();
    let mut rng = rng(7);
    for _ in 0..5 {
        let mut order: Vec<usize> = (0..g.edge_count()).collect();
        for i in (1..order.len()).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let mut set = EdgeSet::new(g.edge_count());
        let mut last = 0;
        for e in order {
            set.insert(e);
            let r = o.rank(&set);
            assert!(r == last || r == last + 1);
            last = r;
        }
        assert_eq!(last, 15);
    }
}

#[test]
fn shelling_agrees_with_permutation_search() {
    let mut rng = rng(11);
    let mut both = [0usize; 2];
    for _ in 0..3000 {
        let n = rng.gen_range(6..=10);
        let count = rng.gen_range(1..=5);
        let sets: Vec<VertexSet> = (0..count)
            .map(|_| {
                let size = rng.gen_range(5..=n.min(7));
                let mut v: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    v.swap(i, rng.gen_range(0..=i));
                }
                vs(n, &v[..size])
            })
            .collect();
        let greedy = shelling_order(&sets);
        let brute = shellable_by_permutation(&sets);
        assert_eq!(greedy.is_some(), brute, "{sets:?}");
        if let Some(order) = greedy {
            assert!(is_shelling(&sets, &order));
        }
        both[brute as usize] += 1;
    }
    assert!(both[0] > 0 && both[1] > 0, "{both:?}");
}

#[test]
fn thin_family_that_cannot_be_shelled() {
    // First 2-thin family of four 5-sets on ten vertices, in mask order,
    // that no permutation shells.
    let five: Vec<u32> = (0u32..1 << 10).filter(|x| x.count_ones() == 5).collect();
    let thin = |a: u32, b: u32| (a & b).count_ones() <= 2;
    let to_sets = |f: &[u32]| -> Vec<VertexSet> { f.iter().map(|&x| VertexSet::from_indices(10, (0..10).filter(|v| x >> v & 1 == 1))).collect() };
    let x1 = 0b11111u32;
    let mut found = None;
    'outer: for (a, &x2) in five.iter().enumerate() {
        if x2 <= x1 || !thin(x1, x2) {
            continue;
        }
        for (b, &x3) in five.iter().enumerate().skip(a + 1) {
            if !thin(x1, x3) || !thin(x2, x3) {
                continue;
            }
            for &x4 in five.iter().skip(b + 1) {
                if [x1, x2, x3].iter().all(|&y| thin(y, x4)) && !shellable_by_permutation(&to_sets(&[x1, x2, x3, x4])) {
                    found = Some([x1, x2, x3, x4]);
                    break 'outer;
                }
            }
        }
    }
    let frozen = [
        vs(10, &[0, 1, 2, 3, 4]),
        vs(10, &[0, 1, 5, 6, 7]),
        vs(10, &[2, 3, 5, 8, 9]),
        vs(10, &[4, 6, 7, 8, 9]),
    ];
    assert_eq!(to_sets(&found.unwrap()), frozen);
    assert!(hinges(&frozen).is_ok());
    assert_eq!(shelling_order(&frozen), None);
    assert!(HingedCover::new(frozen.to_vec()).is_err());
}

#[test]
fn essential_partition_predicate() {
    let g = Family::Complete(6).build().unwrap();
    let all = g.all_edges();
    let half = EdgeSet::from_indices(all.len(), 0..7);
    assert!(is_essential(&g, &half, &all.difference(&half), 1).unwrap());
    assert!(!is_essential(&g, &all, &EdgeSet::new(all.len()), 1).unwrap());
}

#[test]
fn extraction_on_complete_graphs() {
    for (n, t) in [(6, 1), (8, 1), (12, 2)] {
        let g = Family::Complete(n).build().unwrap();
        let parts = extract_three_connected(&g, t, 1).unwrap();
        assert_eq!(parts.len(), t);
        for p in &parts {
            assert_eq!(p.certified_rank, 3 * n - 6);
            assert!(p.connectivity >= 3);
            assert_eq!(peel_lower_bound(&g, &p.edges, 1, &p.peel).unwrap(), 3 * n - 6);
            assert_eq!(g.vertices_of(&p.edges).len(), n);
        }
        for (i, a) in parts.iter().enumerate() {
            for b in &parts[i + 1..] {
                assert!(a.edges.is_disjoint(&b.edges));
            }
        }
    }
    // Rank too small for one part.
    assert!(extract_three_connected(&Family::Wheel(7).build().unwrap(), 1, 1).is_err());
}

#[test]
fn rejects_bad_input() {
    let multi = MultiGraph::from_pairs(2, &[(0, 1), (0, 1)]).unwrap();
    assert!(r1(&multi, &multi.all_edges()).is_err());
    let k9 = MultiGraph::from_pairs(9, &complete_pairs(9)).unwrap();
    assert!(CofactorMatroid::new(&k9, 1).is_err());
    assert!(rt(&k9, &k9.all_edges(), 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rank_axioms(g in simple_graph(2..=7), a in proptest::collection::vec(any::<bool>(), 21), b in proptest::collection::vec(any::<bool>(), 21)) {
        let o = CofactorMatroid::new(&g, 1).unwrap();
        let (a, b) = (subset(&g, &a), subset(&g, &b));
        prop_assert_eq!(o.rank(&EdgeSet::new(g.edge_count())), 0);
        prop_assert!(o.rank(&a) <= a.len());
        prop_assert!(o.rank(&a.intersection(&b)) <= o.rank(&a));
        prop_assert!(o.rank(&a.union(&b)) + o.rank(&a.intersection(&b)) <= o.rank(&a) + o.rank(&b));
    }
}
