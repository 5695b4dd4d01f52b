mod common;

use common::*;
use graphmat_core::construct::complete_pairs;
use graphmat_core::count::{
    is_redundant, is_sparse, is_tight, m_components, rank, rank_certificate, rank_pairs, CountMatroid,
};
use graphmat_core::enumerate::{for_each_multigraph, simple_graphs};
use graphmat_core::matroid::{basis, fundamental_circuit, union_rank, RankOracle};
use graphmat_core::oracle::{count_rank_exhaustive, count_rank_greedy};
use graphmat_core::{EdgeSet, MultiGraph};
use proptest::prelude::*;

#[test]
fn fast_rank_matches_subset_enumeration_on_four_vertices() {
    let pairs = complete_pairs(4);
    for (k, l) in PARAMS {
        let p = cp(k, l);
        let mult = (2 * k as i64 - l).max(1) as u8;
        let mut edges = Vec::new();
        let mut compared = 0;
        for_each_multigraph(4, mult, |m| {
            edges.clear();
            for (i, &c) in m.iter().enumerate() {
                edges.extend(std::iter::repeat_n(pairs[i], c as usize));
            }
            let fast = rank_pairs(4, &edges, p);
            assert_eq!(fast, count_rank_greedy(4, &edges, p), "({k},{l}) {edges:?}");
            if edges.len() <= 12 {
                assert_eq!(fast, count_rank_exhaustive(4, &edges, p).unwrap(), "({k},{l}) {edges:?}");
                compared += 1;
            }
        });
        assert!(compared > 0);
    }
}

#[test]
fn small_simple_graphs_are_sparse() {
    for (k, l) in PARAMS {
        let p = cp(k, l);
        for n in 2..=(2 * k - 1).min(7) {
            for g in simple_graphs(n) {
                assert!(g.edge_count() as i64 <= p.bound(n), "({k},{l}) {:?}", g.pairs());
                assert!(is_sparse(&g, p), "({k},{l}) {:?}", g.pairs());
            }
        }
    }
}

#[test]
fn nontrivial_components_are_induced_and_redundant() {
    let p = cp(2, 3);
    for n in 2..=6 {
        for g in simple_graphs(n) {
            let mut total = EdgeSet::new(g.edge_count());
            for c in m_components(&g, p) {
                assert!(total.is_disjoint(&c.edges));
                total.union_with(&c.edges);
                if c.trivial {
                    continue;
                }
                let vs = g.vertices_of(&c.edges);
                assert_eq!(g.induced_edges(&vs, &g.all_edges()), c.edges, "{:?}", g.pairs());
                assert!(is_redundant(&g.edge_induced(&c.edges), p), "{:?}", g.pairs());
            }
            assert_eq!(total, g.all_edges());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn rank_axioms(
        p in params(),
        g in multigraph(2..=7, 24),
        a in proptest::collection::vec(any::<bool>(), 24),
        b in proptest::collection::vec(any::<bool>(), 24),
        c in proptest::collection::vec(any::<bool>(), 24),
    ) {
        let (a, b, c) = (subset(&g, &a), subset(&g, &b), subset(&g, &c));
        let r = |s: &EdgeSet| rank(&g, p, s);
        prop_assert_eq!(r(&g.empty_edge_set()), 0);
        for s in [&a, &b, &c] {
            prop_assert!(r(s) <= s.len());
        }
        prop_assert!(r(&a.intersection(&b)) <= r(&a));
        prop_assert!(r(&a) <= r(&a.union(&c)));
        prop_assert!(r(&a.union(&b)) + r(&a.intersection(&b)) <= r(&a) + r(&b));
        prop_assert!(r(&b.union(&c)) + r(&b.intersection(&c)) <= r(&b) + r(&c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn certificates_reach_the_rank(p in params(), g in multigraph(2..=8, 28), bits in proptest::collection::vec(any::<bool>(), 28)) {
        let s = subset(&g, &bits);
        prop_assume!(!s.is_empty());
        let cert = rank_certificate(&g, p, &s).unwrap();
        prop_assert_eq!(cert.value, rank(&g, p, &s) as i64);
        prop_assert!(cert.verify(&g, p, &s).is_ok(), "{:?}", cert);
    }

    #[test]
    fn circuits_span_enough_vertices(p in params(), g in multigraph(2..=7, 24)) {
        let o = CountMatroid::new(&g, p);
        let b = basis(&o);
        for e in g.all_edges().difference(&b).iter() {
            let c = fundamental_circuit(&o, &b, e).unwrap();
            let nv = g.vertices_of(&c).len();
            // A circuit is one edge over its count bound.
            prop_assert_eq!(c.len() as i64, p.bound(nv) + 1);
            // Either a parallel class or more than k / (2k - l) vertices.
            prop_assert!(nv == 2 || nv as i64 * (2 * p.k as i64 - p.l) > p.k as i64);
        }
    }

    #[test]
    fn adding_a_vertex_of_degree_k_keeps_tightness(
        (k, l) in proptest::sample::select(PARAMS.to_vec()),
        steps in proptest::collection::vec(proptest::collection::vec(0usize..64, 1..=6), 1..6),
    ) {
        let p = cp(k, l);
        let base = (2 * k as i64 - l) as usize;
        // Two vertices joined by 2k - l edges, or K_{2k-1} when two
        // vertices cannot absorb k new edges.
        let (mut pairs, mut n) = if 2 * base >= k {
            (vec![(0usize, 1usize); base], 2)
        } else {
            (complete_pairs(2 * k - 1), 2 * k - 1)
        };
        prop_assert!(is_tight(&MultiGraph::from_pairs(n, &pairs).unwrap(), p));
        for picks in steps {
            // k new edges, at most 2k - l to any one old vertex.
            let mut used = vec![0usize; n];
            let mut added = 0;
            let mut cursor = 0;
            while added < k {
                let target = (picks[cursor % picks.len()] + cursor / picks.len()) % n;
                cursor += 1;
                if used[target] < base {
                    used[target] += 1;
                    pairs.push((target, n));
                    added += 1;
                }
            }
            n += 1;
            let g = MultiGraph::from_pairs(n, &pairs).unwrap();
            prop_assert!(is_sparse(&g, p));
            prop_assert!(is_tight(&g, p));
        }
    }

    #[test]
    fn scaled_count_matroid_is_a_union(
        ((k, l), t) in proptest::sample::select(vec![((2usize, 3i64), 2usize), ((1, 1), 3), ((1, 1), 2), ((2, 3), 3)]),
        g in multigraph(2..=7, 20),
    ) {
        let p = cp(k, l);
        let copies: Vec<CountMatroid> = (0..t).map(|_| CountMatroid::new(&g, p)).collect();
        let refs: Vec<&dyn RankOracle> = copies.iter().map(|c| c as &dyn RankOracle).collect();
        prop_assert_eq!(rank(&g, p.scaled(t), &g.all_edges()), union_rank(&refs, &g.all_edges()));
    }
}
