#![allow(dead_code)]

use graphmat_core::construct::complete_pairs;
use graphmat_core::count::CountParams;
use graphmat_core::{EdgeSet, MultiGraph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const PARAMS: [(usize, i64); 9] = [(1, 1), (1, 0), (2, 3), (2, 2), (2, 1), (2, 0), (2, -1), (3, 4), (3, 5)];

pub fn cp(k: usize, l: i64) -> CountParams {
    CountParams::new(k, l).unwrap()
}

pub fn params() -> impl Strategy<Value = CountParams> {
    proptest::sample::select(PARAMS.to_vec()).prop_map(|(k, l)| cp(k, l))
}

/// Loopless multigraph on `n` vertices with up to `m` edges.
pub fn multigraph(n: std::ops::RangeInclusive<usize>, m: usize) -> impl Strategy<Value = MultiGraph> {
    n.prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 1..n), 0..=m).prop_map(move |raw| {
            let pairs: Vec<(usize, usize)> = raw.into_iter().map(|(a, d)| (a, (a + d) % n)).collect();
            MultiGraph::from_pairs(n, &pairs).unwrap()
        })
    })
}

/// Simple graph on `n` vertices from an edge-presence mask.
pub fn simple_graph(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = MultiGraph> {
    n.prop_flat_map(|n| {
        let pairs = complete_pairs(n);
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let chosen: Vec<(usize, usize)> =
                pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(&p, _)| p).collect();
            MultiGraph::from_pairs(n, &chosen).unwrap()
        })
    })
}

pub fn subset(g: &MultiGraph, bits: &[bool]) -> EdgeSet {
    EdgeSet::from_indices(g.edge_count(), (0..g.edge_count()).filter(|&e| bits.get(e).copied().unwrap_or(false)))
}

/// G(n, p) with a seeded generator.
pub fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> MultiGraph {
    let chosen: Vec<(usize, usize)> = complete_pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    MultiGraph::from_pairs(n, &chosen).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
