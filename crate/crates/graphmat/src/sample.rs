//! Seeded random graphs.
//!
//! Connectivity-constrained samples come from rejection sampling over
//! `G(n, p)`: `p` starts from the degree the constraint needs and grows
//! after repeated rejections. The resulting distribution is not uniform over
//! the constrained class; the suites only need valid samples.

use graphmat_core::connectivity::{is_k_connected, is_k_edge_connected};
use graphmat_core::construct::complete_pairs;
use graphmat_core::MultiGraph;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

const MAX_TRIES: usize = 20_000;
const TRIES_PER_STEP: usize = 25;

pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> MultiGraph {
    let chosen: Vec<(usize, usize)> = complete_pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    MultiGraph::from_pairs(n, &chosen).expect("pairs of a complete graph")
}

/// Copy of `g` with its vertices permuted at random.
pub fn shuffled<R: Rng>(g: &MultiGraph, rng: &mut R) -> MultiGraph {
    let n = g.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let pairs: Vec<(usize, usize)> = g.pairs().into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
    MultiGraph::from_pairs(n, &pairs).expect("relabelled pairs")
}

/// Rejection sampler: draws `G(n, p)` until the minimum degree and
/// `accept` hold, starting at average degree `degree + 1/2`.
pub fn rejection<R: Rng>(n: usize, degree: usize, rng: &mut R, accept: impl Fn(&MultiGraph) -> bool) -> Result<MultiGraph> {
    if n < 2 || degree >= n {
        return Err(Error::Usage(format!("no simple graph on {n} vertices has minimum degree {degree}")));
    }
    let mut p = ((degree as f64 + 0.5) / (n as f64 - 1.0)).min(1.0);
    for attempt in 0..MAX_TRIES {
        if attempt > 0 && attempt % TRIES_PER_STEP == 0 {
            p = (p + 0.05).min(1.0);
        }
        let g = gnp(n, p, rng);
        if g.min_degree() >= degree && accept(&g) {
            return Ok(g);
        }
    }
    Err(Error::Usage(format!("sampler gave up after {MAX_TRIES} draws (n={n}, degree={degree})")))
}

pub fn k_connected<R: Rng>(n: usize, k: usize, rng: &mut R) -> Result<MultiGraph> {
    rejection(n, k, rng, |g| is_k_connected(g, k))
}

pub fn k_edge_connected<R: Rng>(n: usize, k: usize, rng: &mut R) -> Result<MultiGraph> {
    rejection(n, k, rng, |g| is_k_edge_connected(g, k))
}

pub fn min_degree<R: Rng>(n: usize, d: usize, rng: &mut R) -> Result<MultiGraph> {
    rejection(n, d, rng, |_| true)
}

/// Random simple `d`-regular graph by the configuration model, retrying
/// pairings that create loops or parallel edges.
pub fn regular<R: Rng>(n: usize, d: usize, rng: &mut R) -> Result<MultiGraph> {
    if d >= n || n * d % 2 == 1 {
        return Err(Error::Usage(format!("no simple {d}-regular graph on {n} vertices")));
    }
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'retry: for _ in 0..MAX_TRIES {
        points.shuffle(rng);
        let mut seen = std::collections::BTreeSet::new();
        let mut pairs = Vec::with_capacity(points.len() / 2);
        for c in points.chunks(2) {
            let (a, b) = (c[0].min(c[1]), c[0].max(c[1]));
            if a == b || !seen.insert((a, b)) {
                continue 'retry;
            }
            pairs.push((a, b));
        }
        return Ok(MultiGraph::from_pairs(n, &pairs)?);
    }
    Err(Error::Usage(format!("no {d}-regular pairing found on {n} vertices")))
}

/// Random loopless multigraph with each pair's multiplicity uniform in
/// `0..=max_mult`.
pub fn multigraph<R: Rng>(n: usize, max_mult: usize, rng: &mut R) -> MultiGraph {
    let mut pairs = Vec::new();
    for (a, b) in complete_pairs(n) {
        for _ in 0..rng.gen_range(0..=max_mult) {
            pairs.push((a, b));
        }
    }
    MultiGraph::from_pairs(n, &pairs).expect("pairs of a complete graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use graphmat_core::connectivity::{edge_connectivity, vertex_connectivity};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_meet_their_constraints() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 5..=10 {
            assert!(vertex_connectivity(&k_connected(n, 4, &mut rng).unwrap()).unwrap() >= 4);
            assert!(edge_connectivity(&k_edge_connected(n, 4, &mut rng).unwrap()).unwrap() >= 4);
            assert!(min_degree(n, 3, &mut rng).unwrap().min_degree() >= 3);
        }
        let g = regular(10, 3, &mut rng).unwrap();
        assert!(g.degrees().iter().all(|&d| d == 3) && g.is_simple());
        assert!(regular(5, 3, &mut rng).is_err());
    }

    #[test]
    fn same_seed_same_graph() {
        let a = k_connected(9, 4, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        let b = k_connected(9, 4, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        assert_eq!(a, b);
    }
}
