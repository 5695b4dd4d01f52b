//! Vertex and edge connectivity by unit-capacity max-flow.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, INF};
use crate::graph::MultiGraph;

/// Maximum number of internally vertex-disjoint `s`-`t` paths in the
/// underlying simple graph, for non-adjacent `s != t`.
pub fn local_vertex_connectivity(g: &MultiGraph, s: usize, t: usize) -> usize {
    let adj = g.adjacency();
    local_on(&adj_lists(&adj), s, t, INF)
}

fn adj_lists(adj: &[crate::VertexSet]) -> Vec<Vec<usize>> {
    adj.iter().map(|a| a.to_vec()).collect()
}

fn local_on(adj: &[Vec<usize>], s: usize, t: usize, limit: i64) -> usize {
    let n = adj.len();
    // v_in = 2v, v_out = 2v + 1
    let mut f = FlowNetwork::new(2 * n);
    #[allow(clippy::needless_range_loop)]
    for v in 0..n {
        let cap = if v == s || v == t { INF } else { 1 };
        f.add_arc(2 * v, 2 * v + 1, cap);
        for &w in &adj[v] {
            f.add_arc(2 * v + 1, 2 * w, 1);
        }
    }
    f.max_flow_bounded(2 * s + 1, 2 * t, limit) as usize
}

/// Vertex connectivity of the underlying simple graph; `n - 1` for complete
/// graphs.
pub fn vertex_connectivity(g: &MultiGraph) -> Result<usize> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::UndefinedConnectivity);
    }
    let adj = g.adjacency();
    let lists = adj_lists(&adj);
    let mut best = n - 1;
    // Even's scheme: some vertex among the first best + 1 avoids a minimum
    // separator, so pairs with a smaller first index suffice.
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if !adj[i].contains(j) {
                let k = local_on(&lists, i, j, best as i64);
                best = best.min(k);
            }
        }
        i += 1;
    }
    Ok(best)
}

/// Global minimum edge cut, counting parallel edges; 0 when disconnected.
pub fn edge_connectivity(g: &MultiGraph) -> Result<usize> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::UndefinedConnectivity);
    }
    if !g.is_connected() {
        return Ok(0);
    }
    let mut best = INF;
    for t in 1..n {
        let mut f = FlowNetwork::new(n);
        for &(a, b) in &g.pairs() {
            f.add_edge(a, b, 1);
        }
        best = best.min(f.max_flow_bounded(0, t, best));
    }
    Ok(best as usize)
}

pub fn is_k_connected(g: &MultiGraph, k: usize) -> bool {
    g.vertex_count() > k && vertex_connectivity(g).is_ok_and(|c| c >= k)
}

pub fn is_k_edge_connected(g: &MultiGraph, k: usize) -> bool {
    g.vertex_count() >= 2 && edge_connectivity(g).is_ok_and(|c| c >= k)
}
