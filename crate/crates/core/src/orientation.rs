//! Smooth orientations: in- and out-degree differ by at most one everywhere.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{MultiGraph, Orientation};

/// Pairs odd-degree vertices in index order with auxiliary edges, orients
/// the resulting even graph along closed trails, and keeps the orientation
/// of the real edges.
pub fn smooth_orientation(g: &MultiGraph) -> Orientation {
    let n = g.vertex_count();
    let mut ends: Vec<(usize, usize)> = g.pairs();
    let real = ends.len();
    let odd: Vec<usize> = g
        .degrees()
        .iter()
        .enumerate()
        .filter(|(_, &d)| d % 2 == 1)
        .map(|(v, _)| v)
        .collect();
    for pair in odd.chunks(2) {
        ends.push((pair[0], pair[1]));
    }
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(a, b)) in ends.iter().enumerate() {
        inc[a].push(e);
        inc[b].push(e);
    }
    let mut used = vec![false; ends.len()];
    let mut heads = vec![0; ends.len()];
    let mut cursor = vec![0; n];
    for start in 0..n {
        // Every vertex has even degree, so each walk closes at its start.
        loop {
            let mut u = start;
            let mut moved = false;
            loop {
                while cursor[u] < inc[u].len() && used[inc[u][cursor[u]]] {
                    cursor[u] += 1;
                }
                if cursor[u] == inc[u].len() {
                    break;
                }
                let e = inc[u][cursor[u]];
                used[e] = true;
                let (a, b) = ends[e];
                let w = if a == u { b } else { a };
                heads[e] = w;
                u = w;
                moved = true;
            }
            if !moved {
                break;
            }
        }
    }
    heads.truncate(real);
    Orientation::new(g, heads).expect("heads are endpoints")
}

pub fn is_smooth(g: &MultiGraph, o: &Orientation) -> bool {
    let ins = o.in_degrees(g);
    let outs = o.out_degrees(g);
    ins.iter().zip(&outs).all(|(&i, &o)| i.abs_diff(o) <= 1)
}
