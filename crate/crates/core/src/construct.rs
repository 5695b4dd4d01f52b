//! Generators for the graph families used throughout the crate.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use crate::bitset::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::MultiGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    Cycle(usize),
    /// Path on `n` vertices.
    Path(usize),
    /// Hub joined to a cycle on `n - 1` rim vertices.
    Wheel(usize),
    /// Two vertices joined by `m` parallel edges.
    ParallelPair(usize),
    /// Ring of `2l + 2` cliques `K_{2l-1}` joined by matchings of size
    /// `l - 1`, plus `l + 1` long diagonals.
    LovaszYemini { k: usize, l: usize },
    /// `K_n`; see [`cofactor_packing`] for the packed subgraphs.
    CofactorPacking { n: usize, t: usize },
    DisjointUnion(Box<MultiGraph>, Box<MultiGraph>),
}

fn bad(msg: alloc::string::String) -> Error {
    Error::InvalidParams(msg)
}

pub fn complete_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect()
}

impl Family {
    pub fn build(&self) -> Result<MultiGraph> {
        match *self {
            Family::Complete(n) => {
                if n == 0 {
                    return Err(bad(format!("complete({n}) needs n >= 1")));
                }
                MultiGraph::from_pairs(n, &complete_pairs(n))
            }
            Family::Cycle(n) => {
                if n < 3 {
                    return Err(bad(format!("cycle({n}) needs n >= 3")));
                }
                let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
                MultiGraph::from_pairs(n, &pairs)
            }
            Family::Path(n) => {
                if n < 2 {
                    return Err(bad(format!("path({n}) needs n >= 2")));
                }
                let pairs: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
                MultiGraph::from_pairs(n, &pairs)
            }
            Family::Wheel(n) => {
                if n < 4 {
                    return Err(bad(format!("wheel({n}) needs n >= 4")));
                }
                let rim = n - 1;
                let mut pairs: Vec<_> = (1..n).map(|i| (0, i)).collect();
                pairs.extend((0..rim).map(|i| (1 + i, 1 + (i + 1) % rim)));
                MultiGraph::from_pairs(n, &pairs)
            }
            Family::ParallelPair(m) => {
                if m == 0 {
                    return Err(bad("parallel_pair needs m >= 1".into()));
                }
                MultiGraph::from_pairs(2, &alloc::vec![(0, 1); m])
            }
            Family::LovaszYemini { k, l } => lovasz_yemini(k, l),
            Family::CofactorPacking { n, t } => Ok(cofactor_packing(n, t)?.graph),
            Family::DisjointUnion(ref a, ref b) => Ok(a.disjoint_union(b)),
        }
    }
}

fn lovasz_yemini(k: usize, l: usize) -> Result<MultiGraph> {
    if !(2 <= k && k < l && l < 2 * k) {
        return Err(bad(format!(
            "lovasz_yemini({k},{l}) needs 2 <= k < l <= 2k-1"
        )));
    }
    let copies = 2 * l + 2;
    let size = 2 * l - 1;
    let id = |c: usize, j: usize| (c % copies) * size + j;
    let mut pairs = Vec::new();
    for c in 0..copies {
        for a in 0..size {
            for b in a + 1..size {
                pairs.push((id(c, a), id(c, b)));
            }
        }
    }
    // Local vertices 0..l-1 of copy c are matched to l-1..2l-2 of copy c+1;
    // local vertex 2l-2 is left free.
    for c in 0..copies {
        for j in 0..l - 1 {
            pairs.push((id(c, j), id(c + 1, l - 1 + j)));
        }
    }
    let free = size - 1;
    for i in 0..=l {
        pairs.push((id(i, free), id(i + l + 1, free)));
    }
    MultiGraph::from_pairs(copies * size, &pairs)
}

/// `K_n` together with `t` edge-disjoint spanning subgraphs, each a `K_6`
/// on its own block plus every other vertex attached to it by exactly three
/// edges.
#[derive(Debug, Clone)]
pub struct CofactorPacking {
    pub graph: MultiGraph,
    /// The six-vertex blocks `V_1..V_t`.
    pub blocks: Vec<Vec<usize>>,
    /// Edge sets of `G_1..G_t` in `graph`.
    pub parts: Vec<EdgeSet>,
}

pub fn cofactor_packing(n: usize, t: usize) -> Result<CofactorPacking> {
    if t == 0 || n < 6 * t {
        return Err(bad(format!("cofactor_packing({n},{t}) needs t >= 1 and n >= 6t")));
    }
    let pairs = complete_pairs(n);
    let graph = MultiGraph::from_pairs(n, &pairs)?;
    // Edge ids follow pair order, and pair order is lexicographic.
    let edge = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        a * n - a * (a + 1) / 2 + (b - a - 1)
    };
    let blocks: Vec<Vec<usize>> = (0..t).map(|i| (6 * i..6 * i + 6).collect()).collect();
    let mut parts = alloc::vec![EdgeSet::new(pairs.len()); t];
    for (i, block) in blocks.iter().enumerate() {
        for (x, &a) in block.iter().enumerate() {
            for &b in &block[x + 1..] {
                parts[i].insert(edge(a, b));
            }
        }
    }
    for i in 0..t {
        for j in i + 1..t {
            for (p, &v) in blocks[i].iter().enumerate() {
                for (q, &w) in blocks[j].iter().enumerate() {
                    let same_half = (p < 3) == (q < 3);
                    parts[if same_half { i } else { j }].insert(edge(v, w));
                }
            }
        }
    }
    for x in 6 * t..n {
        for (i, block) in blocks.iter().enumerate() {
            for &b in &block[..3] {
                parts[i].insert(edge(x, b));
            }
        }
    }
    Ok(CofactorPacking {
        graph,
        blocks,
        parts,
    })
}
