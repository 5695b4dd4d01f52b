//! Matroid machinery over an abstract rank oracle.
//!
//! The ground set of an oracle is `0..ground_size()`; callers map these
//! indices to edge ids.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, UnionFind};

pub trait RankOracle {
    fn ground_size(&self) -> usize;
    fn rank(&self, set: &EdgeSet) -> usize;

    fn ground(&self) -> EdgeSet {
        EdgeSet::full(self.ground_size())
    }

    fn full_rank(&self) -> usize {
        self.rank(&self.ground())
    }
}

impl<O: RankOracle + ?Sized> RankOracle for &O {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn rank(&self, set: &EdgeSet) -> usize {
        (**self).rank(set)
    }
}

/// Wraps a rank closure as an oracle.
pub struct FnOracle<F> {
    size: usize,
    f: F,
}

impl<F: Fn(&EdgeSet) -> usize> FnOracle<F> {
    pub fn new(size: usize, f: F) -> Self {
        FnOracle { size, f }
    }
}

impl<F: Fn(&EdgeSet) -> usize> RankOracle for FnOracle<F> {
    fn ground_size(&self) -> usize {
        self.size
    }
    fn rank(&self, set: &EdgeSet) -> usize {
        (self.f)(set)
    }
}

/// Cycle matroid of a multigraph, ranked with a union-find forest.
#[derive(Debug, Clone)]
pub struct GraphicMatroid {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl GraphicMatroid {
    pub fn new(g: &MultiGraph) -> Self {
        GraphicMatroid {
            n: g.vertex_count(),
            pairs: g.pairs(),
        }
    }
}

impl RankOracle for GraphicMatroid {
    fn ground_size(&self) -> usize {
        self.pairs.len()
    }
    fn rank(&self, set: &EdgeSet) -> usize {
        let mut uf = UnionFind::new(self.n);
        set.iter()
            .filter(|&e| uf.union(self.pairs[e].0, self.pairs[e].1))
            .count()
    }
}

pub fn is_independent<O: RankOracle + ?Sized>(o: &O, set: &EdgeSet) -> bool {
    o.rank(set) == set.len()
}

/// Greedy basis of `within`, scanning elements in increasing order.
pub fn basis_within<O: RankOracle + ?Sized>(o: &O, within: &EdgeSet) -> EdgeSet {
    let mut b = EdgeSet::new(o.ground_size());
    for e in within {
        b.insert(e);
        if o.rank(&b) < b.len() {
            b.remove(e);
        }
    }
    b
}

pub fn basis<O: RankOracle + ?Sized>(o: &O) -> EdgeSet {
    basis_within(o, &o.ground())
}

pub fn closure<O: RankOracle + ?Sized>(o: &O, a: &EdgeSet) -> EdgeSet {
    let r = o.rank(a);
    let mut cl = a.clone();
    for e in 0..o.ground_size() {
        if !a.contains(e) && o.rank(&a.with(e)) == r {
            cl.insert(e);
        }
    }
    cl
}

/// `r(A + e) = r(A) + 1` for every `e` outside `A`.
pub fn is_closed<O: RankOracle + ?Sized>(o: &O, a: &EdgeSet) -> bool {
    let r = o.rank(a);
    (0..o.ground_size()).all(|e| a.contains(e) || o.rank(&a.with(e)) == r + 1)
}

/// Closed with rank `r(E) - k`.
pub fn is_k_hyperplane<O: RankOracle + ?Sized>(o: &O, f: &EdgeSet, k: usize) -> bool {
    o.rank(f) + k == o.full_rank() && is_closed(o, f)
}

/// The unique circuit in `b + e`; `b` must be independent.
pub fn fundamental_circuit<O: RankOracle + ?Sized>(o: &O, b: &EdgeSet, e: usize) -> Result<EdgeSet> {
    let with = b.with(e);
    if b.contains(e) || o.rank(&with) > b.len() {
        return Err(Error::IndependentElement(e));
    }
    let mut c = EdgeSet::from_indices(o.ground_size(), [e]);
    for f in b {
        if o.rank(&with.without(f)) == b.len() {
            c.insert(f);
        }
    }
    Ok(c)
}

/// Component partition of the restriction to `within`: fix a basis and join
/// every other element with its fundamental circuit.
pub fn components_within<O: RankOracle + ?Sized>(o: &O, within: &EdgeSet) -> Vec<EdgeSet> {
    let m = o.ground_size();
    let b = basis_within(o, within);
    let mut uf = UnionFind::new(m);
    for e in within.difference(&b).iter() {
        let c = fundamental_circuit(o, &b, e).expect("non-basis element is spanned");
        for f in &c {
            uf.union(e, f);
        }
    }
    let mut classes: Vec<EdgeSet> = Vec::new();
    let mut slot = vec![usize::MAX; m];
    for e in within {
        let r = uf.find(e);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(EdgeSet::new(m));
        }
        classes[slot[r]].insert(e);
    }
    classes
}

pub fn components<O: RankOracle + ?Sized>(o: &O) -> Vec<EdgeSet> {
    components_within(o, &o.ground())
}

/// A single component containing every element of `within` (false for the
/// empty set).
pub fn is_connected_within<O: RankOracle + ?Sized>(o: &O, within: &EdgeSet) -> bool {
    components_within(o, within).len() == 1
}

/// A vertical separation `(E1, E2)` of the given order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub e1: EdgeSet,
    pub e2: EdgeSet,
    pub order: usize,
}

impl Separation {
    /// Checks the defining inequalities against the oracle.
    pub fn verify<O: RankOracle + ?Sized>(&self, o: &O) -> bool {
        let k = self.order;
        let (r1, r2) = (o.rank(&self.e1), o.rank(&self.e2));
        k >= 1
            && self.e1.is_disjoint(&self.e2)
            && self.e1.union(&self.e2) == o.ground()
            && r1 >= k
            && r2 >= k
            && r1 + r2 < o.full_rank() + k
    }
}

pub const VCONN_CAP: usize = 20;

/// Least order of a vertical separation, or `r(E)` when there is none,
/// with the first minimising separation found.
pub fn vertical_connectivity<O: RankOracle + ?Sized>(o: &O) -> Result<(usize, Option<Separation>)> {
    let m = o.ground_size();
    if m > VCONN_CAP {
        return Err(Error::OverCap {
            what: "vertical connectivity ground set",
            size: m,
            cap: VCONN_CAP,
        });
    }
    let total = o.full_rank();
    let mut best: Option<Separation> = None;
    if m >= 2 {
        // Element 0 always sits in E1.
        for mask in 0u64..1 << (m - 1) {
            let e1 = EdgeSet::from_mask(m, mask << 1 | 1);
            let e2 = e1.complement();
            if e2.is_empty() {
                continue;
            }
            let (r1, r2) = (o.rank(&e1), o.rank(&e2));
            let lambda = r1 + r2 + 1 - total;
            if lambda <= r1.min(r2) && best.as_ref().is_none_or(|s| lambda < s.order) {
                best = Some(Separation { e1, e2, order: lambda });
                if lambda == 1 {
                    break;
                }
            }
        }
    }
    Ok(match best {
        Some(s) => (s.order, Some(s)),
        None => (total, None),
    })
}

pub const UNION_EXHAUSTIVE_CAP: usize = 20;

/// `min_F |F| + Σ r_i(E' - F)` by enumerating every `F`.
pub fn union_rank_exhaustive(oracles: &[&dyn RankOracle], within: &EdgeSet) -> Result<usize> {
    let elems = within.to_vec();
    if elems.len() > UNION_EXHAUSTIVE_CAP {
        return Err(Error::OverCap {
            what: "exhaustive union subsets",
            size: elems.len(),
            cap: UNION_EXHAUSTIVE_CAP,
        });
    }
    let m = within.universe();
    let mut best = usize::MAX;
    for mask in 0u64..1 << elems.len() {
        let f = EdgeSet::from_indices(m, (0..elems.len()).filter(|&i| mask >> i & 1 == 1).map(|i| elems[i]));
        let rest = within.difference(&f);
        let v = f.len() + oracles.iter().map(|o| o.rank(&rest)).sum::<usize>();
        best = best.min(v);
    }
    Ok(best)
}

/// Partitions a maximal independent subset of `within` in the union matroid
/// into parts independent in the respective oracles (shortest augmenting
/// paths in the exchange graph).
pub fn union_partition(oracles: &[&dyn RankOracle], within: &EdgeSet) -> Vec<EdgeSet> {
    let m = within.universe();
    let t = oracles.len();
    let mut parts = vec![EdgeSet::new(m); t];
    let mut owner: Vec<Option<usize>> = vec![None; m];
    for x in within {
        augment(oracles, &mut parts, &mut owner, x);
    }
    parts
}

fn augment(oracles: &[&dyn RankOracle], parts: &mut [EdgeSet], owner: &mut [Option<usize>], x: usize) -> bool {
    let m = owner.len();
    // prev[z] = (y, i): y enters part i, displacing z.
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; m];
    let mut seen = vec![false; m];
    seen[x] = true;
    let mut queue = VecDeque::from([x]);
    while let Some(y) = queue.pop_front() {
        for i in 0..parts.len() {
            if owner[y] == Some(i) {
                continue;
            }
            let grown = parts[i].with(y);
            if oracles[i].rank(&grown) == grown.len() {
                // Unwind: y joins part i, then each displaced element moves on.
                let (mut cur, mut into) = (y, i);
                loop {
                    if let Some(old) = owner[cur] {
                        parts[old].remove(cur);
                    }
                    parts[into].insert(cur);
                    owner[cur] = Some(into);
                    match prev[cur] {
                        Some((p, j)) => {
                            cur = p;
                            into = j;
                        }
                        None => break,
                    }
                }
                return true;
            }
            let size = parts[i].len();
            for z in parts[i].to_vec() {
                if seen[z] {
                    continue;
                }
                if oracles[i].rank(&grown.without(z)) == size {
                    seen[z] = true;
                    prev[z] = Some((y, i));
                    queue.push_back(z);
                }
            }
        }
    }
    false
}

/// Rank in the union matroid via [`union_partition`].
pub fn union_rank(oracles: &[&dyn RankOracle], within: &EdgeSet) -> usize {
    union_partition(oracles, within).iter().map(EdgeSet::len).sum()
}

/// Runs both engines and reports a disagreement as an error.
pub fn union_rank_checked(oracles: &[&dyn RankOracle], within: &EdgeSet) -> Result<usize> {
    let exhaustive = union_rank_exhaustive(oracles, within)?;
    let augmenting = union_rank(oracles, within);
    if exhaustive != augmenting {
        return Err(Error::EngineDisagreement { exhaustive, augmenting });
    }
    Ok(augmenting)
}

/// The union of several oracles on a common ground set.
pub struct UnionMatroid<'a> {
    parts: Vec<&'a dyn RankOracle>,
}

impl<'a> UnionMatroid<'a> {
    pub fn new(parts: Vec<&'a dyn RankOracle>) -> Self {
        UnionMatroid { parts }
    }
}

impl RankOracle for UnionMatroid<'_> {
    fn ground_size(&self) -> usize {
        self.parts.first().map_or(0, |p| p.ground_size())
    }
    fn rank(&self, set: &EdgeSet) -> usize {
        union_rank(&self.parts, set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::Family;

    fn graphic(f: Family) -> GraphicMatroid {
        GraphicMatroid::new(&f.build().unwrap())
    }

    #[test]
    fn union_examples() {
        let k4 = graphic(Family::Complete(4));
        let two: [&dyn RankOracle; 2] = [&k4, &k4];
        assert_eq!(union_rank_checked(&two, &k4.ground()).unwrap(), 6);
        assert_eq!(union_rank_checked(&two, &EdgeSet::new(6)).unwrap(), 0);
        let c3 = graphic(Family::Cycle(3));
        let two: [&dyn RankOracle; 2] = [&c3, &c3];
        assert_eq!(union_rank_checked(&two, &c3.ground()).unwrap(), 3);
        let parts = union_partition(&two, &c3.ground());
        assert!(parts.iter().all(|p| is_independent(&c3, p)));
    }

    #[test]
    fn closure_examples() {
        let k4g = Family::Complete(4).build().unwrap();
        let k4 = GraphicMatroid::new(&k4g);
        let tri = k4g.induced_edges(&crate::VertexSet::from_indices(4, [0, 1, 2]), &k4g.all_edges());
        assert_eq!(closure(&k4, &tri), tri);
        assert!(is_closed(&k4, &tri));
        let spanning = EdgeSet::from_indices(6, [0, 1, 2]);
        assert_eq!(closure(&k4, &spanning), k4.ground());
        let c4 = graphic(Family::Cycle(4));
        assert_eq!(closure(&c4, &EdgeSet::from_indices(4, [0, 1, 2])), c4.ground());
    }

    #[test]
    fn hyperplanes() {
        let k4g = Family::Complete(4).build().unwrap();
        let k4 = GraphicMatroid::new(&k4g);
        let f = k4g.star(0).complement();
        assert!(is_k_hyperplane(&k4, &f, 1));
        assert!(!is_k_hyperplane(&k4, &k4.ground(), 1));
    }

    #[test]
    fn components_examples() {
        let two_triangles = MultiGraph::from_pairs(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(components(&GraphicMatroid::new(&two_triangles)).len(), 2);
        let tree = graphic(Family::Path(5));
        assert!(components(&tree).iter().all(|c| c.len() == 1));
        assert_eq!(components(&tree).len(), 4);
    }

    #[test]
    fn circuits() {
        let c3 = graphic(Family::Cycle(3));
        let b = EdgeSet::from_indices(3, [0, 1]);
        assert_eq!(fundamental_circuit(&c3, &b, 2).unwrap(), c3.ground());
        let pair = graphic(Family::ParallelPair(2));
        let b = EdgeSet::from_indices(2, [0]);
        assert_eq!(fundamental_circuit(&pair, &b, 1).unwrap().len(), 2);
        let p = graphic(Family::Path(3));
        assert_eq!(
            fundamental_circuit(&p, &EdgeSet::from_indices(2, [0]), 1),
            Err(Error::IndependentElement(1))
        );
    }

    #[test]
    fn vertical_connectivity_examples() {
        let bowtie = MultiGraph::from_pairs(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let o = GraphicMatroid::new(&bowtie);
        let (k, sep) = vertical_connectivity(&o).unwrap();
        assert_eq!(k, 1);
        assert!(sep.unwrap().verify(&o));
        // A pendant edge is a bridge.
        let g = MultiGraph::from_pairs(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(vertical_connectivity(&GraphicMatroid::new(&g)).unwrap().0, 1);
        let big = graphic(Family::Complete(7));
        assert!(matches!(vertical_connectivity(&big), Err(Error::OverCap { .. })));
    }
}
