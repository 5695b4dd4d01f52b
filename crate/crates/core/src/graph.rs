//! Loopless multigraphs with stable string identities for vertices and edges.
//!
//! A [`MultiGraph`] is always held in canonical form: vertices sorted by id,
//! edges sorted by id, and each endpoint pair stored with the smaller vertex
//! index first. Algorithms address vertices and edges by their position in
//! that order; ids survive every subgraph operation.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::{EdgeSet, VertexSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    /// Endpoint indices with `ends.0 < ends.1`.
    pub ends: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

/// Zero-padded label so that lexicographic order matches numeric order.
pub(crate) fn padded(prefix: &str, i: usize, count: usize) -> String {
    let width = count.saturating_sub(1).max(1).to_string().len();
    format!("{prefix}{i:0width$}")
}

impl MultiGraph {
    /// Builds a graph from vertex ids and `(edge id, end, end)` triples.
    ///
    /// Rejects loops, duplicate vertex or edge ids, and endpoints that are
    /// not listed vertices.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let mut names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        names.sort();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidGraph(format!("duplicate vertex id {:?}", w[0])));
            }
        }
        let index: BTreeMap<&str, usize> =
            names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for (id, a, b) in edges {
            let ia = *index
                .get(a.as_str())
                .ok_or_else(|| Error::InvalidGraph(format!("edge {id:?}: unknown vertex {a:?}")))?;
            let ib = *index
                .get(b.as_str())
                .ok_or_else(|| Error::InvalidGraph(format!("edge {id:?}: unknown vertex {b:?}")))?;
            if ia == ib {
                return Err(Error::InvalidGraph(format!("edge {id:?} is a loop at {a:?}")));
            }
            if !seen.insert(id.clone()) {
                return Err(Error::InvalidGraph(format!("duplicate edge id {id:?}")));
            }
            out.push(Edge {
                id,
                ends: (ia.min(ib), ia.max(ib)),
            });
        }
        out.sort_by(|x, y| x.id.cmp(&y.id));
        Ok(MultiGraph {
            vertices: names,
            edges: out,
        })
    }

    /// As [`MultiGraph::new`], additionally rejecting isolated vertices.
    pub fn new_without_isolated<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let g = Self::new(vertices, edges)?;
        if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) == 0) {
            return Err(Error::InvalidGraph(format!(
                "vertex {:?} is isolated",
                g.vertices[v]
            )));
        }
        Ok(g)
    }

    /// Graph on `n` generated vertices `v0..` with edges given by index
    /// pairs, named `e0..` in the given order.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let names: Vec<String> = (0..n).map(|i| padded("v", i, n)).collect();
        let m = pairs.len();
        let edges = pairs.iter().enumerate().map(|(j, &(a, b))| {
            let va = names.get(a).cloned().unwrap_or_else(|| format!("#{a}"));
            let vb = names.get(b).cloned().unwrap_or_else(|| format!("#{b}"));
            (padded("e", j, m), va, vb)
        });
        Self::new(names.clone(), edges.collect::<Vec<_>>())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn ends(&self, e: usize) -> (usize, usize) {
        self.edges[e].ends
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(id)).ok()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.binary_search_by(|e| e.id.as_str().cmp(id)).ok()
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edge_count())
    }

    pub fn empty_edge_set(&self) -> EdgeSet {
        EdgeSet::new(self.edge_count())
    }

    /// Index pairs of all edges, in edge order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| e.ends).collect()
    }

    /// Index pairs of the edges in `set`, in edge order.
    pub fn pairs_of(&self, set: &EdgeSet) -> Vec<(usize, usize)> {
        set.iter().map(|e| self.edges[e].ends).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.ends.0 == v || e.ends.1 == v)
            .count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count()];
        for e in &self.edges {
            d[e.ends.0] += 1;
            d[e.ends.1] += 1;
        }
        d
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    /// The star of `v`: all edges incident to it.
    pub fn star(&self, v: usize) -> EdgeSet {
        EdgeSet::from_indices(
            self.edge_count(),
            (0..self.edge_count()).filter(|&e| {
                let (a, b) = self.edges[e].ends;
                a == v || b == v
            }),
        )
    }

    /// Vertices touched by the edges of `set`.
    pub fn vertices_of(&self, set: &EdgeSet) -> VertexSet {
        let mut vs = VertexSet::new(self.vertex_count());
        for e in set {
            let (a, b) = self.edges[e].ends;
            vs.insert(a);
            vs.insert(b);
        }
        vs
    }

    /// Edges of `within` with both ends in `vs`.
    pub fn induced_edges(&self, vs: &VertexSet, within: &EdgeSet) -> EdgeSet {
        EdgeSet::from_indices(
            self.edge_count(),
            within.iter().filter(|&e| {
                let (a, b) = self.edges[e].ends;
                vs.contains(a) && vs.contains(b)
            }),
        )
    }

    /// Number of parallel edges between every unordered pair, as a dense
    /// `n x n` matrix.
    pub fn multiplicities(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut m = vec![vec![0; n]; n];
        for e in &self.edges {
            let (a, b) = e.ends;
            m[a][b] += 1;
            m[b][a] += 1;
        }
        m
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert(e.ends))
    }

    /// Simple adjacency as neighbor bitsets.
    pub fn adjacency(&self) -> Vec<VertexSet> {
        let n = self.vertex_count();
        let mut adj = vec![VertexSet::new(n); n];
        for e in &self.edges {
            let (a, b) = e.ends;
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    /// Keeps the first edge (in id order) of every parallel class.
    pub fn underlying_simple(&self) -> MultiGraph {
        let mut seen = BTreeSet::new();
        let keep: Vec<usize> = (0..self.edge_count())
            .filter(|&e| seen.insert(self.edges[e].ends))
            .collect();
        self.edge_subgraph(&EdgeSet::from_indices(self.edge_count(), keep))
    }

    /// Same vertex set, only the edges in `set` (ids preserved).
    pub fn edge_subgraph(&self, set: &EdgeSet) -> MultiGraph {
        MultiGraph {
            vertices: self.vertices.clone(),
            edges: set.iter().map(|e| self.edges[e].clone()).collect(),
        }
    }

    /// Subgraph spanned by the edges of `set`: only the vertices they touch.
    pub fn edge_induced(&self, set: &EdgeSet) -> MultiGraph {
        self.induced_on(&self.vertices_of(set), set)
    }

    /// Subgraph induced by the vertex set `vs`.
    pub fn induced_subgraph(&self, vs: &VertexSet) -> MultiGraph {
        let inner = self.induced_edges(vs, &self.all_edges());
        self.induced_on(vs, &inner)
    }

    pub fn remove_vertex(&self, v: usize) -> MultiGraph {
        let mut vs = VertexSet::full(self.vertex_count());
        vs.remove(v);
        self.induced_subgraph(&vs)
    }

    fn induced_on(&self, vs: &VertexSet, set: &EdgeSet) -> MultiGraph {
        let mut map = vec![usize::MAX; self.vertex_count()];
        let mut vertices = Vec::new();
        for (new, old) in vs.iter().enumerate() {
            map[old] = new;
            vertices.push(self.vertices[old].clone());
        }
        let edges = set
            .iter()
            .map(|e| {
                let (a, b) = self.edges[e].ends;
                Edge {
                    id: self.edges[e].id.clone(),
                    ends: (map[a], map[b]),
                }
            })
            .collect();
        MultiGraph { vertices, edges }
    }

    /// Vertex-disjoint union; ids are prefixed with `a:` and `b:`.
    pub fn disjoint_union(&self, other: &MultiGraph) -> MultiGraph {
        let tag = |p: &str, s: &String| format!("{p}:{s}");
        let vertices = self
            .vertices
            .iter()
            .map(|v| tag("a", v))
            .chain(other.vertices.iter().map(|v| tag("b", v)));
        let edges = self
            .edges
            .iter()
            .map(|e| {
                (
                    tag("a", &e.id),
                    tag("a", &self.vertices[e.ends.0]),
                    tag("a", &self.vertices[e.ends.1]),
                )
            })
            .chain(other.edges.iter().map(|e| {
                (
                    tag("b", &e.id),
                    tag("b", &other.vertices[e.ends.0]),
                    tag("b", &other.vertices[e.ends.1]),
                )
            }))
            .collect::<Vec<_>>();
        MultiGraph::new(vertices.collect::<Vec<_>>(), edges).expect("union of valid graphs")
    }

    /// Connected components of the graph `(V, set)` as vertex sets; vertices
    /// untouched by `set` form singleton components.
    pub fn components_of(&self, set: &EdgeSet) -> Vec<VertexSet> {
        let n = self.vertex_count();
        let mut uf = UnionFind::new(n);
        for e in set {
            let (a, b) = self.edges[e].ends;
            uf.union(a, b);
        }
        let mut groups: BTreeMap<usize, VertexSet> = BTreeMap::new();
        for v in 0..n {
            groups
                .entry(uf.find(v))
                .or_insert_with(|| VertexSet::new(n))
                .insert(v);
        }
        let mut out: Vec<VertexSet> = groups.into_values().collect();
        out.sort_by_key(|s| s.first());
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components_of(&self.all_edges()).len() == 1
    }

    /// Renames vertices (by index) and keeps edge ids.
    pub fn relabeled(&self, names: &[String]) -> Result<MultiGraph> {
        if names.len() != self.vertex_count() {
            return Err(Error::InvalidGraph("relabeling has wrong length".to_string()));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| (e.id.clone(), names[e.ends.0].clone(), names[e.ends.1].clone()))
            .collect::<Vec<_>>();
        MultiGraph::new(names.to_vec(), edges)
    }

    /// Edge set from a list of edge ids.
    pub fn edge_set_from_ids<'a, I>(&self, ids: I) -> Result<EdgeSet>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut s = self.empty_edge_set();
        for id in ids {
            let e = self
                .edge_index(id)
                .ok_or_else(|| Error::InvalidGraph(format!("unknown edge id {id:?}")))?;
            s.insert(e);
        }
        Ok(s)
    }

    pub fn edge_ids_of(&self, set: &EdgeSet) -> Vec<String> {
        set.iter().map(|e| self.edges[e].id.clone()).collect()
    }

    pub fn vertex_ids_of(&self, vs: &VertexSet) -> Vec<String> {
        vs.iter().map(|v| self.vertices[v].clone()).collect()
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// An orientation: for every edge, which endpoint is its head.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    heads: Vec<usize>,
}

impl Orientation {
    pub fn new(g: &MultiGraph, heads: Vec<usize>) -> Result<Self> {
        if heads.len() != g.edge_count() {
            return Err(Error::InvalidGraph("orientation length mismatch".to_string()));
        }
        for (e, &h) in heads.iter().enumerate() {
            let (a, b) = g.ends(e);
            if h != a && h != b {
                return Err(Error::InvalidGraph(format!(
                    "head of edge {:?} is not one of its ends",
                    g.edges()[e].id
                )));
            }
        }
        Ok(Orientation { heads })
    }

    pub fn head(&self, e: usize) -> usize {
        self.heads[e]
    }

    pub fn in_degrees(&self, g: &MultiGraph) -> Vec<usize> {
        let mut d = vec![0; g.vertex_count()];
        for &h in &self.heads {
            d[h] += 1;
        }
        d
    }

    pub fn out_degrees(&self, g: &MultiGraph) -> Vec<usize> {
        let mut d = vec![0; g.vertex_count()];
        for (e, &h) in self.heads.iter().enumerate() {
            let (a, b) = g.ends(e);
            d[if h == a { b } else { a }] += 1;
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> String {
        x.to_string()
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        let loop_edge = MultiGraph::new([s("a"), s("b")], [(s("e1"), s("a"), s("a"))]);
        assert!(matches!(loop_edge, Err(Error::InvalidGraph(_))));
        let dup = MultiGraph::new(
            [s("a"), s("b")],
            [(s("e1"), s("a"), s("b")), (s("e1"), s("b"), s("a"))],
        );
        assert!(matches!(dup, Err(Error::InvalidGraph(_))));
        let unknown = MultiGraph::new([s("a")], [(s("e1"), s("a"), s("z"))]);
        assert!(unknown.is_err());
        let isolated =
            MultiGraph::new_without_isolated([s("a"), s("b"), s("c")], [(s("e"), s("a"), s("b"))]);
        assert!(isolated.is_err());
    }

    #[test]
    fn canonical_order_and_subgraphs() {
        let g = MultiGraph::new(
            [s("c"), s("a"), s("b")],
            [
                (s("z"), s("c"), s("a")),
                (s("y"), s("a"), s("b")),
                (s("x"), s("b"), s("a")),
            ],
        )
        .unwrap();
        assert_eq!(g.vertex_ids(), &[s("a"), s("b"), s("c")]);
        assert_eq!(g.edges()[0].id, "x");
        assert_eq!(g.ends(0), (0, 1));
        assert!(!g.is_simple());
        assert_eq!(g.underlying_simple().edge_count(), 2);
        let h = g.remove_vertex(0);
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edge_count(), 0);
        let sub = g.edge_induced(&EdgeSet::from_indices(3, [2]));
        assert_eq!(sub.vertex_ids(), &[s("a"), s("c")]);
        assert_eq!(sub.edges()[0].id, "z");
    }

    #[test]
    fn padded_names_sort_numerically() {
        let g = MultiGraph::from_pairs(12, &[(0, 11), (2, 10)]).unwrap();
        assert_eq!(g.vertex_ids()[2], "v02");
        assert_eq!(g.ends(0), (0, 11));
    }
}
