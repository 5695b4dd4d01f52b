//! JSON formats for graphs, labelled matroids and certificates, and DOT
//! export.
//!
//! Graph files look like
//! `{"vertices":["a","b"],"edges":[{"id":"e1","ends":["a","b"]}]}`.
//! Output is canonical: vertices and edge ids sorted, ends sorted.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use graphmat_core::cofactor::CofactorCertificate;
use graphmat_core::count::{CountParams, CoverCertificate};
use graphmat_core::reconstruct::{labeled_from_graph, FamilyOracle, FamilyTag, LabeledMatroid};
use graphmat_core::{EdgeSet, MultiGraph};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub id: String,
    pub ends: [String; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum FamilyJson {
    Count { k: usize, l: i64 },
    Cofactor { t: usize },
}

impl FamilyJson {
    pub fn tag(self) -> Result<FamilyTag> {
        Ok(match self {
            FamilyJson::Count { k, l } => FamilyTag::Count(CountParams::new(k, l)?),
            FamilyJson::Cofactor { t } => FamilyTag::Cofactor { t },
        })
    }
}

impl From<FamilyTag> for FamilyJson {
    fn from(t: FamilyTag) -> Self {
        match t {
            FamilyTag::Count(p) => FamilyJson::Count { k: p.k, l: p.l },
            FamilyTag::Cofactor { t } => FamilyJson::Cofactor { t },
        }
    }
}

/// A matroid given by element ids, a family tag and the graph its oracle
/// is built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatroidJson {
    pub elements: Vec<String>,
    pub family: FamilyJson,
    pub graph: GraphJson,
}

pub fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

impl GraphJson {
    pub fn from_graph(g: &MultiGraph) -> Self {
        let names = g.vertex_ids();
        GraphJson {
            vertices: names.to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeJson {
                    id: e.id.clone(),
                    ends: [names[e.ends.0].clone(), names[e.ends.1].clone()],
                })
                .collect(),
        }
    }

    /// Validates ids and ends, naming the offending position on failure.
    pub fn to_graph(&self) -> Result<MultiGraph> {
        let mut vertices = BTreeSet::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if !vertices.insert(v.as_str()) {
                return Err(Error::format(format!("vertices[{i}]"), format!("duplicate vertex id {v:?}")));
            }
        }
        let mut ids = BTreeSet::new();
        for (j, e) in self.edges.iter().enumerate() {
            if !ids.insert(e.id.as_str()) {
                return Err(Error::format(format!("edges[{j}].id"), format!("duplicate edge id {:?}", e.id)));
            }
            for (s, end) in e.ends.iter().enumerate() {
                if !vertices.contains(end.as_str()) {
                    return Err(Error::format(format!("edges[{j}].ends[{s}]"), format!("unknown vertex {end:?}")));
                }
            }
            if e.ends[0] == e.ends[1] {
                return Err(Error::format(format!("edges[{j}].ends"), format!("loop at {:?}", e.ends[0])));
            }
        }
        let edges = self.edges.iter().map(|e| (e.id.clone(), e.ends[0].clone(), e.ends[1].clone()));
        Ok(MultiGraph::new(self.vertices.clone(), edges.collect::<Vec<_>>())?)
    }
}

pub fn read_graph(bytes: &[u8]) -> Result<MultiGraph> {
    serde_json::from_slice::<GraphJson>(bytes)?.to_graph()
}

pub fn write_graph(g: &MultiGraph) -> String {
    let mut s = serde_json::to_string_pretty(&GraphJson::from_graph(g)).expect("graph serializes");
    s.push('\n');
    s
}

/// Builds the oracle from the embedded graph. Elements must be exactly the
/// graph's edge ids.
pub fn read_matroid(bytes: &[u8]) -> Result<LabeledMatroid<FamilyOracle>> {
    let m: MatroidJson = serde_json::from_slice(bytes)?;
    let g = m.graph.to_graph().map_err(|e| match e {
        Error::Format { location, msg } => Error::format(format!("graph.{location}"), msg),
        other => other,
    })?;
    let mut seen = BTreeSet::new();
    for (i, id) in m.elements.iter().enumerate() {
        if g.edge_index(id).is_none() {
            return Err(Error::format(format!("elements[{i}]"), format!("{id:?} is not an edge of the graph")));
        }
        if !seen.insert(id.as_str()) {
            return Err(Error::format(format!("elements[{i}]"), format!("duplicate element {id:?}")));
        }
    }
    if seen.len() != g.edge_count() {
        return Err(Error::format("elements", "every edge of the graph must be listed"));
    }
    Ok(labeled_from_graph(&g, m.family.tag()?)?)
}

pub fn write_matroid(g: &MultiGraph, family: FamilyTag) -> String {
    let m = MatroidJson {
        elements: g.edges().iter().map(|e| e.id.clone()).collect(),
        family: family.into(),
        graph: GraphJson::from_graph(g),
    };
    let mut s = serde_json::to_string_pretty(&m).expect("matroid serializes");
    s.push('\n');
    s
}

fn cover_ids(g: &MultiGraph, cover: &[graphmat_core::VertexSet]) -> Vec<Vec<String>> {
    cover.iter().map(|x| g.vertex_ids_of(x)).collect()
}

/// `{"rank":..,"F":[edge ids],"cover":[[vertex ids]..]}`.
pub fn count_certificate_json(g: &MultiGraph, rank: usize, cert: &CoverCertificate) -> Value {
    json!({
        "rank": rank,
        "F": g.edge_ids_of(&cert.f),
        "cover": cover_ids(g, &cert.cover),
    })
}

/// As [`count_certificate_json`] plus `t`, the hinges with their degrees
/// and the shelling order (indices into `cover`).
pub fn cofactor_certificate_json(g: &MultiGraph, rank: usize, cert: &CofactorCertificate) -> Value {
    let names = g.vertex_ids();
    let hinges: Vec<Value> = cert
        .cover
        .hinges
        .iter()
        .map(|h| json!({"pair": [names[h.pair.0], names[h.pair.1]], "degree": h.degree}))
        .collect();
    json!({
        "rank": rank,
        "t": cert.t,
        "F": g.edge_ids_of(&cert.f),
        "cover": cover_ids(g, &cert.cover.sets),
        "hinges": hinges,
        "shelling": cert.cover.shelling,
    })
}

/// Edge classes by id, e.g. components or stars.
pub fn edge_classes_json(g: &MultiGraph, classes: &[EdgeSet]) -> Value {
    Value::Array(classes.iter().map(|c| json!(g.edge_ids_of(c))).collect())
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT with edge ids as labels.
pub fn to_dot(g: &MultiGraph) -> String {
    let names = g.vertex_ids();
    let mut out = String::from("graph G {\n");
    for v in names {
        let _ = writeln!(out, "  {};", quoted(v));
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  {} -- {} [label={}];",
            quoted(&names[e.ends.0]),
            quoted(&names[e.ends.1]),
            quoted(&e.id)
        );
    }
    out.push_str("}\n");
    out
}

/// Parses a comma separated list of edge ids into a set.
pub fn edge_list(g: &MultiGraph, list: &str) -> Result<EdgeSet> {
    let ids: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let mut index = BTreeMap::new();
    for (i, id) in ids.iter().enumerate() {
        let e = g
            .edge_index(id)
            .ok_or_else(|| Error::format(format!("--edges[{i}]"), format!("unknown edge id {id:?}")))?;
        index.insert(e, ());
    }
    Ok(EdgeSet::from_indices(g.edge_count(), index.into_keys()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_the_small_example() {
        let g = read_graph(br#"{"vertices":["a","b"],"edges":[{"id":"e1","ends":["a","b"]}]}"#).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
    }

    #[test]
    fn errors_carry_locations() {
        let e = read_graph(br#"{"vertices":["a","b"],"edges":[{"id":"e1","ends":["a","a"]}]}"#).unwrap_err();
        assert_eq!(e.to_string(), "edges[0].ends: loop at \"a\"");
        let e = read_graph(br#"{"vertices":["a"],"edges":[{"id":"e1","ends":["a","z"]}]}"#).unwrap_err();
        assert!(e.to_string().starts_with("edges[0].ends[1]"));
        let e = read_graph(b"{\"vertices\":[\"a\",\n\"a\"],\"edges\":[]}").unwrap_err();
        assert!(e.to_string().starts_with("vertices[1]"));
        let e = read_graph(b"{\"vertices\":[\n1]}").unwrap_err();
        assert!(matches!(e, Error::Json { line: 2, .. }), "{e:?}");
    }

    #[test]
    fn write_canonicalizes() {
        let messy = br#"{"vertices":["c","a","b"],"edges":[{"id":"y","ends":["c","a"]},{"id":"x","ends":["b","a"]}]}"#;
        let once = write_graph(&read_graph(messy).unwrap());
        let twice = write_graph(&read_graph(once.as_bytes()).unwrap());
        assert_eq!(once, twice);
        let parsed: GraphJson = serde_json::from_str(&once).unwrap();
        assert_eq!(parsed.vertices, ["a", "b", "c"]);
        assert_eq!(parsed.edges[0].id, "x");
        assert_eq!(parsed.edges[1].ends, ["a".to_string(), "c".to_string()]);
    }

    #[test]
    fn matroid_roundtrip() {
        let g = graphmat_core::construct::Family::Complete(4).build().unwrap();
        let text = write_matroid(&g, FamilyTag::Count(CountParams::new(2, 3).unwrap()));
        let m = read_matroid(text.as_bytes()).unwrap();
        assert_eq!(m.elements.len(), 6);
        let bad = text.replacen("\"e0\"", "\"zz\"", 1);
        assert!(read_matroid(bad.as_bytes()).is_err());
    }

    #[test]
    fn dot_lists_every_edge() {
        let g = graphmat_core::construct::Family::Cycle(3).build().unwrap();
        let dot = to_dot(&g);
        assert_eq!(dot.matches(" -- ").count(), 3);
    }
}
