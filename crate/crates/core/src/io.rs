//! File formats: graph JSON, hyperplane dumps, coloring rows, point
//! serialization, cover certificates, and DOT export. Rationals are always
//! decimal-free `p/q` strings.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::coloring::ColoringAssignment;
use crate::cube::FinSupportPoint;
use crate::error::{Error, Result};
use crate::graph::{MedianGraph, RawGraph, Vertex};
use crate::hyperplane::HyperplaneSet;
use crate::rat::{rat_from_str, rat_to_string};
use crate::Complex;

/// On-disk graph: `{"vertices": N, "edges": [[u,v],...], "base": {"0": v}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub base: BTreeMap<String, usize>,
}

impl GraphFile {
    pub fn to_raw(&self) -> Result<RawGraph> {
        let mut base = BTreeMap::new();
        for (k, &v) in &self.base {
            let c: usize = k
                .parse()
                .map_err(|_| Error::InvalidParams(format!("bad component index {k:?}")))?;
            base.insert(c, v);
        }
        Ok(RawGraph { vertex_count: self.vertices, edges: self.edges.clone(), base })
    }

    pub fn from_graph(g: &MedianGraph) -> GraphFile {
        let mut base = BTreeMap::new();
        for c in 0..g.component_count() {
            base.insert(c.to_string(), g.base_of(c));
        }
        GraphFile { vertices: g.vertex_count(), edges: g.edges().to_vec(), base }
    }
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<RawGraph> {
    let text = std::fs::read_to_string(path)?;
    let file: GraphFile = serde_json::from_str(&text)?;
    file.to_raw()
}

pub fn write_graph(path: impl AsRef<Path>, g: &MedianGraph) -> Result<()> {
    let file = GraphFile::from_graph(g);
    std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

/// `{"hyperplanes": [{"edges": [...], "minus": [...], "plus": [...]}]}`
#[derive(Debug, Serialize, Deserialize)]
pub struct HyperplaneDump {
    pub hyperplanes: Vec<HyperplaneRow>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct HyperplaneRow {
    pub edges: Vec<(usize, usize)>,
    pub minus: Vec<Vertex>,
    pub plus: Vec<Vertex>,
}

pub fn dump_hyperplanes(hs: &HyperplaneSet) -> HyperplaneDump {
    HyperplaneDump {
        hyperplanes: hs
            .iter()
            .map(|(_, p)| HyperplaneRow {
                edges: p.edges.clone(),
                minus: p.minus.iter().collect(),
                plus: p.plus.iter().collect(),
            })
            .collect(),
    }
}

/// One row of the `color` output.
#[derive(Debug, Serialize, Deserialize)]
pub struct ColorRow {
    pub hyperplane: usize,
    pub rank: Vec<u32>,
    pub color: u8,
}

pub fn color_rows(coloring: &ColoringAssignment) -> Vec<ColorRow> {
    (0..coloring.color.len())
        .map(|h| ColorRow { hyperplane: h, rank: coloring.rank[h].clone(), color: coloring.color[h] })
        .collect()
}

/// `{"component": c, "entries": {"h": "p/q", ...}}`
#[derive(Debug, Serialize, Deserialize)]
pub struct PointFile {
    pub component: usize,
    pub entries: BTreeMap<String, String>,
}

pub fn point_to_file(p: &FinSupportPoint) -> PointFile {
    PointFile {
        component: p.component(),
        entries: p
            .support()
            .map(|(h, v)| (h.to_string(), rat_to_string(v)))
            .collect(),
    }
}

pub fn point_from_file(f: &PointFile) -> Result<FinSupportPoint> {
    let mut entries = BTreeMap::new();
    for (k, v) in &f.entries {
        let h: usize =
            k.parse().map_err(|_| Error::InvalidParams(format!("bad hyperplane id {k:?}")))?;
        entries.insert(h, rat_from_str(v)?);
    }
    FinSupportPoint::new(f.component, entries)
}

/// DOT rendering of a graph, one subgraph per component with bases marked.
pub fn to_dot(g: &MedianGraph, name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("graph {name} {{\n"));
    for c in 0..g.component_count() {
        let base = g.base_of(c);
        for &v in g.component_members(c) {
            if v == base {
                out.push_str(&format!("  {v} [shape=box,label=\"{v}*\"];\n"));
            } else {
                out.push_str(&format!("  {v};\n"));
            }
        }
    }
    for &(u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

/// DOT rendering of a complex with edges labeled by hyperplane id.
pub fn to_dot_with_hyperplanes(cx: &Complex, name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("graph {name} {{\n"));
    for v in 0..cx.graph.vertex_count() {
        out.push_str(&format!("  {v};\n"));
    }
    for (h, p) in cx.hyperplanes.iter() {
        for &(u, v) in &p.edges {
            out.push_str(&format!("  {u} -- {v} [label=\"h{h}\"];\n"));
        }
    }
    out.push_str("}\n");
    out
}
