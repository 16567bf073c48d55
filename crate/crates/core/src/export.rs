//! Graph serialization: DOT, GraphML and edge-list writers, an edge-list
//! reader for round-tripping, and the incidence-matrix text formats.

use std::io::{BufRead, Write};

use serde::Serialize;

use crate::classify::MatrixType;
use crate::delta::{DeltaGraph, PairKind};
use crate::error::{Error, Result};
use crate::gamma::{GammaGraph, GammaRepr};
use crate::lambda::LambdaGraph;
use crate::projective::IncidenceMatrix;

/// Fixed vertex colors by type, for DOT output.
pub fn type_color(ty: MatrixType) -> &'static str {
    match ty {
        MatrixType::A => "#999999",
        MatrixType::B => "#e41a1c",
        MatrixType::C => "#377eb8",
        MatrixType::D => "#4daf4a",
        MatrixType::E => "#984ea3",
        MatrixType::F => "#ff7f00",
        MatrixType::G => "#d2b48c",
        MatrixType::H => "#a65628",
    }
}

fn write_dot<W: Write>(
    w: &mut W,
    name: &str,
    n: u64,
    ty: impl Fn(u64) -> MatrixType,
    label: impl Fn(u64) -> String,
    edges: impl Iterator<Item = (u64, u64)>,
) -> Result<()> {
    writeln!(w, "graph {name} {{")?;
    writeln!(w, "  node [style=filled];")?;
    for v in 0..n {
        writeln!(
            w,
            "  v{v} [label=\"{}\", fillcolor=\"{}\"];",
            label(v),
            type_color(ty(v))
        )?;
    }
    for (u, v) in edges {
        writeln!(w, "  v{u} -- v{v};")?;
    }
    writeln!(w, "}}")?;
    Ok(())
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn write_graphml<W: Write>(
    w: &mut W,
    name: &str,
    n: u64,
    ty: impl Fn(u64) -> MatrixType,
    label: impl Fn(u64) -> String,
    edges: impl Iterator<Item = (u64, u64)>,
) -> Result<()> {
    writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        w,
        r#"<graphml xmlns="http://graphml.graphdrawing.org/xmlns">"#
    )?;
    writeln!(
        w,
        r#"  <key id="type" for="node" attr.name="type" attr.type="string"/>"#
    )?;
    writeln!(
        w,
        r#"  <key id="label" for="node" attr.name="label" attr.type="string"/>"#
    )?;
    writeln!(w, r#"  <graph id="{name}" edgedefault="undirected">"#)?;
    for v in 0..n {
        writeln!(
            w,
            r#"    <node id="n{v}"><data key="type">{}</data><data key="label">{}</data></node>"#,
            ty(v),
            xml_escape(&label(v))
        )?;
    }
    for (u, v) in edges {
        writeln!(w, r#"    <edge source="n{u}" target="n{v}"/>"#)?;
    }
    writeln!(w, "  </graph>")?;
    writeln!(w, "</graphml>")?;
    Ok(())
}

/// Edge list: a `vertices <N>` header, then one `u v` line per undirected
/// edge with u <= v, ascending; loops appear as `v v`.
fn write_edgelist<W: Write>(
    w: &mut W,
    n: u64,
    edges: impl Iterator<Item = (u64, u64)>,
) -> Result<()> {
    writeln!(w, "vertices {n}")?;
    for (u, v) in edges {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

/// Parse the output of the edge-list writer.
pub fn read_edgelist<R: BufRead>(r: R) -> Result<(u64, Vec<(u64, u64)>)> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::BadEdgeList("empty input".into()))??;
    let n: u64 = header
        .strip_prefix("vertices ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::BadEdgeList(format!("bad header {header:?}")))?;
    let mut edges = Vec::new();
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let (a, b) = (it.next(), it.next());
        match (a.and_then(|s| s.parse().ok()), b.and_then(|s| s.parse().ok())) {
            (Some(u), Some(v)) if u < n && v < n => edges.push((u, v)),
            _ => return Err(Error::BadEdgeList(format!("bad edge line {line:?}"))),
        }
    }
    Ok((n, edges))
}

/// Adjacency lists (sorted, loops once) from a decoded edge list.
pub fn edges_to_adjacency(n: u64, edges: &[(u64, u64)]) -> Vec<Vec<u64>> {
    let mut adj = vec![Vec::new(); n as usize];
    for &(u, v) in edges {
        adj[u as usize].push(v);
        if u != v {
            adj[v as usize].push(u);
        }
    }
    for l in adj.iter_mut() {
        l.sort_unstable();
    }
    adj
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GraphFormat {
    Dot,
    GraphMl,
    EdgeList,
}

pub fn export_lambda<W: Write>(g: &LambdaGraph, format: GraphFormat, w: &mut W) -> Result<()> {
    let n = g.vertex_count() as u64;
    let name = format!("lambda_p{}", g.p);
    let ty = |v: u64| g.types[v as usize];
    let label = |v: u64| g.label_string(v as u32);
    let edges = g.adj.edges().map(|(u, v)| (u as u64, v as u64));
    match format {
        GraphFormat::Dot => write_dot(w, &name, n, ty, label, edges),
        GraphFormat::GraphMl => write_graphml(w, &name, n, ty, label, edges),
        GraphFormat::EdgeList => write_edgelist(w, n, edges),
    }
}

pub fn export_delta<W: Write>(d: &DeltaGraph, format: GraphFormat, w: &mut W) -> Result<()> {
    let n = d.vertex_count() as u64;
    let name = format!("delta_p{}", d.plane().p());
    let ty = |v: u64| match d.kind(v as u32) {
        PairKind::B => MatrixType::B,
        PairKind::E => MatrixType::E,
    };
    let label = |v: u64| {
        let pair = d.pair(v as u32);
        format!(
            "{}({},{})",
            match d.kind(v as u32) {
                PairKind::B => 'B',
                PairKind::E => 'E',
            },
            pair.point,
            pair.line
        )
    };
    let edges = d.adj().edges().map(|(u, v)| (u as u64, v as u64));
    match format {
        GraphFormat::Dot => write_dot(w, &name, n, ty, label, edges),
        GraphFormat::GraphMl => write_graphml(w, &name, n, ty, label, edges),
        GraphFormat::EdgeList => write_edgelist(w, n, edges),
    }
}

pub fn export_gamma<W: Write>(g: &GammaGraph, format: GraphFormat, w: &mut W) -> Result<()> {
    let n = g.vertex_count();
    let name = format!("gamma_p{}", g.p);
    let types = g.slot_types();
    let ty = |v: u64| types[v as usize];
    let label = |v: u64| match &g.repr {
        GammaRepr::Explicit { mats, .. } => format!("M{}", mats[v as usize].encode()),
        GammaRepr::Compressed { .. } => format!("{}s{v}", types[v as usize]),
    };
    match format {
        GraphFormat::Dot => write_dot(w, &name, n, ty, label, g.edges()),
        GraphFormat::GraphMl => write_graphml(w, &name, n, ty, label, g.edges()),
        GraphFormat::EdgeList => write_edgelist(w, n, g.edges()),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IncidenceFormat {
    Text,
    Csv,
    Pbm,
}

/// Print the incidence matrix as 0/1 rows: space-separated (text), comma
/// separated (csv), or as a portable bitmap (pbm).
pub fn export_incidence<W: Write>(
    t: &IncidenceMatrix,
    format: IncidenceFormat,
    w: &mut W,
) -> Result<()> {
    let n = t.size();
    if format == IncidenceFormat::Pbm {
        writeln!(w, "P1")?;
        writeln!(w, "{n} {n}")?;
    }
    let sep = match format {
        IncidenceFormat::Csv => ",",
        _ => " ",
    };
    for r in 0..n {
        let row: Vec<String> = t.row(r).iter().map(|b| b.to_string()).collect();
        writeln!(w, "{}", row.join(sep))?;
    }
    Ok(())
}

/// Structure summary of a pair graph, for JSON output.
#[derive(Serialize)]
pub struct DeltaStats {
    pub p: u64,
    pub vertices: u64,
    pub b_vertices: u64,
    pub e_vertices: u64,
    pub edges: u64,
    pub loops: u64,
}

pub fn delta_stats(d: &DeltaGraph) -> DeltaStats {
    let (edges, loops) = d.adj().edge_and_loop_counts();
    let b = (0..d.vertex_count() as u32)
        .filter(|&v| d.kind(v) == PairKind::B)
        .count() as u64;
    DeltaStats {
        p: d.plane().p(),
        vertices: d.vertex_count() as u64,
        b_vertices: b,
        e_vertices: d.vertex_count() as u64 - b,
        edges,
        loops,
    }
}
