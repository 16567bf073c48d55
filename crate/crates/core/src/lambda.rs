//! Assembly of the full unital compressed commuting graph of the 3x3 matrix
//! ring over GF(p) from the point-line pair graph.
//!
//! Construction steps, in order: (1) the pair graph as the B/E core; (2) one
//! C vertex per triangle of B vertices, joined to its corners (none at
//! p = 2); (3) one F vertex per B-E edge, joined to both endpoints; (4)
//! p(p-1)/2 H vertices per B vertex, each joined only to it; (5) p-1 D
//! vertices per E vertex, likewise; (6) isolated G vertices; (7) one A
//! vertex joined to everything; (8) loops on every vertex.

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{table1, table2, MatrixType, ALL_TYPES};
use crate::delta::{build_delta, DeltaGraph, PairKind};
use crate::error::{Error, Result};
use crate::graph::Csr;
use crate::matrix::{Mat3, SubringKey};

/// Canonical label of a vertex, unique within its type.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum VertexLabel {
    /// The unique type-A vertex.
    Unit,
    /// B/E: index into the pair-graph vertex order.
    Pair(u32),
    /// C: the three B-pair indices of its triangle, ascending.
    Triangle([u32; 3]),
    /// F: the (B-pair, E-pair) edge it is attached to.
    BeEdge(u32, u32),
    /// H/D: anchor pair index and a slot below p(p-1)/2 resp. p-1.
    Anchored { anchor: u32, slot: u32 },
    /// G: a bare group-local index.
    Isolated(u32),
}

impl VertexLabel {
    pub fn render(&self, ty: MatrixType) -> String {
        match self {
            VertexLabel::Unit => "A".to_string(),
            VertexLabel::Pair(i) => format!("{ty}({i})"),
            VertexLabel::Triangle([a, b, c]) => format!("C{{{a},{b},{c}}}"),
            VertexLabel::BeEdge(b, e) => format!("F({b},{e})"),
            VertexLabel::Anchored { anchor, slot } => format!("{ty}({anchor},{slot})"),
            VertexLabel::Isolated(i) => format!("G({i})"),
        }
    }
}

/// Either synthetic labels from the projective construction, or matrix
/// labels (subring keys with their full generator lists) from the oracle.
pub enum LambdaLabels {
    Synthetic {
        delta: DeltaGraph,
        labels: Vec<VertexLabel>,
    },
    Matrices {
        keys: Vec<SubringKey>,
        generators: Vec<Vec<Mat3>>,
    },
}

/// An undirected graph with loops whose vertices carry a type tag (A)-(H)
/// and a canonical label.
pub struct LambdaGraph {
    pub p: u64,
    pub types: Vec<MatrixType>,
    pub adj: Csr,
    pub labels: LambdaLabels,
}

impl LambdaGraph {
    pub fn vertex_count(&self) -> usize {
        self.types.len()
    }

    pub fn type_counts(&self) -> [u64; 8] {
        let mut counts = [0u64; 8];
        for t in &self.types {
            counts[t.index()] += 1;
        }
        counts
    }

    /// Number of single generators of vertex `v`.
    pub fn generator_count_of(&self, v: u32) -> Result<u64> {
        match &self.labels {
            LambdaLabels::Synthetic { .. } => {
                Ok(table1(self.p)?[self.types[v as usize].index()].generator_count)
            }
            LambdaLabels::Matrices { generators, .. } => Ok(generators[v as usize].len() as u64),
        }
    }

    pub fn label_string(&self, v: u32) -> String {
        match &self.labels {
            LambdaLabels::Synthetic { labels, .. } => labels[v as usize].render(self.types[v as usize]),
            LambdaLabels::Matrices { keys, .. } => {
                format!("{}[key dim {}]", self.types[v as usize], keys[v as usize].dim())
            }
        }
    }
}

/// All 3-cliques within the kind-B induced subgraph of the pair graph
/// (loops ignored), each as an ascending triple, enumerated by neighbor
/// intersection over sorted adjacency.
pub fn enumerate_b_triangles(delta: &DeltaGraph) -> Vec<[u32; 3]> {
    let n = delta.vertex_count() as u32;
    let is_b: Vec<bool> = (0..n).map(|v| delta.kind(v) == PairKind::B).collect();
    // B-restricted forward adjacency, sorted
    let b_adj: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|u| {
            if !is_b[u as usize] {
                return Vec::new();
            }
            delta
                .adj()
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&v| v != u && is_b[v as usize])
                .collect()
        })
        .collect();
    let mut triangles: Vec<[u32; 3]> = (0..n)
        .into_par_iter()
        .flat_map_iter(|u| {
            let nu = &b_adj[u as usize];
            let mut local = Vec::new();
            for &v in nu.iter().filter(|&&v| v > u) {
                let nv = &b_adj[v as usize];
                // sorted-list intersection, keeping w > v
                let (mut i, mut j) = (0usize, 0usize);
                while i < nu.len() && j < nv.len() {
                    let (a, b) = (nu[i], nv[j]);
                    if a == b {
                        if a > v {
                            local.push([u, v, a]);
                        }
                        i += 1;
                        j += 1;
                    } else if a < b {
                        i += 1;
                    } else {
                        j += 1;
                    }
                }
            }
            local
        })
        .collect();
    triangles.sort_unstable();
    triangles
}

fn b_e_edges(delta: &DeltaGraph) -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    for u in 0..delta.vertex_count() as u32 {
        if delta.kind(u) != PairKind::B {
            continue;
        }
        for &v in delta.adj().neighbors(u) {
            if delta.kind(v) == PairKind::E {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Build the whole graph for a prime p. Deterministic: identical inputs
/// produce identical vertex orders and adjacency.
pub fn build_lambda(p: u64) -> Result<LambdaGraph> {
    let stats = table1(p)?;
    let delta = build_delta(p)?;
    let n_pairs = delta.vertex_count() as u64;

    let triangles = if p == 2 {
        Vec::new()
    } else {
        enumerate_b_triangles(&delta)
    };
    let be_edges = b_e_edges(&delta);

    let h_per_b = p * (p - 1) / 2;
    let d_per_e = p - 1;
    let b_count = stats[MatrixType::B.index()].vertex_count;
    let e_count = stats[MatrixType::E.index()].vertex_count;
    let g_count = stats[MatrixType::G.index()].vertex_count;

    let base_c = n_pairs;
    let base_f = base_c + triangles.len() as u64;
    let base_h = base_f + be_edges.len() as u64;
    let base_d = base_h + b_count * h_per_b;
    let base_g = base_d + e_count * d_per_e;
    let a_vertex = base_g + g_count;
    let total = a_vertex + 1;
    assert!(total <= u32::MAX as u64, "vertex ids exceed u32");

    // rank of each pair among B pairs resp. E pairs, in pair order
    let mut b_rank = vec![u32::MAX; n_pairs as usize];
    let mut e_rank = vec![u32::MAX; n_pairs as usize];
    let (mut nb, mut ne) = (0u32, 0u32);
    for v in 0..n_pairs as u32 {
        match delta.kind(v) {
            PairKind::B => {
                b_rank[v as usize] = nb;
                nb += 1;
            }
            PairKind::E => {
                e_rank[v as usize] = ne;
                ne += 1;
            }
        }
    }
    assert_eq!(nb as u64, b_count);
    assert_eq!(ne as u64, e_count);

    let mut types = vec![MatrixType::A; total as usize];
    let mut labels = vec![VertexLabel::Unit; total as usize];
    for v in 0..n_pairs as u32 {
        types[v as usize] = match delta.kind(v) {
            PairKind::B => MatrixType::B,
            PairKind::E => MatrixType::E,
        };
        labels[v as usize] = VertexLabel::Pair(v);
    }
    for (k, tri) in triangles.iter().enumerate() {
        let idx = (base_c + k as u64) as usize;
        types[idx] = MatrixType::C;
        labels[idx] = VertexLabel::Triangle(*tri);
    }
    for (k, &(b, e)) in be_edges.iter().enumerate() {
        let idx = (base_f + k as u64) as usize;
        types[idx] = MatrixType::F;
        labels[idx] = VertexLabel::BeEdge(b, e);
    }
    for v in 0..n_pairs as u32 {
        if delta.kind(v) == PairKind::B {
            for slot in 0..h_per_b {
                let idx = (base_h + b_rank[v as usize] as u64 * h_per_b + slot) as usize;
                types[idx] = MatrixType::H;
                labels[idx] = VertexLabel::Anchored { anchor: v, slot: slot as u32 };
            }
        } else {
            for slot in 0..d_per_e {
                let idx = (base_d + e_rank[v as usize] as u64 * d_per_e + slot) as usize;
                types[idx] = MatrixType::D;
                labels[idx] = VertexLabel::Anchored { anchor: v, slot: slot as u32 };
            }
        }
    }
    for k in 0..g_count {
        let idx = (base_g + k) as usize;
        types[idx] = MatrixType::G;
        labels[idx] = VertexLabel::Isolated(k as u32);
    }
    // the A vertex keeps type A / Unit at index a_vertex

    let adj = Csr::from_emitter(total as usize, |f| {
        // loops
        for v in 0..total as u32 {
            f(v, v);
        }
        // pair-graph core (same structural enumeration as build_delta)
        let plane = delta.plane();
        let n = plane.size() as u32;
        for u in 0..n_pairs as u32 {
            let a = delta.pair(u);
            for &p2 in plane.points_on(a.line) {
                for &l2 in plane.lines_through(a.point) {
                    let v = p2 * n + l2;
                    if v > u {
                        f(u, v);
                        f(v, u);
                    }
                }
            }
        }
        // C vertices onto their triangle corners
        for (k, tri) in triangles.iter().enumerate() {
            let c = (base_c + k as u64) as u32;
            for &corner in tri {
                f(c, corner);
                f(corner, c);
            }
        }
        // F vertices onto their edge endpoints
        for (k, &(b, e)) in be_edges.iter().enumerate() {
            let fv = (base_f + k as u64) as u32;
            f(fv, b);
            f(b, fv);
            f(fv, e);
            f(e, fv);
        }
        // H and D vertices onto their anchors
        for v in 0..n_pairs as u32 {
            if delta.kind(v) == PairKind::B {
                for slot in 0..h_per_b {
                    let h = (base_h + b_rank[v as usize] as u64 * h_per_b + slot) as u32;
                    f(h, v);
                    f(v, h);
                }
            } else {
                for slot in 0..d_per_e {
                    let d = (base_d + e_rank[v as usize] as u64 * d_per_e + slot) as u32;
                    f(d, v);
                    f(v, d);
                }
            }
        }
        // the A vertex sees everything
        let a = a_vertex as u32;
        for v in 0..a {
            f(a, v);
            f(v, a);
        }
    });

    Ok(LambdaGraph {
        p,
        types,
        adj,
        labels: LambdaLabels::Synthetic { delta, labels },
    })
}

/// Measured per-type counts and the measured neighborhood matrix.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CountReport {
    pub p: u64,
    pub vertices: u64,
    /// Non-loop undirected edges.
    pub edges: u64,
    pub loops: u64,
    /// Vertex counts, serialized as a map keyed by type letter.
    #[serde(serialize_with = "counts_by_letter")]
    pub counts: [u64; 8],
    /// Entry [x][y]: type-X neighbors of every type-Y vertex.
    pub neighborhood: [[u64; 8]; 8],
}

fn counts_by_letter<S: serde::Serializer>(
    counts: &[u64; 8],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(8))?;
    for ty in ALL_TYPES {
        map.serialize_entry(&ty.letter().to_string(), &counts[ty.index()])?;
    }
    map.end()
}

/// Count vertices and measure each vertex's typed neighborhood profile.
/// Profiles must be constant within a type; a violation is an error naming
/// the offending vertex.
pub fn count_report(g: &LambdaGraph) -> Result<CountReport> {
    let counts = g.type_counts();
    let mut profiles: [Option<[u64; 8]>; 8] = [None; 8];
    for v in 0..g.vertex_count() as u32 {
        let mut profile = [0u64; 8];
        for &w in g.adj.neighbors(v) {
            profile[g.types[w as usize].index()] += 1;
        }
        let slot = &mut profiles[g.types[v as usize].index()];
        match slot {
            None => *slot = Some(profile),
            Some(expected) if *expected == profile => {}
            Some(expected) => {
                return Err(Error::Table2Violated(format!(
                    "vertex {} ({}) has profile {:?}, other type-{} vertices have {:?}",
                    v,
                    g.label_string(v),
                    profile,
                    g.types[v as usize],
                    expected
                )))
            }
        }
    }
    let mut neighborhood = [[0u64; 8]; 8];
    for y in ALL_TYPES {
        if let Some(profile) = profiles[y.index()] {
            for x in 0..8 {
                neighborhood[x][y.index()] = profile[x];
            }
        }
    }
    let (edges, loops) = g.adj.edge_and_loop_counts();
    Ok(CountReport {
        p: g.p,
        vertices: g.vertex_count() as u64,
        edges,
        loops,
        counts,
        neighborhood,
    })
}

/// Check a measured report against the closed-form tables. Types with no
/// vertices (C at p = 2) have no measurable column and are skipped.
pub fn check_against_tables(report: &CountReport) -> Result<()> {
    let t1 = table1(report.p)?;
    let t2 = table2(report.p)?;
    for x in ALL_TYPES {
        if report.counts[x.index()] != t1[x.index()].vertex_count {
            return Err(Error::Table2Violated(format!(
                "type {} has {} vertices, closed form says {}",
                x,
                report.counts[x.index()],
                t1[x.index()].vertex_count
            )));
        }
    }
    for y in ALL_TYPES {
        if report.counts[y.index()] == 0 {
            continue;
        }
        for x in ALL_TYPES {
            let measured = report.neighborhood[x.index()][y.index()];
            let expected = t2[x.index()][y.index()];
            if measured != expected {
                return Err(Error::Table2Violated(format!(
                    "N({x},{y}) measured {measured}, closed form {expected}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_counts() {
        // Triangles of B vertices exist at every p (one per non-collinear
        // point triple); only their C vertices are absent at p = 2.
        let d2 = build_delta(2).unwrap();
        assert_eq!(enumerate_b_triangles(&d2).len(), 28);

        let d3 = build_delta(3).unwrap();
        let tris = enumerate_b_triangles(&d3);
        assert_eq!(tris.len(), 234);
        assert_eq!(tris.len() as u64, table1(3).unwrap()[MatrixType::C.index()].vertex_count);
    }

    #[test]
    fn triangle_closed_form_from_p3() {
        for p in [3u64, 5] {
            let d = build_delta(p).unwrap();
            let expected = (p * p + p + 1) * p.pow(3) * (p + 1) / 6;
            assert_eq!(enumerate_b_triangles(&d).len() as u64, expected);
        }
    }

    #[test]
    fn triangles_match_brute_triples_p3() {
        // Independent check: test all B-vertex triples directly.
        let d = build_delta(3).unwrap();
        let n = d.vertex_count() as u32;
        let b: Vec<u32> = (0..n).filter(|&v| d.kind(v) == PairKind::B).collect();
        let mut brute = Vec::new();
        for i in 0..b.len() {
            for j in (i + 1)..b.len() {
                if !d.adj().has_edge(b[i], b[j]) {
                    continue;
                }
                for k in (j + 1)..b.len() {
                    if d.adj().has_edge(b[i], b[k]) && d.adj().has_edge(b[j], b[k]) {
                        brute.push([b[i], b[j], b[k]]);
                    }
                }
            }
        }
        assert_eq!(enumerate_b_triangles(&d), brute);
    }

    #[test]
    fn lambda_vertex_totals() {
        let g2 = build_lambda(2).unwrap();
        assert_eq!(g2.vertex_count(), 191);

        let g3 = build_lambda(3).unwrap();
        assert_eq!(g3.vertex_count(), 1471);
        let counts = g3.type_counts();
        assert_eq!(counts[MatrixType::B.index()], 117);
        assert_eq!(counts[MatrixType::E.index()], 52);
        assert_eq!(counts[MatrixType::F.index()], 468);
    }

    #[test]
    fn be_edge_count_equals_f_count() {
        for p in [2u64, 3, 5] {
            let d = build_delta(p).unwrap();
            let n = p * p + p + 1;
            assert_eq!(b_e_edges(&d).len() as u64, n * p * p * (p + 1));
        }
    }

    #[test]
    fn f_vertex_degree_p2() {
        // every F vertex sees exactly {A, its B, its E, itself}
        let g = build_lambda(2).unwrap();
        for v in 0..g.vertex_count() as u32 {
            if g.types[v as usize] == MatrixType::F {
                assert_eq!(g.adj.degree(v), 4);
            }
        }
    }

    #[test]
    fn reports_match_closed_forms() {
        for p in [2u64, 3] {
            let g = build_lambda(p).unwrap();
            let report = count_report(&g).unwrap();
            check_against_tables(&report).unwrap();
            assert_eq!(report.neighborhood[MatrixType::E.index()][MatrixType::B.index()], p + 1);
            if p == 3 {
                assert_eq!(
                    report.neighborhood[MatrixType::B.index()][MatrixType::B.index()],
                    13
                );
            }
        }
    }

    #[test]
    fn attachment_types_induce_only_loops() {
        // no edges among {C, D, F, G, H} vertices besides loops
        let g = build_lambda(3).unwrap();
        use MatrixType::*;
        let attached = [C, D, F, G, H];
        for v in 0..g.vertex_count() as u32 {
            if !attached.contains(&g.types[v as usize]) {
                continue;
            }
            for &w in g.adj.neighbors(v) {
                if w != v {
                    assert!(!attached.contains(&g.types[w as usize]));
                }
            }
        }
    }

    #[test]
    fn deterministic_rebuild() {
        let a = build_lambda(3).unwrap();
        let b = build_lambda(3).unwrap();
        assert_eq!(a.adj, b.adj);
        assert_eq!(a.types, b.types);
    }

    #[test]
    fn count_report_rejects_nonuniform_profiles() {
        // dropping one F-B edge makes that F vertex's profile differ from
        // its peers
        let g = build_lambda(2).unwrap();
        let f_vertex = (0..g.vertex_count() as u32)
            .find(|&v| g.types[v as usize] == MatrixType::F)
            .unwrap();
        let b_neighbor = *g
            .adj
            .neighbors(f_vertex)
            .iter()
            .find(|&&w| g.types[w as usize] == MatrixType::B)
            .unwrap();
        let lists: Vec<Vec<u32>> = (0..g.vertex_count() as u32)
            .map(|v| {
                g.adj
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| {
                        !(v == f_vertex && w == b_neighbor)
                            && !(v == b_neighbor && w == f_vertex)
                    })
                    .collect()
            })
            .collect();
        let corrupted = LambdaGraph {
            p: g.p,
            types: g.types.clone(),
            adj: crate::graph::Csr::from_lists(lists),
            labels: g.labels,
        };
        let err = count_report(&corrupted).unwrap_err();
        assert!(matches!(err, Error::Table2Violated(_)), "{err}");
    }
}
