//! Brute-force ground truth: the compressed and ordinary commuting graphs
//! built directly from their definitions by enumerating the full matrix
//! space, plus comparisons against the synthetic builders.
//!
//! Matrices are enumerated as the integers 0..p^9 in base p with row-major
//! digit fill, so sweeps are reproducible and trivially partitionable.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{centralizer_basis, centralizer_elements, classify_type, MatrixType};
use crate::delta::phi;
use crate::error::{Error, Result};
use crate::field::{Fe, Fp};
use crate::gamma::{blow_up, GammaGraph, GammaRepr};
use crate::graph::Csr;
use crate::lambda::{build_lambda, LambdaGraph, LambdaLabels, VertexLabel};
use crate::linalg::GfMat;
use crate::matrix::{subring_key, Mat3, SubringKey};

/// Outcome of a verification run.
#[derive(Clone, Debug, Serialize)]
pub enum Verdict {
    Match,
    Mismatch { detail: String },
}

impl Verdict {
    pub fn is_match(&self) -> bool {
        matches!(self, Verdict::Match)
    }

    pub fn detail(&self) -> Option<&str> {
        match self {
            Verdict::Match => None,
            Verdict::Mismatch { detail } => Some(detail),
        }
    }
}

/// Entry-wise early-exit commutation test.
fn commutes(a: &Mat3, b: &Mat3) -> bool {
    for r in 0..3 {
        for c in 0..3 {
            let ab = a.at(r, 0) * b.at(0, c) + a.at(r, 1) * b.at(1, c) + a.at(r, 2) * b.at(2, c);
            let ba = b.at(r, 0) * a.at(0, c) + b.at(r, 1) * a.at(1, c) + b.at(r, 2) * a.at(2, c);
            if ab != ba {
                return false;
            }
        }
    }
    true
}

/// Enumerate all p^9 matrices, group them by generated subring, and build
/// the compressed commuting graph from the definition: one vertex per key,
/// edges between keys whose representatives commute, loops everywhere.
/// Vertices are sorted by key, generators by enumeration order.
pub fn brute_lambda(p: u64) -> Result<LambdaGraph> {
    if !matches!(p, 2 | 3 | 5) {
        return Err(Error::OracleRefused {
            what: "compressed-graph enumeration",
            p,
            supported: "2, 3, 5",
        });
    }
    let fp = Fp::new(p)?;
    let total = p.pow(9);
    // sweep disjoint code ranges in parallel, then merge in range order so
    // generator lists keep the global enumeration order
    let ranges: Vec<(u64, u64)> = (0..total)
        .step_by(1 << 16)
        .map(|start| (start, total.min(start + (1 << 16))))
        .collect();
    let locals: Vec<HashMap<SubringKey, Vec<Mat3>>> = ranges
        .into_par_iter()
        .map(|(start, end)| {
            let mut local: HashMap<SubringKey, Vec<Mat3>> = HashMap::new();
            for code in start..end {
                let m = Mat3::decode(&fp, code);
                local.entry(subring_key(&m)).or_default().push(m);
            }
            local
        })
        .collect();
    let mut groups: HashMap<SubringKey, Vec<Mat3>> = HashMap::new();
    for local in locals {
        for (key, mut gens) in local {
            groups.entry(key).or_default().append(&mut gens);
        }
    }
    let mut entries: Vec<(SubringKey, Vec<Mat3>)> = groups.into_iter().collect();
    entries.sort_by_key(|(k, _)| *k);

    let keys: Vec<SubringKey> = entries.iter().map(|(k, _)| *k).collect();
    let generators: Vec<Vec<Mat3>> = entries.into_iter().map(|(_, g)| g).collect();
    let reps: Vec<Mat3> = generators.iter().map(|g| g[0]).collect();
    let types: Vec<MatrixType> = reps.iter().map(classify_type).collect();

    let n = keys.len();
    let upper: Vec<Vec<u32>> = (0..n as u32)
        .into_par_iter()
        .map(|u| {
            let a = &reps[u as usize];
            ((u + 1)..n as u32)
                .filter(|&v| commutes(a, &reps[v as usize]))
                .collect()
        })
        .collect();
    let mut lists: Vec<Vec<u32>> = (0..n as u32).map(|v| vec![v]).collect();
    for (u, vs) in upper.into_iter().enumerate() {
        for v in vs {
            lists[u].push(v);
            lists[v as usize].push(u as u32);
        }
    }
    Ok(LambdaGraph {
        p,
        types,
        adj: Csr::from_lists(lists),
        labels: LambdaLabels::Matrices { keys, generators },
    })
}

/// Result of aligning the synthetic graph with the oracle.
pub enum LambdaComparison {
    /// The explicit isomorphism, as a map from oracle vertex to synthetic
    /// vertex.
    Match { brute_to_synthetic: Vec<u32> },
    Mismatch { detail: String },
}

impl LambdaComparison {
    pub fn verdict(&self) -> Verdict {
        match self {
            LambdaComparison::Match { .. } => Verdict::Match,
            LambdaComparison::Mismatch { detail } => Verdict::Mismatch {
                detail: detail.clone(),
            },
        }
    }
}

fn typed_neighbors(g: &LambdaGraph, v: u32, ty: MatrixType) -> Vec<u32> {
    g.adj
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&w| w != v && g.types[w as usize] == ty)
        .collect()
}

/// Construct the explicit isomorphism between a synthetic and an oracle
/// build: B/E vertices align through their point-line pairs, C through the
/// triangle of its B neighbors, F through its (B, E) neighbor pair, H and D
/// within anchor groups by any order-preserving bijection, G arbitrarily,
/// A to A. Cardinalities are compared before any mapping is attempted.
pub fn compare_lambda(synthetic: &LambdaGraph, brute: &LambdaGraph) -> Result<LambdaComparison> {
    assert_eq!(synthetic.p, brute.p, "graphs built over different primes");
    let LambdaLabels::Synthetic { delta, labels } = &synthetic.labels else {
        panic!("compare_lambda: first argument must be the synthetic build");
    };
    let LambdaLabels::Matrices { keys, .. } = &brute.labels else {
        panic!("compare_lambda: second argument must be the oracle build");
    };

    let syn_counts = synthetic.type_counts();
    let brute_counts = brute.type_counts();
    if syn_counts != brute_counts {
        return Ok(LambdaComparison::Mismatch {
            detail: format!(
                "cardinality mismatch: per-type counts (A..H) synthetic {syn_counts:?} vs oracle {brute_counts:?}"
            ),
        });
    }

    // synthetic lookup tables by label
    let mut tri_map: HashMap<[u32; 3], u32> = HashMap::new();
    let mut be_map: HashMap<(u32, u32), u32> = HashMap::new();
    let mut h_map: HashMap<(u32, u32), u32> = HashMap::new();
    let mut d_map: HashMap<(u32, u32), u32> = HashMap::new();
    let mut g_indices: Vec<u32> = Vec::new();
    let mut a_syn = 0u32;
    for (v, label) in labels.iter().enumerate() {
        let v = v as u32;
        match (synthetic.types[v as usize], label) {
            (MatrixType::A, VertexLabel::Unit) => a_syn = v,
            (_, VertexLabel::Pair(i)) => debug_assert_eq!(*i, v),
            (_, VertexLabel::Triangle(t)) => {
                tri_map.insert(*t, v);
            }
            (_, VertexLabel::BeEdge(b, e)) => {
                be_map.insert((*b, *e), v);
            }
            (MatrixType::H, VertexLabel::Anchored { anchor, slot }) => {
                h_map.insert((*anchor, *slot), v);
            }
            (MatrixType::D, VertexLabel::Anchored { anchor, slot }) => {
                d_map.insert((*anchor, *slot), v);
            }
            (_, VertexLabel::Isolated(_)) => g_indices.push(v),
            other => panic!("inconsistent synthetic labeling: {other:?}"),
        }
    }

    let plane = delta.plane();
    let n = brute.vertex_count();
    let mismatch = |detail: String| Ok(LambdaComparison::Mismatch { detail });

    // pass 1: pair index of every oracle B/E vertex
    let mut pair_of = vec![u32::MAX; n];
    for v in 0..n as u32 {
        let ty = brute.types[v as usize];
        if ty == MatrixType::B || ty == MatrixType::E {
            pair_of[v as usize] = phi(plane, &keys[v as usize])?.index(plane);
        }
    }

    // pass 2: full vertex mapping
    let mut mapping = vec![u32::MAX; n];
    let mut h_slots: HashMap<u32, u32> = HashMap::new();
    let mut d_slots: HashMap<u32, u32> = HashMap::new();
    let mut g_cursor = 0usize;
    for v in 0..n as u32 {
        let ty = brute.types[v as usize];
        let target = match ty {
            MatrixType::A => a_syn,
            MatrixType::B | MatrixType::E => pair_of[v as usize],
            MatrixType::C => {
                let bs = typed_neighbors(brute, v, MatrixType::B);
                if bs.len() != 3 {
                    return mismatch(format!(
                        "oracle C vertex {v} has {} B neighbors instead of 3",
                        bs.len()
                    ));
                }
                let mut tri = [
                    pair_of[bs[0] as usize],
                    pair_of[bs[1] as usize],
                    pair_of[bs[2] as usize],
                ];
                tri.sort_unstable();
                match tri_map.get(&tri) {
                    Some(&s) => s,
                    None => {
                        return mismatch(format!(
                            "oracle C vertex {v} sits on B-triangle {tri:?} which the synthetic graph lacks"
                        ))
                    }
                }
            }
            MatrixType::F => {
                let bs = typed_neighbors(brute, v, MatrixType::B);
                let es = typed_neighbors(brute, v, MatrixType::E);
                if bs.len() != 1 || es.len() != 1 {
                    return mismatch(format!(
                        "oracle F vertex {v} has ({}, {}) (B, E) neighbors instead of (1, 1)",
                        bs.len(),
                        es.len()
                    ));
                }
                let key = (pair_of[bs[0] as usize], pair_of[es[0] as usize]);
                match be_map.get(&key) {
                    Some(&s) => s,
                    None => {
                        return mismatch(format!(
                            "oracle F vertex {v} sits on B-E edge {key:?} which the synthetic graph lacks"
                        ))
                    }
                }
            }
            MatrixType::H | MatrixType::D => {
                let anchor_ty = if ty == MatrixType::H {
                    MatrixType::B
                } else {
                    MatrixType::E
                };
                let anchors = typed_neighbors(brute, v, anchor_ty);
                if anchors.len() != 1 {
                    return mismatch(format!(
                        "oracle {ty} vertex {v} has {} {anchor_ty} neighbors instead of 1",
                        anchors.len()
                    ));
                }
                let anchor = pair_of[anchors[0] as usize];
                let (slots, map) = if ty == MatrixType::H {
                    (&mut h_slots, &h_map)
                } else {
                    (&mut d_slots, &d_map)
                };
                let slot = slots.entry(anchor).or_insert(0);
                let key = (anchor, *slot);
                *slot += 1;
                match map.get(&key) {
                    Some(&s) => s,
                    None => {
                        return mismatch(format!(
                            "oracle {ty} vertex {v} overflows the synthetic {ty} group at pair {anchor}"
                        ))
                    }
                }
            }
            MatrixType::G => {
                let s = g_indices[g_cursor];
                g_cursor += 1;
                s
            }
        };
        mapping[v as usize] = target;
    }

    // the mapping must be a bijection
    let mut inverse = vec![u32::MAX; n];
    for (v, &s) in mapping.iter().enumerate() {
        if inverse[s as usize] != u32::MAX {
            return mismatch(format!(
                "mapping is not injective: oracle vertices {} and {v} both land on {}",
                inverse[s as usize],
                synthetic.label_string(s)
            ));
        }
        inverse[s as usize] = v as u32;
    }

    // adjacency must transport exactly
    for s in 0..n as u32 {
        let v = inverse[s as usize];
        let mut mapped: Vec<u32> = brute
            .adj
            .neighbors(v)
            .iter()
            .map(|&w| mapping[w as usize])
            .collect();
        mapped.sort_unstable();
        let expected = synthetic.adj.neighbors(s);
        if mapped != expected {
            // name the first divergent neighbor
            for (&m, &e) in mapped.iter().zip(expected.iter()) {
                if m != e {
                    let (who, verb) = if m < e { (m, "lacks") } else { (e, "adds") };
                    return mismatch(format!(
                        "adjacency mismatch at {}: the synthetic graph {} the edge to {}",
                        synthetic.label_string(s),
                        verb,
                        synthetic.label_string(who)
                    ));
                }
            }
            let who = if mapped.len() > expected.len() {
                synthetic.label_string(*mapped.last().unwrap())
            } else {
                synthetic.label_string(*expected.last().unwrap())
            };
            return mismatch(format!(
                "adjacency mismatch at {}: degree {} vs {} (last differing neighbor {who})",
                synthetic.label_string(s),
                mapped.len(),
                expected.len(),
            ));
        }
    }

    Ok(LambdaComparison::Match {
        brute_to_synthetic: mapping,
    })
}

/// The ordinary commuting graph from the definition: all non-central
/// matrices, an edge exactly when two distinct matrices commute. At p = 2
/// the adjacency is tested pairwise; at p = 3 each matrix's neighbors are
/// enumerated as its centralizer minus scalars and itself.
pub fn brute_gamma(p: u64) -> Result<GammaGraph> {
    match p {
        2 => {
            let fp = Fp::new(p)?;
            let mats: Vec<Mat3> = (0..512)
                .map(|c| Mat3::decode(&fp, c))
                .filter(|m| !m.is_scalar())
                .collect();
            let n = mats.len();
            let upper: Vec<Vec<u32>> = (0..n as u32)
                .map(|u| {
                    ((u + 1)..n as u32)
                        .filter(|&v| commutes(&mats[u as usize], &mats[v as usize]))
                        .collect()
                })
                .collect();
            let mut lists: Vec<Vec<u32>> = vec![Vec::new(); n];
            for (u, vs) in upper.into_iter().enumerate() {
                for v in vs {
                    lists[u].push(v);
                    lists[v as usize].push(u as u32);
                }
            }
            Ok(GammaGraph {
                p,
                repr: GammaRepr::Explicit {
                    mats,
                    adj: Csr::from_lists(lists),
                },
            })
        }
        3 => {
            let fp = Fp::new(p)?;
            let total = p.pow(9);
            let mut idx_of = vec![u32::MAX; total as usize];
            let mut mats = Vec::with_capacity(total as usize - p as usize);
            for code in 0..total {
                let m = Mat3::decode(&fp, code);
                if !m.is_scalar() {
                    idx_of[code as usize] = mats.len() as u32;
                    mats.push(m);
                }
            }
            let lists: Vec<Vec<u32>> = mats
                .par_iter()
                .map(|m| {
                    centralizer_elements(m)
                        .into_iter()
                        .filter(|c| !c.is_scalar() && c != m)
                        .map(|c| idx_of[c.encode() as usize])
                        .collect()
                })
                .collect();
            Ok(GammaGraph {
                p,
                repr: GammaRepr::Explicit {
                    mats,
                    adj: Csr::from_lists(lists),
                },
            })
        }
        _ => Err(Error::OracleRefused {
            what: "commuting-graph enumeration",
            p,
            supported: "2, 3",
        }),
    }
}

/// Sorted degree sequence of the definitional commuting graph, computed
/// per matrix from its centralizer dimension: degree = |C(A)| - p - 1.
pub fn brute_gamma_degrees(p: u64) -> Result<Vec<u64>> {
    if !matches!(p, 2 | 3 | 5) {
        return Err(Error::OracleRefused {
            what: "degree-sequence enumeration",
            p,
            supported: "2, 3, 5",
        });
    }
    let fp = Fp::new(p)?;
    let total = p.pow(9);
    let mut degrees: Vec<u64> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let m = Mat3::decode(&fp, code);
            if m.is_scalar() {
                return None;
            }
            let nullity = centralizer_basis(&m).len() as u32;
            Some(p.pow(nullity) - p - 1)
        })
        .collect();
    degrees.sort_unstable();
    Ok(degrees)
}

/// Equality of two matrix-labeled commuting graphs, in matrix labels (not
/// up to isomorphism). Returns the first difference.
pub fn labeled_gamma_equal(a: &GammaGraph, b: &GammaGraph) -> Result<Option<String>> {
    let (am, aadj) = a.explicit()?;
    let (bm, badj) = b.explicit()?;
    let a_codes: Vec<u64> = am.iter().map(Mat3::encode).collect();
    let b_index: HashMap<u64, u32> = bm
        .iter()
        .enumerate()
        .map(|(i, m)| (m.encode(), i as u32))
        .collect();
    if am.len() != bm.len() {
        return Ok(Some(format!(
            "vertex counts differ: {} vs {}",
            am.len(),
            bm.len()
        )));
    }
    for (i, code) in a_codes.iter().enumerate() {
        let Some(&j) = b_index.get(code) else {
            return Ok(Some(format!("matrix {code} only present on one side")));
        };
        let mut an: Vec<u64> = aadj
            .neighbors(i as u32)
            .iter()
            .map(|&w| a_codes[w as usize])
            .collect();
        let mut bn: Vec<u64> = badj
            .neighbors(j)
            .iter()
            .map(|&w| bm[w as usize].encode())
            .collect();
        an.sort_unstable();
        bn.sort_unstable();
        if an != bn {
            return Ok(Some(format!(
                "neighborhoods of matrix {code} differ: {} vs {} entries",
                an.len(),
                bn.len()
            )));
        }
    }
    Ok(None)
}

/// Check a star shape on the compressed graph of the 2x2 matrix ring,
/// built by brute force over all p^4 matrices: a single center (the
/// scalars) adjacent to everything, and p^2 + p + 1 leaves adjacent only
/// to the center and themselves. Every compressed edge is additionally
/// checked to be independent of the choice of generators.
pub fn m2_star_check(p: u64) -> Result<Verdict> {
    if !matches!(p, 2 | 3 | 5) {
        return Err(Error::OracleRefused {
            what: "2x2 star check",
            p,
            supported: "2, 3, 5",
        });
    }
    let fp = Fp::new(p)?;

    #[derive(Clone, Copy)]
    struct Mat2([Fe; 4]);
    impl Mat2 {
        fn decode(fp: &Fp, mut code: u64) -> Mat2 {
            let mut e = [fp.zero(); 4];
            for slot in e.iter_mut() {
                *slot = fp.el(code % fp.p());
                code /= fp.p();
            }
            Mat2(e)
        }
        fn mul(&self, o: &Mat2) -> [Fe; 4] {
            let a = &self.0;
            let b = &o.0;
            [
                a[0] * b[0] + a[1] * b[2],
                a[0] * b[1] + a[1] * b[3],
                a[2] * b[0] + a[3] * b[2],
                a[2] * b[1] + a[3] * b[3],
            ]
        }
        fn commutes(&self, o: &Mat2) -> bool {
            self.mul(o) == o.mul(self)
        }
    }

    // key = RREF basis of span{vec(I), vec(A)} in GF(p)^4
    let key_of = |m: &Mat2| -> (u8, [[u8; 4]; 2]) {
        let id = vec![fp.one(), fp.zero(), fp.zero(), fp.one()];
        let basis = GfMat::from_rows(vec![id, m.0.to_vec()]).row_space_basis();
        let mut rows = [[0u8; 4]; 2];
        for (r, vec) in basis.iter().enumerate() {
            for (c, fe) in vec.iter().enumerate() {
                rows[r][c] = fe.raw();
            }
        }
        (basis.len() as u8, rows)
    };

    let mut groups: std::collections::BTreeMap<(u8, [[u8; 4]; 2]), Vec<Mat2>> = Default::default();
    for code in 0..p.pow(4) {
        let m = Mat2::decode(&fp, code);
        groups.entry(key_of(&m)).or_default().push(m);
    }
    let vertices: Vec<(u8, Vec<Mat2>)> = groups
        .into_iter()
        .map(|((dim, _), gens)| (dim, gens))
        .collect();
    let n = vertices.len();
    let expected_leaves = p * p + p + 1;
    if n as u64 != expected_leaves + 1 {
        return Ok(Verdict::Mismatch {
            detail: format!("expected {} vertices, found {n}", expected_leaves + 1),
        });
    }

    // adjacency with a well-definedness sweep over all generator pairs
    let mut adjacent = vec![false; n * n];
    for u in 0..n {
        for v in u..n {
            let expected = vertices[u].1[0].commutes(&vertices[v].1[0]);
            for a in &vertices[u].1 {
                for b in &vertices[v].1 {
                    if a.commutes(b) != expected {
                        return Ok(Verdict::Mismatch {
                            detail: format!(
                                "edge between vertices {u} and {v} depends on the generator choice"
                            ),
                        });
                    }
                }
            }
            adjacent[u * n + v] = expected;
            adjacent[v * n + u] = expected;
        }
    }

    let centers: Vec<usize> = (0..n).filter(|&v| vertices[v].0 == 1).collect();
    let [center] = centers.as_slice() else {
        return Ok(Verdict::Mismatch {
            detail: format!("expected one scalar vertex, found {}", centers.len()),
        });
    };
    for v in 0..n {
        if !adjacent[center * n + v] {
            return Ok(Verdict::Mismatch {
                detail: format!("center is not adjacent to vertex {v}"),
            });
        }
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if u != *center && v != *center && adjacent[u * n + v] {
                return Ok(Verdict::Mismatch {
                    detail: format!("leaves {u} and {v} are adjacent; not a star"),
                });
            }
        }
    }
    Ok(Verdict::Match)
}

/// A machine-readable verification outcome.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub p: u64,
    pub graph: String,
    pub matched: bool,
    pub summary: String,
    pub detail: Option<String>,
}

impl VerifyReport {
    fn of(p: u64, graph: &str, verdict: Verdict, summary: String) -> VerifyReport {
        VerifyReport {
            p,
            graph: graph.to_string(),
            matched: verdict.is_match(),
            summary,
            detail: verdict.detail().map(str::to_string),
        }
    }
}

/// Build both the synthetic and the oracle compressed graph and construct
/// the explicit isomorphism.
pub fn verify_lambda(p: u64) -> Result<VerifyReport> {
    let synthetic = build_lambda(p)?;
    let brute = brute_lambda(p)?;
    let outcome = compare_lambda(&synthetic, &brute)?;
    let summary = format!(
        "{} vertices, explicit isomorphism {}",
        synthetic.vertex_count(),
        if outcome.verdict().is_match() {
            "constructed"
        } else {
            "failed"
        }
    );
    Ok(VerifyReport::of(p, "lambda", outcome.verdict(), summary))
}

fn census_string(g: &GammaGraph) -> String {
    g.component_census()
        .iter()
        .map(|(size, clique, count)| {
            format!("{count} x {}{size}", if *clique { "K" } else { "size " })
        })
        .collect::<Vec<_>>()
        .join(", ")
}

/// Verify the ordinary commuting graph against the oracle. At p = 2 and
/// p = 3 the matrix-labeled blow-up is compared edge-for-edge with the
/// definitional graph; p = 3 additionally samples random matrix pairs
/// against the synthetic adjacency, and p = 5 compares degree sequences
/// only.
pub fn verify_gamma(p: u64) -> Result<VerifyReport> {
    match p {
        2 | 3 => {
            let brute = brute_gamma(p)?;
            let expanded = blow_up(&brute_lambda(p)?)?;
            if let Some(diff) = labeled_gamma_equal(&expanded, &brute)? {
                return Ok(VerifyReport::of(
                    p,
                    "gamma",
                    Verdict::Mismatch { detail: diff },
                    "labeled comparison failed".into(),
                ));
            }
            let synthetic = blow_up(&build_lambda(p)?)?;
            if synthetic.component_census() != brute.component_census() {
                return Ok(VerifyReport::of(
                    p,
                    "gamma",
                    Verdict::Mismatch {
                        detail: format!(
                            "component census differs: synthetic {} vs oracle {}",
                            census_string(&synthetic),
                            census_string(&brute)
                        ),
                    },
                    "component census failed".into(),
                ));
            }
            if synthetic.degree_sequence() != brute.degree_sequence() {
                return Ok(VerifyReport::of(
                    p,
                    "gamma",
                    Verdict::Mismatch {
                        detail: "degree sequences differ".into(),
                    },
                    "degree sequence failed".into(),
                ));
            }
            if p == 3 {
                if let Some(detail) = sampled_product_check(p, 1_000_000)? {
                    return Ok(VerifyReport::of(
                        p,
                        "gamma",
                        Verdict::Mismatch { detail },
                        "sampled product check failed".into(),
                    ));
                }
            }
            let summary = format!(
                "{} vertices; components: {}",
                brute.vertex_count(),
                census_string(&brute)
            );
            Ok(VerifyReport::of(p, "gamma", Verdict::Match, summary))
        }
        5 => {
            let synthetic = blow_up(&build_lambda(p)?)?;
            let brute_degrees = brute_gamma_degrees(p)?;
            let verdict = if synthetic.degree_sequence() == brute_degrees {
                Verdict::Match
            } else {
                Verdict::Mismatch {
                    detail: "degree sequences differ".into(),
                }
            };
            Ok(VerifyReport::of(
                p,
                "gamma",
                verdict,
                format!(
                    "{} vertices, degree-sequence comparison only",
                    synthetic.vertex_count()
                ),
            ))
        }
        _ => Err(Error::OracleRefused {
            what: "commuting-graph verification",
            p,
            supported: "2, 3, 5",
        }),
    }
}

/// Random matrix pairs: the definitional commutation test must agree with
/// adjacency through the synthetic graph. Seeded, hence reproducible.
fn sampled_product_check(p: u64, samples: u64) -> Result<Option<String>> {
    let fp = Fp::new(p)?;
    let synthetic = build_lambda(p)?;
    let brute = brute_lambda(p)?;
    let LambdaComparison::Match { brute_to_synthetic } = compare_lambda(&synthetic, &brute)?
    else {
        return Ok(Some("isomorphism construction failed".into()));
    };
    let LambdaLabels::Matrices { generators, .. } = &brute.labels else {
        unreachable!()
    };
    let total = p.pow(9);
    let mut vertex_of_code = vec![u32::MAX; total as usize];
    for (v, gens) in generators.iter().enumerate() {
        for m in gens {
            vertex_of_code[m.encode() as usize] = brute_to_synthetic[v];
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x00c6_a11e);
    for _ in 0..samples {
        let (a, b) = (rng.gen_range(0..total), rng.gen_range(0..total));
        let (ma, mb) = (Mat3::decode(&fp, a), Mat3::decode(&fp, b));
        if ma.is_scalar() || mb.is_scalar() || a == b {
            continue;
        }
        let (sa, sb) = (
            vertex_of_code[a as usize],
            vertex_of_code[b as usize],
        );
        let through_graph = sa == sb || synthetic.adj.has_edge(sa, sb);
        if commutes(&ma, &mb) != through_graph {
            return Ok(Some(format!(
                "matrices {a} and {b} disagree with the graph adjacency"
            )));
        }
    }
    Ok(None)
}

/// Star check for the 2x2 ring.
pub fn verify_m2(p: u64) -> Result<VerifyReport> {
    let verdict = m2_star_check(p)?;
    Ok(VerifyReport::of(
        p,
        "m2",
        verdict,
        format!("star with {} leaves expected", p * p + p + 1),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::table1;

    #[test]
    fn brute_lambda_p2_counts() {
        let g = brute_lambda(2).unwrap();
        assert_eq!(g.vertex_count(), 191);
        let LambdaLabels::Matrices { generators, .. } = &g.labels else {
            unreachable!()
        };
        // the scalar vertex has exactly p = 2 generators
        let a_idx = g
            .types
            .iter()
            .position(|&t| t == MatrixType::A)
            .unwrap();
        assert_eq!(generators[a_idx].len(), 2);
        // generator mass adds back up to the full space
        let mass: usize = generators.iter().map(Vec::len).sum();
        assert_eq!(mass, 512);
    }

    #[test]
    fn brute_lambda_p3_matches_table1() {
        let g = brute_lambda(3).unwrap();
        let counts = g.type_counts();
        let t1 = table1(3).unwrap();
        for x in 0..8 {
            assert_eq!(counts[x], t1[x].vertex_count);
        }
        let LambdaLabels::Matrices { generators, .. } = &g.labels else {
            unreachable!()
        };
        for (v, gens) in generators.iter().enumerate() {
            assert_eq!(
                gens.len() as u64,
                t1[g.types[v].index()].generator_count,
                "vertex {v}"
            );
        }
    }

    #[test]
    fn brute_lambda_refuses_large_p() {
        assert!(matches!(
            brute_lambda(7),
            Err(Error::OracleRefused { .. })
        ));
    }

    #[test]
    fn compression_edges_well_defined_p2() {
        // adjacency between two vertices must not depend on generator choice
        let g = brute_lambda(2).unwrap();
        let LambdaLabels::Matrices { generators, .. } = &g.labels else {
            unreachable!()
        };
        let n = g.vertex_count();
        for u in 0..n {
            for v in (u + 1)..n {
                let expected = g.adj.has_edge(u as u32, v as u32);
                for a in &generators[u] {
                    for b in &generators[v] {
                        assert_eq!(commutes(a, b), expected, "vertices {u}, {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn generators_share_type_p2() {
        let g = brute_lambda(2).unwrap();
        let LambdaLabels::Matrices { generators, .. } = &g.labels else {
            unreachable!()
        };
        for (v, gens) in generators.iter().enumerate() {
            for m in gens {
                assert_eq!(classify_type(m), g.types[v]);
            }
        }
    }

    #[test]
    fn compare_p2_matches() {
        let outcome = compare_lambda(&build_lambda(2).unwrap(), &brute_lambda(2).unwrap()).unwrap();
        assert!(outcome.verdict().is_match());
    }

    #[test]
    fn compare_detects_dropped_edge() {
        let synthetic = build_lambda(2).unwrap();
        let brute = brute_lambda(2).unwrap();
        // drop one F-B edge from the synthetic graph
        let f_vertex = (0..synthetic.vertex_count() as u32)
            .find(|&v| synthetic.types[v as usize] == MatrixType::F)
            .unwrap();
        let b_neighbor = *synthetic
            .adj
            .neighbors(f_vertex)
            .iter()
            .find(|&&w| synthetic.types[w as usize] == MatrixType::B)
            .unwrap();
        let lists: Vec<Vec<u32>> = (0..synthetic.vertex_count() as u32)
            .map(|v| {
                synthetic
                    .adj
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
            p: synthetic.p,
            types: synthetic.types.clone(),
            adj: Csr::from_lists(lists),
            labels: match synthetic.labels {
                LambdaLabels::Synthetic { delta, labels } => {
                    LambdaLabels::Synthetic { delta, labels }
                }
                _ => unreachable!(),
            },
        };
        let outcome = compare_lambda(&corrupted, &brute).unwrap();
        let LambdaComparison::Mismatch { detail } = outcome else {
            panic!("corruption went undetected");
        };
        let f_label = corrupted.label_string(f_vertex);
        assert!(
            detail.contains(&f_label),
            "mismatch should name {f_label}: {detail}"
        );
    }

    #[test]
    fn brute_gamma_p2_shape() {
        let g = brute_gamma(2).unwrap();
        assert_eq!(g.vertex_count(), 510);
        // degree of E_12: centralizer size p^5 = 32, minus 2 scalars, minus itself
        let (mats, adj) = g.explicit().unwrap();
        let fp = Fp::new(2).unwrap();
        let e12 = Mat3::unit(&fp, 1, 2);
        let idx = mats.iter().position(|m| *m == e12).unwrap();
        assert_eq!(adj.degree(idx as u32), 29);
    }

    #[test]
    fn brute_gamma_degrees_agree_p2() {
        let g = brute_gamma(2).unwrap();
        assert_eq!(g.degree_sequence(), brute_gamma_degrees(2).unwrap());
    }

    #[test]
    fn star_checks() {
        assert!(m2_star_check(2).unwrap().is_match());
        assert!(m2_star_check(3).unwrap().is_match());
        assert!(matches!(
            m2_star_check(7),
            Err(Error::OracleRefused { .. })
        ));
    }
}
