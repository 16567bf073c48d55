//! The ordinary commuting graph obtained from the compressed graph by
//! removing the scalar vertex and all loops, then blowing up every vertex
//! into a clique of its generators.

use serde::Serialize;

use crate::classify::MatrixType;
use crate::error::{Error, Result};
use crate::graph::{Csr, UnionFind};
use crate::lambda::{LambdaGraph, LambdaLabels};
use crate::matrix::Mat3;

/// The commuting graph on non-central matrices. Vertices are either
/// synthetic slots (a compressed vertex plus a slot index below its
/// generator count) or actual matrices when built from the oracle.
pub struct GammaGraph {
    pub p: u64,
    pub repr: GammaRepr,
}

pub enum GammaRepr {
    /// Kept at compressed scale: per-vertex generator counts plus the
    /// loop-free compressed adjacency with the scalar vertex removed.
    /// Slot-level edges are implicit and streamed on demand.
    Compressed {
        types: Vec<MatrixType>,
        gens: Vec<u64>,
        adj: Csr,
    },
    /// Fully materialized with matrix labels; adjacency is loop-free.
    Explicit { mats: Vec<Mat3>, adj: Csr },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ComponentInfo {
    pub size: u64,
    pub is_clique: bool,
}

impl GammaGraph {
    pub fn vertex_count(&self) -> u64 {
        match &self.repr {
            GammaRepr::Compressed { gens, .. } => gens.iter().sum(),
            GammaRepr::Explicit { mats, .. } => mats.len() as u64,
        }
    }

    pub fn edge_count(&self) -> u64 {
        match &self.repr {
            GammaRepr::Compressed { gens, adj, .. } => {
                let internal: u64 = gens.iter().map(|&g| g * (g - 1) / 2).sum();
                let cross: u64 = adj
                    .edges()
                    .filter(|(u, v)| u != v)
                    .map(|(u, v)| gens[u as usize] * gens[v as usize])
                    .sum();
                internal + cross
            }
            GammaRepr::Explicit { adj, .. } => adj.entry_count() / 2,
        }
    }

    /// Degrees of all vertices, ascending.
    pub fn degree_sequence(&self) -> Vec<u64> {
        let mut out: Vec<u64> = match &self.repr {
            GammaRepr::Compressed { gens, adj, .. } => {
                let mut seq = Vec::with_capacity(self.vertex_count() as usize);
                for v in 0..gens.len() as u32 {
                    let cross: u64 = adj
                        .neighbors(v)
                        .iter()
                        .map(|&w| gens[w as usize])
                        .sum();
                    let d = gens[v as usize] - 1 + cross;
                    for _ in 0..gens[v as usize] {
                        seq.push(d);
                    }
                }
                seq
            }
            GammaRepr::Explicit { adj, .. } => {
                (0..adj.n() as u32).map(|v| adj.degree(v) as u64).collect()
            }
        };
        out.sort_unstable();
        out
    }

    /// Connected components, largest first.
    pub fn components(&self) -> Vec<ComponentInfo> {
        match &self.repr {
            GammaRepr::Compressed { gens, adj, .. } => {
                let mut uf = UnionFind::new(gens.len());
                for (u, v) in adj.edges() {
                    uf.union(u, v);
                }
                let mut out: Vec<ComponentInfo> = uf
                    .components()
                    .into_iter()
                    .map(|members| {
                        let size: u64 = members.iter().map(|&v| gens[v as usize]).sum();
                        // the blow-up of a component is a clique iff the
                        // compressed component is complete
                        let edges: u64 =
                            members.iter().map(|&v| adj.degree(v) as u64).sum::<u64>() / 2;
                        let k = members.len() as u64;
                        ComponentInfo {
                            size,
                            is_clique: edges == k * (k - 1) / 2,
                        }
                    })
                    .collect();
                out.sort_by_key(|c| std::cmp::Reverse(c.size));
                out
            }
            GammaRepr::Explicit { adj, .. } => {
                let mut uf = UnionFind::new(adj.n());
                for (u, v) in adj.edges() {
                    uf.union(u, v);
                }
                let mut out: Vec<ComponentInfo> = uf
                    .components()
                    .into_iter()
                    .map(|members| {
                        let edges: u64 =
                            members.iter().map(|&v| adj.degree(v) as u64).sum::<u64>() / 2;
                        let k = members.len() as u64;
                        ComponentInfo {
                            size: k,
                            is_clique: edges == k * (k - 1) / 2,
                        }
                    })
                    .collect();
                out.sort_by_key(|c| std::cmp::Reverse(c.size));
                out
            }
        }
    }

    /// Census summary: (component size, is_clique) -> count, deterministic.
    pub fn component_census(&self) -> Vec<(u64, bool, u64)> {
        let mut tally: std::collections::BTreeMap<(u64, bool), u64> = Default::default();
        for c in self.components() {
            *tally.entry((c.size, c.is_clique)).or_default() += 1;
        }
        tally
            .into_iter()
            .rev()
            .map(|((size, clique), count)| (size, clique, count))
            .collect()
    }

    pub fn explicit(&self) -> Result<(&[Mat3], &Csr)> {
        match &self.repr {
            GammaRepr::Explicit { mats, adj } => Ok((mats, adj)),
            _ => Err(Error::NotMatrixLabeled),
        }
    }

    /// Stream all undirected slot-level edges as (u, v) with u < v, where
    /// slots are numbered by compressed vertex then slot index. For the
    /// explicit representation the stored edges are returned directly.
    pub fn edges(&self) -> Box<dyn Iterator<Item = (u64, u64)> + '_> {
        match &self.repr {
            GammaRepr::Explicit { adj, .. } => {
                Box::new(adj.edges().map(|(u, v)| (u as u64, v as u64)))
            }
            GammaRepr::Compressed { gens, adj, .. } => {
                let mut base = vec![0u64; gens.len() + 1];
                for (i, &g) in gens.iter().enumerate() {
                    base[i + 1] = base[i] + g;
                }
                let iter = (0..gens.len() as u32).flat_map(move |v| {
                    let internal = {
                        let b = base[v as usize];
                        let g = gens[v as usize];
                        (0..g).flat_map(move |i| ((i + 1)..g).map(move |j| (b + i, b + j)))
                    };
                    let base2 = base.clone();
                    let cross = adj
                        .neighbors(v)
                        .iter()
                        .copied()
                        .filter(move |&w| w > v)
                        .flat_map(move |w| {
                            let (bv, bw) = (base2[v as usize], base2[w as usize]);
                            let (gv, gw) = (gens[v as usize], gens[w as usize]);
                            (0..gv).flat_map(move |i| (0..gw).map(move |j| (bv + i, bw + j)))
                        })
                        .collect::<Vec<_>>();
                    internal.chain(cross)
                });
                Box::new(iter)
            }
        }
    }

    /// Type tag of each slot, by compressed vertex order (for export).
    pub fn slot_types(&self) -> Vec<MatrixType> {
        match &self.repr {
            GammaRepr::Compressed { types, gens, .. } => {
                let mut out = Vec::with_capacity(self.vertex_count() as usize);
                for (t, &g) in types.iter().zip(gens.iter()) {
                    for _ in 0..g {
                        out.push(*t);
                    }
                }
                out
            }
            GammaRepr::Explicit { mats, .. } => {
                mats.iter().map(crate::classify::classify_type).collect()
            }
        }
    }
}

/// Replace each non-scalar compressed vertex by a clique of its generators,
/// dropping the scalar vertex and all loops. With matrix labels present
/// (oracle mode) the result is fully materialized and matrix-labeled;
/// otherwise it stays at compressed scale.
pub fn blow_up(g: &LambdaGraph) -> Result<GammaGraph> {
    let a_idx = g
        .types
        .iter()
        .position(|&t| t == MatrixType::A)
        .expect("every compressed graph has its scalar vertex") as u32;
    let n = g.vertex_count() as u32;
    // reindex with the scalar vertex removed
    let remap = |v: u32| -> u32 {
        if v > a_idx {
            v - 1
        } else {
            v
        }
    };
    let kept = (0..n).filter(|&v| v != a_idx);
    let adj = Csr::from_emitter(n as usize - 1, |f| {
        for v in kept.clone() {
            for &w in g.adj.neighbors(v) {
                if w != v && w != a_idx {
                    f(remap(v), remap(w));
                }
            }
        }
    });

    match &g.labels {
        LambdaLabels::Synthetic { .. } => {
            let mut types = Vec::with_capacity(n as usize - 1);
            let mut gens = Vec::with_capacity(n as usize - 1);
            for v in kept {
                types.push(g.types[v as usize]);
                gens.push(g.generator_count_of(v)?);
            }
            // empty vertices cannot exist: types with zero generators have
            // no vertices either
            assert!(gens.iter().all(|&g| g > 0));
            Ok(GammaGraph {
                p: g.p,
                repr: GammaRepr::Compressed { types, gens, adj },
            })
        }
        LambdaLabels::Matrices { generators, .. } => {
            let mut slot_of = vec![0u64; n as usize];
            let mut mats: Vec<Mat3> = Vec::new();
            for v in kept.clone() {
                slot_of[v as usize] = mats.len() as u64;
                let mut gen_list = generators[v as usize].clone();
                gen_list.sort_by_key(Mat3::encode);
                mats.extend(gen_list);
            }
            let total = mats.len();
            assert!(total as u64 <= u32::MAX as u64);
            let slot = |v: u32, i: u64| (slot_of[v as usize] + i) as u32;
            let expanded = Csr::from_emitter(total, |f| {
                for v in kept.clone() {
                    let gv = generators[v as usize].len() as u64;
                    for i in 0..gv {
                        for j in 0..gv {
                            if i != j {
                                f(slot(v, i), slot(v, j));
                            }
                        }
                    }
                    for &w in g.adj.neighbors(v) {
                        if w == v || w == a_idx {
                            continue;
                        }
                        let gw = generators[w as usize].len() as u64;
                        for i in 0..gv {
                            for j in 0..gw {
                                f(slot(v, i), slot(w, j));
                            }
                        }
                    }
                }
            });
            Ok(GammaGraph {
                p: g.p,
                repr: GammaRepr::Explicit {
                    mats,
                    adj: expanded,
                },
            })
        }
    }
}

/// Connected components with sizes and clique flags, largest first.
pub fn components(g: &GammaGraph) -> Vec<ComponentInfo> {
    g.components()
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub size: u64,
    pub is_clique: bool,
    pub count: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaStats {
    pub p: u64,
    pub vertices: u64,
    pub edges: u64,
    pub components: Vec<CensusRow>,
}

pub fn gamma_stats(g: &GammaGraph) -> GammaStats {
    GammaStats {
        p: g.p,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        components: g
            .component_census()
            .into_iter()
            .map(|(size, is_clique, count)| CensusRow {
                size,
                is_clique,
                count,
            })
            .collect(),
    }
}
