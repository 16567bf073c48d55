//! Construction and verification of commuting graphs of the ring of 3x3
//! matrices over a prime field GF(p).
//!
//! The compressed commuting graph (one vertex per one-generated unital
//! subring, edges between commuting generators, loops everywhere) is built
//! synthetically from the projective plane PG(2,p): its core is a graph on
//! point-line pairs, and the remaining vertices attach to it in a fixed
//! pattern. The ordinary commuting graph is obtained by blowing every
//! vertex up into a clique of its generators. Both constructions are
//! verified exactly against brute-force enumeration of all p^9 matrices at
//! small p.

#![forbid(unsafe_code)]

pub mod classify;
pub mod delta;
pub mod error;
pub mod export;
pub mod field;
pub mod gamma;
pub mod graph;
pub mod lambda;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod projective;

pub use classify::{
    classify_type, generator_count, omega, orbit_size, table1, table2, MatrixType, TypeStats,
};
pub use delta::{build_delta, delta_edge, phi, psi, DeltaGraph, PairKind, PointLinePair};
pub use error::{Error, Result};
pub use field::{fp_inv, poly_is_irreducible, poly_roots, Fe, Fp, Poly};
pub use gamma::{blow_up, components, ComponentInfo, GammaGraph};
pub use lambda::{build_lambda, count_report, enumerate_b_triangles, CountReport, LambdaGraph};
pub use matrix::{char_poly, image_kernel, min_poly, subring_key, Mat3, SubringKey, Subspace};
pub use oracle::{
    brute_gamma, brute_lambda, compare_lambda, m2_star_check, verify_gamma, verify_lambda,
    verify_m2, LambdaComparison, Verdict, VerifyReport,
};
pub use projective::{build_tp, enumerate_pg, incident, IncidenceMatrix, ProjectivePlane};
