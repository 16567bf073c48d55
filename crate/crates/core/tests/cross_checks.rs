//! Cross-module invariants that tie the classification, the projective
//! construction and the oracle together.

use std::collections::HashSet;

use ccg_core::classify::{classify_type, table1, MatrixType};
use ccg_core::delta::{phi, PairKind};
use ccg_core::field::{Fp, Poly};
use ccg_core::lambda::{build_lambda, LambdaLabels};
use ccg_core::matrix::{char_poly, min_poly, Mat3};
use ccg_core::oracle::{brute_lambda, verify_gamma, verify_lambda};

#[test]
fn type_masses_partition_the_space_p3() {
    let fp = Fp::new(3).unwrap();
    let t1 = table1(3).unwrap();
    let mut counts = [0u64; 8];
    for code in 0..3u64.pow(9) {
        counts[classify_type(&Mat3::decode(&fp, code)).index()] += 1;
    }
    for x in 0..8 {
        assert_eq!(counts[x], t1[x].vertex_count * t1[x].generator_count);
    }
}

#[test]
fn similarity_pair_criterion_equals_conjugacy_p2() {
    // (char, min) equality must coincide with actual GL_3-conjugacy.
    let fp = Fp::new(2).unwrap();
    let all: Vec<Mat3> = (0..512).map(|c| Mat3::decode(&fp, c)).collect();
    let invertible: Vec<Mat3> = all.iter().copied().filter(|m| m.rank() == 3).collect();
    assert_eq!(invertible.len(), 168);
    let inverses: Vec<Mat3> = invertible
        .iter()
        .map(|s| {
            *invertible
                .iter()
                .find(|t| *s * **t == Mat3::identity(&fp))
                .unwrap()
        })
        .collect();

    // orbit representative = smallest code reachable by conjugation
    let mut orbit_rep = vec![u32::MAX; 512];
    for (code, a) in all.iter().enumerate() {
        if orbit_rep[code] != u32::MAX {
            continue;
        }
        let mut members = Vec::new();
        for (s, si) in invertible.iter().zip(inverses.iter()) {
            members.push((*s * *a * *si).encode() as u32);
        }
        members.sort_unstable();
        members.dedup();
        let rep = members[0];
        for m in members {
            orbit_rep[m as usize] = rep;
        }
    }

    let pair_of: Vec<(Poly, Poly)> = all.iter().map(|m| (char_poly(m), min_poly(m))).collect();
    for i in 0..512 {
        for j in (i + 1)..512 {
            assert_eq!(
                orbit_rep[i] == orbit_rep[j],
                pair_of[i] == pair_of[j],
                "codes {i}, {j}"
            );
        }
    }
}

#[test]
fn orbit_reaches_every_g_and_h_vertex() {
    // Every type-G (resp. type-H) vertex contains an element similar to the
    // type's canonical representative, so orbit size / omega counts vertices.
    for p in [2u64, 3] {
        let fp = Fp::new(p).unwrap();
        let first_irreducible = |deg: usize| -> Poly {
            for code in 0..p.pow(deg as u32) {
                let mut coeffs: Vec<u64> = (0..deg as u32)
                    .map(|k| (code / p.pow(k)) % p)
                    .collect();
                coeffs.push(1);
                let q = Poly::from_u64(&fp, &coeffs);
                if ccg_core::poly_is_irreducible(&q).unwrap() {
                    return q;
                }
            }
            unreachable!("irreducible polynomials exist at every degree");
        };
        let rep_g = Mat3::companion(&first_irreducible(3));
        let q2 = first_irreducible(2);
        // block diag(0) + companion of the quadratic
        let c = q2.coeffs();
        let rep_h = {
            let mut m = Mat3::zero(&fp);
            m.set(2, 1, fp.one());
            m.set(1, 2, -c[0]);
            m.set(2, 2, -c[1]);
            m
        };
        assert_eq!(classify_type(&rep_g), MatrixType::G);
        assert_eq!(classify_type(&rep_h), MatrixType::H);

        let g = brute_lambda(p).unwrap();
        let LambdaLabels::Matrices { generators, .. } = &g.labels else {
            unreachable!()
        };
        for (rep, ty) in [(rep_g, MatrixType::G), (rep_h, MatrixType::H)] {
            let target = (char_poly(&rep), min_poly(&rep));
            for (v, gens) in generators.iter().enumerate() {
                if g.types[v] != ty {
                    continue;
                }
                assert!(
                    gens.iter()
                        .any(|m| (char_poly(m), min_poly(m)) == target),
                    "p={p}: type-{ty} vertex {v} misses the orbit of the canonical representative"
                );
            }
        }
    }
}

#[test]
fn phi_is_a_bijection_onto_pairs() {
    for p in [2u64, 3] {
        let synthetic = build_lambda(p).unwrap();
        let LambdaLabels::Synthetic { delta, .. } = &synthetic.labels else {
            unreachable!()
        };
        let plane = delta.plane();
        let brute = brute_lambda(p).unwrap();
        let LambdaLabels::Matrices { keys, .. } = &brute.labels else {
            unreachable!()
        };
        let mut seen = HashSet::new();
        for (v, key) in keys.iter().enumerate() {
            let ty = brute.types[v];
            if ty != MatrixType::B && ty != MatrixType::E {
                continue;
            }
            let pair = phi(plane, key).unwrap();
            let expected_kind = if ty == MatrixType::B {
                PairKind::B
            } else {
                PairKind::E
            };
            assert_eq!(pair.kind(plane), expected_kind);
            assert!(seen.insert(pair.index(plane)), "phi collided at vertex {v}");
        }
        let n = plane.size() as u64;
        assert_eq!(seen.len() as u64, n * n, "phi must hit every pair");
    }
}

#[test]
fn generator_count_matches_census_for_every_key() {
    // the subring-enumeration count must agree with the oracle census and
    // with Table 1, for every vertex
    for p in [2u64, 3] {
        let fp = Fp::new(p).unwrap();
        let t1 = table1(p).unwrap();
        let g = brute_lambda(p).unwrap();
        let LambdaLabels::Matrices { keys, generators } = &g.labels else {
            unreachable!()
        };
        for (v, key) in keys.iter().enumerate() {
            let counted = ccg_core::generator_count(&fp, key);
            assert_eq!(counted, generators[v].len() as u64, "p={p} vertex {v}");
            assert_eq!(counted, t1[g.types[v].index()].generator_count);
        }
    }
}

#[test]
fn lambda_matches_oracle_p5() {
    let report = verify_lambda(5).unwrap();
    assert!(report.matched, "{:?}", report.detail);
}

#[test]
fn gamma_degree_sequences_match_p5() {
    let report = verify_gamma(5).unwrap();
    assert!(report.matched, "{:?}", report.detail);
}

#[test]
fn synthetic_counts_and_profiles_match_closed_forms_p7() {
    let g = build_lambda(7).unwrap();
    let t1 = table1(7).unwrap();
    for x in 0..8 {
        assert_eq!(g.type_counts()[x], t1[x].vertex_count);
    }
    let report = ccg_core::count_report(&g).unwrap();
    ccg_core::lambda::check_against_tables(&report).unwrap();
}
