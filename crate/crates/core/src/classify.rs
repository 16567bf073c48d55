//! The eight-way type classification of 3x3 matrices over GF(p), generator
//! counts, orbit sizes, and the closed-form vertex/neighborhood tables.
//!
//! A matrix's type is determined by (d, e) = (deg of the minimal polynomial,
//! number of distinct eigenvalues in GF(p)), with the split/non-split
//! distinction separating (D) from (H) at (d, e) = (3, 1):
//!
//!   (1,1) = A   (2,1) = E   (2,2) = B   (3,0) = G
//!   (3,1) = D if the characteristic polynomial splits, else H
//!   (3,2) = F   (3,3) = C

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{poly_roots, Fp, Poly};
use crate::linalg::GfMat;
use crate::matrix::{char_poly, min_poly, subring_key, Mat3, SubringKey};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum MatrixType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
}

pub const ALL_TYPES: [MatrixType; 8] = [
    MatrixType::A,
    MatrixType::B,
    MatrixType::C,
    MatrixType::D,
    MatrixType::E,
    MatrixType::F,
    MatrixType::G,
    MatrixType::H,
];

impl MatrixType {
    #[inline]
    pub fn index(&self) -> usize {
        *self as usize
    }

    pub fn from_index(i: usize) -> MatrixType {
        ALL_TYPES[i]
    }

    pub fn letter(&self) -> char {
        (b'A' + *self as u8) as char
    }
}

impl fmt::Display for MatrixType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Does a monic polynomial factor into linear terms over GF(p)?
fn splits(q: &Poly) -> bool {
    let mut rest = q.clone();
    let roots = poly_roots(q).unwrap();
    for r in roots {
        let lin = Poly::linear(r);
        loop {
            let (quot, rem) = rest.divrem(&lin);
            if rem.is_zero() {
                rest = quot;
            } else {
                break;
            }
        }
    }
    rest.degree() == Some(0)
}

/// Type tag of a matrix, per the (d, e) rule above.
pub fn classify_type(a: &Mat3) -> MatrixType {
    let m = min_poly(a);
    let d = m.degree().unwrap();
    let e = poly_roots(&m).unwrap().len();
    match (d, e) {
        (1, 1) => MatrixType::A,
        (2, 1) => MatrixType::E,
        (2, 2) => MatrixType::B,
        (3, 0) => MatrixType::G,
        (3, 2) => MatrixType::F,
        (3, 3) => MatrixType::C,
        (3, 1) => {
            if splits(&char_poly(a)) {
                MatrixType::D
            } else {
                MatrixType::H
            }
        }
        _ => unreachable!("impossible (deg m, #eigenvalues) pair ({d}, {e})"),
    }
}

/// Number of single generators of the subring identified by `key`, counted
/// by enumerating all p^dim subring elements.
pub fn generator_count(fp: &Fp, key: &SubringKey) -> u64 {
    key.elements(fp)
        .iter()
        .filter(|m| subring_key(m) == *key)
        .count() as u64
}

/// |<A> ∩ O(A)|: how many elements of the generated subring are similar to
/// `a`. Similarity is tested via equality of the (characteristic, minimal)
/// polynomial pair, which determines the rational canonical form for 3x3.
pub fn omega(a: &Mat3) -> u64 {
    let fp = a.fp();
    let cp = char_poly(a);
    let mp = min_poly(a);
    subring_key(a)
        .elements(&fp)
        .iter()
        .filter(|m| char_poly(m) == cp && min_poly(m) == mp)
        .count() as u64
}

/// Basis of the centralizer of `a` (all X with AX = XA), via the nullspace
/// of the 9x9 commutation operator X -> AX - XA.
pub fn centralizer_basis(a: &Mat3) -> Vec<Mat3> {
    let fp = a.fp();
    let mut op = GfMat::zeros(&fp, 9, 9);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    // coefficient of X_{kl} in (AX - XA)_{ij}
                    let mut c = fp.zero();
                    if l == j {
                        c = c + a.at(i, k);
                    }
                    if i == k {
                        c = c - a.at(l, j);
                    }
                    op.set(i * 3 + j, k * 3 + l, c);
                }
            }
        }
    }
    op.nullspace(&fp)
        .into_iter()
        .map(|v| {
            let mut m = Mat3::zero(&fp);
            for (idx, fe) in v.into_iter().enumerate() {
                m.set(idx / 3, idx % 3, fe);
            }
            m
        })
        .collect()
}

/// |C(A)| = p^(dim of the centralizer).
pub fn centralizer_size(a: &Mat3) -> u64 {
    a.fp().p().pow(centralizer_basis(a).len() as u32)
}

/// All elements of the centralizer, enumerated from its basis.
pub fn centralizer_elements(a: &Mat3) -> Vec<Mat3> {
    let fp = a.fp();
    let basis = centralizer_basis(a);
    let p = fp.p();
    let total = p.pow(basis.len() as u32);
    let mut out = Vec::with_capacity(total as usize);
    for mut idx in 0..total {
        let mut m = Mat3::zero(&fp);
        for b in &basis {
            let c = fp.el(idx % p);
            idx /= p;
            m = m + b.scale(c);
        }
        out.push(m);
    }
    out
}

/// |GL_3(GF(p))| = (p^3 - 1)(p^3 - p)(p^3 - p^2).
pub fn gl3_order(p: u64) -> u64 {
    let p3 = p * p * p;
    (p3 - 1) * (p3 - p) * (p3 - p * p)
}

/// |GL_2(GF(p))| = (p^2 - 1)(p^2 - p).
pub fn gl2_order(p: u64) -> u64 {
    let p2 = p * p;
    (p2 - 1) * (p2 - p)
}

/// Size of the similarity orbit of `a`: |GL_3| divided by the number of
/// invertible matrices in the centralizer (counted by enumeration).
pub fn orbit_size(a: &Mat3) -> u64 {
    let invertible = centralizer_elements(a)
        .iter()
        .filter(|m| m.rank() == 3)
        .count() as u64;
    let gl3 = gl3_order(a.fp().p());
    debug_assert_eq!(gl3 % invertible, 0);
    gl3 / invertible
}

/// Per-type vertex counts, generator counts and dimension.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct TypeStats {
    pub vertex_count: u64,
    pub generator_count: u64,
    pub dimension: u8,
}

/// Closed-form vertex table, indexed by [`MatrixType::index`]. There are no
/// type-C vertices at p = 2 (three distinct eigenvalues need p >= 3).
pub fn table1(p: u64) -> Result<[TypeStats; 8]> {
    if !crate::field::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = p * p + p + 1; // p^2 + p + 1
    let p2 = p * p;
    let p3 = p * p * p;
    let c_count = if p == 2 { 0 } else { n * p3 * (p + 1) / 6 };
    Ok([
        // A
        TypeStats { vertex_count: 1, generator_count: p, dimension: 1 },
        // B
        TypeStats { vertex_count: n * p2, generator_count: p * (p - 1), dimension: 2 },
        // C
        TypeStats {
            vertex_count: c_count,
            generator_count: p * (p - 1) * (p.saturating_sub(2)),
            dimension: 3,
        },
        // D
        TypeStats { vertex_count: (p3 - 1) * (p + 1), generator_count: p2 * (p - 1), dimension: 3 },
        // E
        TypeStats { vertex_count: n * (p + 1), generator_count: p * (p - 1), dimension: 2 },
        // F
        TypeStats {
            vertex_count: n * p2 * (p + 1),
            generator_count: p * (p - 1) * (p - 1),
            dimension: 3,
        },
        // G
        TypeStats {
            vertex_count: (p3 - p) * (p3 - p2) / 3,
            generator_count: p3 - p,
            dimension: 3,
        },
        // H
        TypeStats { vertex_count: (p3 - 1) * p3 / 2, generator_count: p2 * (p - 1), dimension: 3 },
    ])
}

/// Closed-form neighborhood table: entry [x][y] is N(X, Y), the number of
/// type-X neighbors of any type-Y vertex (a vertex counts itself through its
/// loop). Rows/columns touching type C are zero at p = 2, where that type is
/// empty.
pub fn table2(p: u64) -> Result<[[u64; 8]; 8]> {
    let t1 = table1(p)?;
    let n = p * p + p + 1;
    let p2 = p * p;
    let mut t = [[0u64; 8]; 8];
    let idx = |x: MatrixType| x.index();
    use MatrixType::*;

    // column (Y = A): the scalar vertex sees everything
    for x in ALL_TYPES {
        t[idx(x)][idx(A)] = t1[idx(x)].vertex_count;
    }
    // column (Y = B)
    t[idx(A)][idx(B)] = 1;
    t[idx(B)][idx(B)] = n;
    t[idx(C)][idx(B)] = (p2 + p) / 2;
    t[idx(E)][idx(B)] = p + 1;
    t[idx(F)][idx(B)] = p + 1;
    t[idx(H)][idx(B)] = p * (p - 1) / 2;
    // column (Y = C)
    t[idx(A)][idx(C)] = 1;
    t[idx(B)][idx(C)] = 3;
    t[idx(C)][idx(C)] = 1;
    // column (Y = D)
    t[idx(A)][idx(D)] = 1;
    t[idx(D)][idx(D)] = 1;
    t[idx(E)][idx(D)] = 1;
    // column (Y = E)
    t[idx(A)][idx(E)] = 1;
    t[idx(B)][idx(E)] = p2;
    t[idx(D)][idx(E)] = p - 1;
    t[idx(E)][idx(E)] = 2 * p + 1;
    t[idx(F)][idx(E)] = p2;
    // column (Y = F)
    t[idx(A)][idx(F)] = 1;
    t[idx(B)][idx(F)] = 1;
    t[idx(E)][idx(F)] = 1;
    t[idx(F)][idx(F)] = 1;
    // column (Y = G)
    t[idx(A)][idx(G)] = 1;
    t[idx(G)][idx(G)] = 1;
    // column (Y = H)
    t[idx(A)][idx(H)] = 1;
    t[idx(B)][idx(H)] = 1;
    t[idx(H)][idx(H)] = 1;

    if p == 2 {
        for x in ALL_TYPES {
            t[idx(C)][idx(x)] = 0;
            t[idx(x)][idx(C)] = 0;
        }
    }
    Ok(t)
}
