//! 3x3 matrix algebra over GF(p): products, characteristic and minimal
//! polynomials, rank, image/kernel, and the canonical generated-subring basis.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::field::{Fe, Fp, Poly};
use crate::linalg::GfMat;

/// A 3x3 matrix over GF(p), entries row-major and reduced mod p.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat3 {
    e: [Fe; 9],
}

impl Mat3 {
    pub fn from_entries(e: [Fe; 9]) -> Mat3 {
        let p = e[0].modulus();
        assert!(e.iter().all(|x| x.modulus() == p));
        Mat3 { e }
    }

    pub fn from_u64(fp: &Fp, e: [u64; 9]) -> Mat3 {
        let mut out = [fp.zero(); 9];
        for (slot, &v) in out.iter_mut().zip(e.iter()) {
            *slot = fp.el(v);
        }
        Mat3 { e: out }
    }

    pub fn zero(fp: &Fp) -> Mat3 {
        Mat3 { e: [fp.zero(); 9] }
    }

    pub fn identity(fp: &Fp) -> Mat3 {
        Mat3::from_u64(fp, [1, 0, 0, 0, 1, 0, 0, 0, 1])
    }

    pub fn scalar(fp: &Fp, c: Fe) -> Mat3 {
        let mut m = Mat3::zero(fp);
        for i in 0..3 {
            m.set(i, i, c);
        }
        m
    }

    pub fn diag(fp: &Fp, d: [u64; 3]) -> Mat3 {
        Mat3::from_u64(fp, [d[0], 0, 0, 0, d[1], 0, 0, 0, d[2]])
    }

    /// Standard basis matrix E_{ij} (1-indexed, as customary).
    pub fn unit(fp: &Fp, i: usize, j: usize) -> Mat3 {
        assert!((1..=3).contains(&i) && (1..=3).contains(&j));
        let mut m = Mat3::zero(fp);
        m.set(i - 1, j - 1, fp.one());
        m
    }

    /// Companion matrix of a monic cubic q = x^3 + c2 x^2 + c1 x + c0.
    pub fn companion(q: &Poly) -> Mat3 {
        assert_eq!(q.degree(), Some(3));
        assert!(q.is_monic());
        let fp = q.coeffs()[0].fp();
        let c = q.coeffs();
        let mut m = Mat3::zero(&fp);
        m.set(1, 0, fp.one());
        m.set(2, 1, fp.one());
        m.set(0, 2, -c[0]);
        m.set(1, 2, -c[1]);
        m.set(2, 2, -c[2]);
        m
    }

    #[inline]
    pub fn fp(&self) -> Fp {
        self.e[0].fp()
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> Fe {
        self.e[r * 3 + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.e[r * 3 + c] = v;
    }

    /// Row-major flattening into GF(p)^9.
    pub fn vec9(&self) -> [Fe; 9] {
        self.e
    }

    pub fn transpose(&self) -> Mat3 {
        let mut t = *self;
        for r in 0..3 {
            for c in 0..3 {
                t.set(c, r, self.at(r, c));
            }
        }
        t
    }

    pub fn scale(&self, c: Fe) -> Mat3 {
        let mut out = *self;
        for v in out.e.iter_mut() {
            *v = *v * c;
        }
        out
    }

    pub fn trace(&self) -> Fe {
        self.at(0, 0) + self.at(1, 1) + self.at(2, 2)
    }

    pub fn det(&self) -> Fe {
        let a = |r: usize, c: usize| self.at(r, c);
        a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
            - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
            + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(Fe::is_zero)
    }

    pub fn is_scalar(&self) -> bool {
        let d = self.at(0, 0);
        *self == Mat3::scalar(&self.fp(), d)
    }

    pub fn commutes_with(&self, other: &Mat3) -> bool {
        *self * *other == *other * *self
    }

    pub fn rank(&self) -> usize {
        GfMat::from_rows(vec![
            self.row_vec(0),
            self.row_vec(1),
            self.row_vec(2),
        ])
        .rank()
    }

    fn row_vec(&self, r: usize) -> Vec<Fe> {
        (0..3).map(|c| self.at(r, c)).collect()
    }

    /// Evaluate a polynomial at this matrix (constant term times identity).
    pub fn eval_poly(&self, q: &Poly) -> Mat3 {
        let fp = self.fp();
        let mut acc = Mat3::zero(&fp);
        for &c in q.coeffs().iter().rev() {
            acc = acc * *self + Mat3::scalar(&fp, c);
        }
        acc
    }

    /// Encode as an integer in [0, p^9): digit k in base p is the k-th
    /// row-major entry, least significant first. This is the canonical
    /// enumeration order of the full matrix space.
    pub fn encode(&self) -> u64 {
        let p = self.e[0].modulus();
        self.e
            .iter()
            .rev()
            .fold(0u64, |acc, fe| acc * p + fe.val())
    }

    pub fn decode(fp: &Fp, mut code: u64) -> Mat3 {
        let p = fp.p();
        let mut e = [fp.zero(); 9];
        for slot in e.iter_mut() {
            *slot = fp.el(code % p);
            code /= p;
        }
        Mat3 { e }
    }
}

impl Add for Mat3 {
    type Output = Mat3;
    fn add(self, rhs: Mat3) -> Mat3 {
        let mut out = self;
        for (a, b) in out.e.iter_mut().zip(rhs.e.iter()) {
            *a = *a + *b;
        }
        out
    }
}

impl Sub for Mat3 {
    type Output = Mat3;
    fn sub(self, rhs: Mat3) -> Mat3 {
        let mut out = self;
        for (a, b) in out.e.iter_mut().zip(rhs.e.iter()) {
            *a = *a - *b;
        }
        out
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        let fp = self.fp();
        let mut out = Mat3::zero(&fp);
        for r in 0..3 {
            for c in 0..3 {
                let v = self.at(r, 0) * rhs.at(0, c)
                    + self.at(r, 1) * rhs.at(1, c)
                    + self.at(r, 2) * rhs.at(2, c);
                out.set(r, c, v);
            }
        }
        out
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} {} {}; {} {} {}; {} {} {}]",
            self.e[0],
            self.e[1],
            self.e[2],
            self.e[3],
            self.e[4],
            self.e[5],
            self.e[6],
            self.e[7],
            self.e[8]
        )
    }
}

/// Canonical identity of the unital subring generated by a matrix:
/// the unique RREF basis of span{vec(I), vec(A), vec(A^2)} in GF(p)^9.
/// Two matrices generate the same unital subring iff their keys are equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SubringKey {
    p: u8,
    dim: u8,
    rows: [[u8; 9]; 3],
}

impl SubringKey {
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    /// The RREF basis as matrices.
    pub fn basis(&self, fp: &Fp) -> Vec<Mat3> {
        assert_eq!(fp.p(), self.p as u64);
        (0..self.dim as usize)
            .map(|r| {
                let mut e = [fp.zero(); 9];
                for (k, slot) in e.iter_mut().enumerate() {
                    *slot = fp.el(self.rows[r][k] as u64);
                }
                Mat3::from_entries(e)
            })
            .collect()
    }

    /// All p^dim elements of the subring, enumerated deterministically by
    /// base-p coefficient vectors over the RREF basis.
    pub fn elements(&self, fp: &Fp) -> Vec<Mat3> {
        let basis = self.basis(fp);
        let p = fp.p();
        let total = p.pow(self.dim as u32);
        let mut out = Vec::with_capacity(total as usize);
        for mut idx in 0..total {
            let mut m = Mat3::zero(fp);
            for b in &basis {
                let c = fp.el(idx % p);
                idx /= p;
                m = m + b.scale(c);
            }
            out.push(m);
        }
        out
    }
}

/// Monic characteristic polynomial det(xI - A).
pub fn char_poly(a: &Mat3) -> Poly {
    let fp = a.fp();
    // x^3 - tr x^2 + (sum of principal 2x2 minors) x - det
    let tr = a.trace();
    let m01 = a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
    let m02 = a.at(0, 0) * a.at(2, 2) - a.at(0, 2) * a.at(2, 0);
    let m12 = a.at(1, 1) * a.at(2, 2) - a.at(1, 2) * a.at(2, 1);
    Poly::new(vec![-a.det(), m01 + m02 + m12, -tr, fp.one()])
}

/// Monic minimal polynomial, found as the first linear dependence among
/// vec(I), vec(A), vec(A^2), vec(A^3).
pub fn min_poly(a: &Mat3) -> Poly {
    let fp = a.fp();
    let powers = [
        Mat3::identity(&fp),
        *a,
        *a * *a,
        *a * *a * *a,
    ];
    for k in 1..=3usize {
        // is vec(A^k) a combination of the lower powers?
        let cols: Vec<Vec<Fe>> = (0..9)
            .map(|i| (0..k).map(|j| powers[j].vec9()[i]).collect())
            .collect();
        let system = GfMat::from_rows(cols);
        let rhs: Vec<Fe> = powers[k].vec9().to_vec();
        if let Some(sol) = system.solve(&rhs, &fp) {
            // m(x) = x^k - sum sol[j] x^j
            let mut coeffs: Vec<Fe> = sol.iter().map(|&c| -c).collect();
            coeffs.push(fp.one());
            let m = Poly::new(coeffs);
            debug_assert!(a.eval_poly(&m).is_zero());
            return m;
        }
    }
    unreachable!("degree 3 always admits the characteristic polynomial");
}

/// A subspace of GF(p)^3 in canonical RREF basis form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    basis: Vec<[Fe; 3]>,
}

impl Subspace {
    pub fn from_vectors(vectors: &[[Fe; 3]]) -> Subspace {
        if vectors.is_empty() {
            return Subspace { basis: Vec::new() };
        }
        let rows: Vec<Vec<Fe>> = vectors.iter().map(|v| v.to_vec()).collect();
        let basis = GfMat::from_rows(rows)
            .row_space_basis()
            .into_iter()
            .map(|r| [r[0], r[1], r[2]])
            .collect();
        Subspace { basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[[Fe; 3]] {
        &self.basis
    }

    pub fn contains(&self, v: [Fe; 3]) -> bool {
        // reduce v against the RREF basis
        let mut v = v;
        for b in &self.basis {
            let lead = b.iter().position(|x| !x.is_zero()).unwrap();
            if !v[lead].is_zero() {
                let f = v[lead];
                for i in 0..3 {
                    v[i] = v[i] - f * b[i];
                }
            }
        }
        v.iter().all(Fe::is_zero)
    }
}

/// (column space, null space) of `a`, both canonical.
pub fn image_kernel(a: &Mat3) -> (Subspace, Subspace) {
    let fp = a.fp();
    let cols: Vec<[Fe; 3]> = (0..3)
        .map(|c| [a.at(0, c), a.at(1, c), a.at(2, c)])
        .collect();
    let image = Subspace::from_vectors(&cols);
    let ns = GfMat::from_rows(vec![
        (0..3).map(|c| a.at(0, c)).collect(),
        (0..3).map(|c| a.at(1, c)).collect(),
        (0..3).map(|c| a.at(2, c)).collect(),
    ])
    .nullspace(&fp);
    let kernel_vecs: Vec<[Fe; 3]> = ns.iter().map(|v| [v[0], v[1], v[2]]).collect();
    let kernel = Subspace::from_vectors(&kernel_vecs);
    debug_assert_eq!(image.dim() + kernel.dim(), 3);
    (image, kernel)
}

/// Canonical key of the unital subring generated by `a`.
/// Its dimension equals deg(min_poly(a)) by Cayley-Hamilton.
pub fn subring_key(a: &Mat3) -> SubringKey {
    let fp = a.fp();
    let id = Mat3::identity(&fp);
    let a2 = *a * *a;
    let m = GfMat::from_rows(vec![
        id.vec9().to_vec(),
        a.vec9().to_vec(),
        a2.vec9().to_vec(),
    ]);
    let basis = m.row_space_basis();
    let mut rows = [[0u8; 9]; 3];
    for (r, vec) in basis.iter().enumerate() {
        for (c, fe) in vec.iter().enumerate() {
            rows[r][c] = fe.raw();
        }
    }
    SubringKey {
        p: fp.p() as u8,
        dim: basis.len() as u8,
        rows,
    }
}
