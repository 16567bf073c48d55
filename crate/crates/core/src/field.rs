//! Exact arithmetic in GF(p) and root analysis for polynomials of degree <= 3.
//!
//! The prime `p` is a runtime context ([`Fp`]), not a compile-time constant, so
//! one binary serves all primes. Every element carries its modulus; mixing
//! elements from different contexts is a programming error and panics.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A GF(p) context. Construction checks primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    p: u8,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    pub fn new(p: u64) -> Result<Fp> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > 251 {
            return Err(Error::ModulusTooLarge(p));
        }
        Ok(Fp { p: p as u8 })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p as u64
    }

    /// Reduce an integer into the field.
    #[inline]
    pub fn el(&self, v: u64) -> Fe {
        Fe {
            v: (v % self.p as u64) as u8,
            p: self.p,
        }
    }

    /// Reduce a signed integer into the field.
    #[inline]
    pub fn el_i(&self, v: i64) -> Fe {
        let p = self.p as i64;
        Fe {
            v: v.rem_euclid(p) as u8,
            p: self.p,
        }
    }

    #[inline]
    pub fn zero(&self) -> Fe {
        self.el(0)
    }

    #[inline]
    pub fn one(&self) -> Fe {
        self.el(1)
    }

    /// All field elements, ascending.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        let p = self.p;
        (0..p).map(move |v| Fe { v, p })
    }
}

/// An element of GF(p), kept reduced into `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe {
    v: u8,
    p: u8,
}

impl Fe {
    #[inline]
    pub fn val(&self) -> u64 {
        self.v as u64
    }

    #[inline]
    pub fn raw(&self) -> u8 {
        self.v
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p as u64
    }

    #[inline]
    pub fn fp(&self) -> Fp {
        Fp { p: self.p }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.v == 0
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Fe> {
        if self.v == 0 {
            return Err(Error::NoInverse);
        }
        // Extended Euclid on (p, v).
        let (mut t, mut new_t) = (0i32, 1i32);
        let (mut r, mut new_r) = (self.p as i32, self.v as i32);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        Ok(Fe {
            v: t.rem_euclid(self.p as i32) as u8,
            p: self.p,
        })
    }

    pub fn pow(&self, mut e: u64) -> Fe {
        let mut base = *self;
        let mut acc = self.fp().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

#[inline]
fn check_ctx(a: Fe, b: Fe) {
    assert_eq!(a.p, b.p, "mixed GF(p) contexts: p={} vs p={}", a.p, b.p);
}

impl Add for Fe {
    type Output = Fe;
    #[inline]
    fn add(self, rhs: Fe) -> Fe {
        check_ctx(self, rhs);
        let s = self.v as u16 + rhs.v as u16;
        let p = self.p as u16;
        Fe {
            v: (if s >= p { s - p } else { s }) as u8,
            p: self.p,
        }
    }
}

impl Sub for Fe {
    type Output = Fe;
    #[inline]
    fn sub(self, rhs: Fe) -> Fe {
        check_ctx(self, rhs);
        let s = self.v as i16 - rhs.v as i16;
        let p = self.p as i16;
        Fe {
            v: (if s < 0 { s + p } else { s }) as u8,
            p: self.p,
        }
    }
}

impl Mul for Fe {
    type Output = Fe;
    #[inline]
    fn mul(self, rhs: Fe) -> Fe {
        check_ctx(self, rhs);
        Fe {
            v: ((self.v as u16 * rhs.v as u16) % self.p as u16) as u8,
            p: self.p,
        }
    }
}

impl Neg for Fe {
    type Output = Fe;
    #[inline]
    fn neg(self) -> Fe {
        Fe {
            v: if self.v == 0 { 0 } else { self.p - self.v },
            p: self.p,
        }
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

/// A polynomial over GF(p), coefficients lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    coeffs: Vec<Fe>,
}

impl Poly {
    /// Build from coefficients (lowest degree first); trailing zeros trimmed.
    pub fn new(mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last().is_some_and(Fe::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_u64(fp: &Fp, coeffs: &[u64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| fp.el(c)).collect())
    }

    /// x - c
    pub fn linear(c: Fe) -> Poly {
        Poly::new(vec![-c, c.fp().one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<Fe> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.val() == 1)
    }

    pub fn eval(&self, x: Fe) -> Fe {
        let mut acc = x.fp().zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = self
            .coeffs
            .first()
            .or_else(|| rhs.coeffs.first())
            .map(|c| c.fp().zero());
        let Some(zero) = zero else {
            return Poly::zero();
        };
        let mut out = vec![zero; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(zero);
            let b = rhs.coeffs.get(i).copied().unwrap_or(zero);
            *slot = a + b;
        }
        Poly::new(out)
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let zero = self.coeffs[0].fp().zero();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Poly::new(out)
    }

    /// Long division: returns (quotient, remainder). Panics on zero divisor.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        if self.is_zero() || self.degree().unwrap() < dd {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = divisor.leading().unwrap().inv().unwrap();
        let zero = lead_inv.fp().zero();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![zero; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let factor = rem[i] * lead_inv;
            quot[i - dd] = factor;
            if factor.is_zero() {
                continue;
            }
            for (j, &c) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = rem[i - dd + j] - factor * c;
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact divisibility.
    pub fn divides(&self, other: &Poly) -> bool {
        other.divrem(self).1.is_zero()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.val()) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "x")?,
                (1, v) => write!(f, "{v}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                (_, v) => write!(f, "{v}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Multiplicative inverse in GF(p); errors on zero.
pub fn fp_inv(a: Fe) -> Result<Fe> {
    a.inv()
}

/// All roots of `q` in GF(p), ascending, by exhaustive evaluation.
/// Multiplicities are recoverable by repeated division by `x - root`.
pub fn poly_roots(q: &Poly) -> Result<Vec<Fe>> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fp = q.coeffs()[0].fp();
    Ok(fp.elements().filter(|&x| q.eval(x).is_zero()).collect())
}

/// Irreducibility over GF(p) for degrees 1..=3: degree 1 is always
/// irreducible; degrees 2 and 3 are irreducible iff they have no root.
/// The root criterion is invalid beyond cubics, so other degrees error.
pub fn poly_is_irreducible(q: &Poly) -> Result<bool> {
    match q.degree() {
        Some(1) => Ok(true),
        Some(d @ (2 | 3)) => {
            let _ = d;
            Ok(poly_roots(q)?.is_empty())
        }
        Some(d) => Err(Error::UnsupportedDegree(d)),
        None => Err(Error::ZeroPolynomial),
    }
}
