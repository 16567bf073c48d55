//! Dense row-reduction over GF(p): RREF, rank, nullspace, exact solve.
//!
//! Everything here canonicalizes: the reduced row echelon form is unique, so
//! two subspaces are equal iff their RREF bases are equal as data.

use crate::field::{Fe, Fp};

/// A dense matrix over GF(p) with runtime dimensions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GfMat {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl GfMat {
    pub fn zeros(fp: &Fp, rows: usize, cols: usize) -> GfMat {
        GfMat {
            rows,
            cols,
            data: vec![fp.zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Fe>>) -> GfMat {
        assert!(!rows.is_empty());
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols));
        let nrows = rows.len();
        GfMat {
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..self.cols {
            if lead == self.rows {
                break;
            }
            // find a pivot in this column
            let Some(pr) = (lead..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(lead, pr);
            let inv = self.at(lead, col).inv().unwrap();
            for c in col..self.cols {
                let v = self.at(lead, c) * inv;
                self.set(lead, c, v);
            }
            for r in 0..self.rows {
                if r != lead && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col);
                    for c in col..self.cols {
                        let v = self.at(r, c) - factor * self.at(lead, c);
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            lead += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            let (x, y) = (self.at(a, c), self.at(b, c));
            self.set(a, c, y);
            self.set(b, c, x);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Canonical basis of the row space: the nonzero rows of the RREF.
    pub fn row_space_basis(&self) -> Vec<Vec<Fe>> {
        let mut m = self.clone();
        let pivots = m.rref();
        (0..pivots.len()).map(|r| m.row(r).to_vec()).collect()
    }

    /// Basis of the right nullspace, canonicalized by a final RREF.
    pub fn nullspace(&self, fp: &Fp) -> Vec<Vec<Fe>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![fp.zero(); self.cols];
            vec[free] = fp.one();
            for (c, slot) in pivot_of_col.iter().enumerate() {
                if let Some(r) = slot {
                    vec[c] = -m.at(*r, free);
                }
            }
            basis.push(vec);
        }
        if basis.is_empty() {
            return basis;
        }
        GfMat::from_rows(basis).row_space_basis()
    }

    /// Solve `self * x = rhs` exactly; `None` if inconsistent.
    /// With fewer pivots than columns an arbitrary consistent solution is
    /// returned (free variables set to zero).
    pub fn solve(&self, rhs: &[Fe], fp: &Fp) -> Option<Vec<Fe>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = GfMat::zeros(fp, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c));
            }
            aug.set(r, self.cols, rhs[r]);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None; // pivot in the rhs column: inconsistent
        }
        let mut x = vec![fp.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols);
        }
        Some(x)
    }
}
