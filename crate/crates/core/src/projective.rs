//! The projective plane PG(2,p): canonical point/line enumeration, the
//! incidence predicate, and the block-structured incidence matrix T_p.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{Fe, Fp};
use crate::linalg::GfMat;

/// A point of PG(2,p): a nonzero vector of GF(p)^3 normalized so its first
/// nonzero coordinate is 1. Exactly p^2 + p + 1 points exist.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjPoint {
    coords: [Fe; 3],
}

/// A line of PG(2,p), stored by its dual coordinates [a, b, c] (the line is
/// the kernel of the functional), normalized like a point.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjLine {
    dual: [Fe; 3],
}

fn normalize(v: [Fe; 3]) -> Option<[Fe; 3]> {
    let lead = v.iter().position(|x| !x.is_zero())?;
    let inv = v[lead].inv().unwrap();
    Some([v[0] * inv, v[1] * inv, v[2] * inv])
}

impl ProjPoint {
    pub fn new(v: [Fe; 3]) -> Option<ProjPoint> {
        normalize(v).map(|coords| ProjPoint { coords })
    }

    pub fn coords(&self) -> [Fe; 3] {
        self.coords
    }
}

impl ProjLine {
    pub fn new(dual: [Fe; 3]) -> Option<ProjLine> {
        normalize(dual).map(|dual| ProjLine { dual })
    }

    pub fn dual_coords(&self) -> [Fe; 3] {
        self.dual
    }
}

/// P lies on L iff the dual functional vanishes on the point.
pub fn incident(point: &ProjPoint, line: &ProjLine) -> bool {
    let p = point.coords;
    let l = line.dual;
    (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]).is_zero()
}

fn all_normalized(fp: &Fp) -> Vec<[Fe; 3]> {
    // (0,0,1), (0,1,*), (1,*,*) -- generated sorted lexicographically
    let mut out = Vec::with_capacity((fp.p() * fp.p() + fp.p() + 1) as usize);
    out.push([fp.zero(), fp.zero(), fp.one()]);
    for z in 0..fp.p() {
        out.push([fp.zero(), fp.one(), fp.el(z)]);
    }
    for y in 0..fp.p() {
        for z in 0..fp.p() {
            out.push([fp.one(), fp.el(y), fp.el(z)]);
        }
    }
    out.sort();
    out
}

/// Deterministic, lexicographically sorted lists of all points and lines.
pub fn enumerate_pg(p: u64) -> Result<(Vec<ProjPoint>, Vec<ProjLine>)> {
    let fp = Fp::new(p)?;
    let points = all_normalized(&fp)
        .into_iter()
        .map(|coords| ProjPoint { coords })
        .collect();
    let lines = all_normalized(&fp)
        .into_iter()
        .map(|dual| ProjLine { dual })
        .collect();
    Ok((points, lines))
}

/// PG(2,p) with incidence precomputed in both directions.
#[derive(Clone, Debug)]
pub struct ProjectivePlane {
    fp: Fp,
    points: Vec<ProjPoint>,
    lines: Vec<ProjLine>,
    point_index: HashMap<[u8; 3], u32>,
    line_index: HashMap<[u8; 3], u32>,
    /// incidence[point * n + line]
    incidence: Vec<bool>,
    points_on_line: Vec<Vec<u32>>,
    lines_through_point: Vec<Vec<u32>>,
}

fn raw(v: [Fe; 3]) -> [u8; 3] {
    [v[0].raw(), v[1].raw(), v[2].raw()]
}

impl ProjectivePlane {
    pub fn new(p: u64) -> Result<ProjectivePlane> {
        let fp = Fp::new(p)?;
        let (points, lines) = enumerate_pg(p)?;
        let n = points.len();
        let point_index = points
            .iter()
            .enumerate()
            .map(|(i, pt)| (raw(pt.coords), i as u32))
            .collect();
        let line_index = lines
            .iter()
            .enumerate()
            .map(|(i, ln)| (raw(ln.dual), i as u32))
            .collect();
        let mut incidence = vec![false; n * n];
        let mut points_on_line = vec![Vec::with_capacity(p as usize + 1); n];
        let mut lines_through_point = vec![Vec::with_capacity(p as usize + 1); n];
        for (pi, pt) in points.iter().enumerate() {
            for (li, ln) in lines.iter().enumerate() {
                if incident(pt, ln) {
                    incidence[pi * n + li] = true;
                    points_on_line[li].push(pi as u32);
                    lines_through_point[pi].push(li as u32);
                }
            }
        }
        Ok(ProjectivePlane {
            fp,
            points,
            lines,
            point_index,
            line_index,
            incidence,
            points_on_line,
            lines_through_point,
        })
    }

    #[inline]
    pub fn fp(&self) -> Fp {
        self.fp
    }

    pub fn p(&self) -> u64 {
        self.fp.p()
    }

    /// p^2 + p + 1
    #[inline]
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn point(&self, i: u32) -> &ProjPoint {
        &self.points[i as usize]
    }

    pub fn line(&self, i: u32) -> &ProjLine {
        &self.lines[i as usize]
    }

    pub fn point_id(&self, pt: &ProjPoint) -> u32 {
        self.point_index[&raw(pt.coords)]
    }

    pub fn line_id(&self, ln: &ProjLine) -> u32 {
        self.line_index[&raw(ln.dual)]
    }

    #[inline]
    pub fn incident_ids(&self, point: u32, line: u32) -> bool {
        self.incidence[point as usize * self.size() + line as usize]
    }

    pub fn points_on(&self, line: u32) -> &[u32] {
        &self.points_on_line[line as usize]
    }

    pub fn lines_through(&self, point: u32) -> &[u32] {
        &self.lines_through_point[point as usize]
    }

    /// The unique line through two distinct points.
    pub fn join(&self, a: u32, b: u32) -> u32 {
        assert_ne!(a, b);
        let pa = self.points[a as usize].coords;
        let pb = self.points[b as usize].coords;
        let m = GfMat::from_rows(vec![pa.to_vec(), pb.to_vec()]);
        let ns = m.nullspace(&self.fp);
        assert_eq!(ns.len(), 1);
        let ln = ProjLine::new([ns[0][0], ns[0][1], ns[0][2]]).unwrap();
        self.line_id(&ln)
    }
}

/// The incidence matrix of PG(2,p) in the explicit block layout: the first
/// row and column blocks carry the all-ones vector, followed by row-indicator
/// blocks, identity blocks, and the permutation blocks S_{s,t} with ones at
/// (s-1)(i+j) = t (mod p). Indices s, t, i, j run 1..=p as in the defining
/// congruence; storage is zero-based, shifted by the block offsets below.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IncidenceMatrix {
    n: usize,
    bits: Vec<u8>,
}

impl IncidenceMatrix {
    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u8 {
        self.bits[r * self.n + c]
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.bits[r * self.n..(r + 1) * self.n]
    }

    pub fn row_sum(&self, r: usize) -> u64 {
        self.row(r).iter().map(|&b| b as u64).sum()
    }

    pub fn col_sum(&self, c: usize) -> u64 {
        (0..self.n).map(|r| self.at(r, c) as u64).sum()
    }

    /// T * T^T as u64 entries.
    pub fn gram(&self) -> Vec<u64> {
        let n = self.n;
        let mut out = vec![0u64; n * n];
        for r1 in 0..n {
            for r2 in 0..n {
                let mut acc = 0u64;
                for c in 0..n {
                    acc += (self.at(r1, c) & self.at(r2, c)) as u64;
                }
                out[r1 * n + r2] = acc;
            }
        }
        out
    }
}

/// Build T_p. Row blocks: [0], [1..=p], then blocks s = 1..=p of p rows each;
/// column blocks mirror the rows.
pub fn build_tp(p: u64) -> Result<IncidenceMatrix> {
    if !crate::field::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pu = p as usize;
    let n = 1 + pu + pu * pu;
    let mut bits = vec![0u8; n * n];
    let mut set = |r: usize, c: usize| bits[r * n + c] = 1;

    // inner block t (1-based) starts at this column; same for row blocks
    let block = |t: usize| p as usize + (t - 1) * pu + 1;

    // row 0: [1 | e^T | 0 ... 0]
    set(0, 0);
    for c in 1..=pu {
        set(0, c);
    }
    // rows 1..=p: [e | 0 | R_1 ... R_p], R_t has row t all ones
    for i in 1..=pu {
        set(i, 0);
        for j in 1..=pu {
            set(i, block(i) + j - 1);
        }
    }
    // row block s = 1: [0 | R_1^T | I ... I]
    for i in 1..=pu {
        let r = block(1) + i - 1;
        set(r, 1);
        for t in 1..=pu {
            set(r, block(t) + i - 1);
        }
    }
    // row blocks s = 2..=p: [0 | R_s^T | S_{s,1} ... S_{s,p}]
    for s in 2..=pu {
        for i in 1..=pu {
            let r = block(s) + i - 1;
            set(r, s);
            for j in 1..=pu {
                let t0 = ((s as u64 - 1) * (i as u64 + j as u64)) % p;
                let t = if t0 == 0 { pu } else { t0 as usize };
                set(r, block(t) + j - 1);
            }
        }
    }
    Ok(IncidenceMatrix { n, bits })
}
