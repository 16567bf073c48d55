//! The graph on point-line pairs of PG(2,p) that is isomorphic to the
//! subgraph of the compressed commuting graph induced on vertices of types
//! (B) and (E), together with the bijections tying pairs to subrings.
//!
//! A pair (P, L) has kind B when P is off L and kind E when P lies on L.
//! For distinct pairs the edge relation reduces to the two containments
//! P2 in L1 and P1 in L2; [`delta_edge`] implements the full five-condition
//! characterization literally and [`delta_edge_simplified`] the reduction.
//! Their exhaustive agreement is enforced by tests.

use crate::error::{Error, Result};
use crate::field::Fe;
use crate::graph::Csr;
use crate::linalg::GfMat;
use crate::matrix::{image_kernel, Mat3, SubringKey, Subspace};
use crate::classify::{classify_type, MatrixType};
use crate::projective::{ProjLine, ProjPoint, ProjectivePlane};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PairKind {
    B,
    E,
}

/// A vertex of the pair graph: indices into a plane's point and line lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PointLinePair {
    pub point: u32,
    pub line: u32,
}

impl PointLinePair {
    pub fn kind(&self, plane: &ProjectivePlane) -> PairKind {
        if plane.incident_ids(self.point, self.line) {
            PairKind::E
        } else {
            PairKind::B
        }
    }

    /// Index in the lexicographic (point, line) vertex order.
    #[inline]
    pub fn index(&self, plane: &ProjectivePlane) -> u32 {
        self.point * plane.size() as u32 + self.line
    }

    pub fn from_index(plane: &ProjectivePlane, idx: u32) -> PointLinePair {
        let n = plane.size() as u32;
        PointLinePair {
            point: idx / n,
            line: idx % n,
        }
    }
}

/// Literal implementation of the five-way edge characterization.
pub fn delta_edge(plane: &ProjectivePlane, a: &PointLinePair, b: &PointLinePair) -> bool {
    let (p1, l1) = (a.point, a.line);
    let (p2, l2) = (b.point, b.line);
    let inc = |pt: u32, ln: u32| plane.incident_ids(pt, ln);

    // (a) the loop
    if p1 == p2 && l1 == l2 {
        return true;
    }
    // (b) both pairs incident and sharing a point or a line
    if inc(p1, l1) && inc(p2, l2) && (p1 == p2 || l1 == l2) {
        return true;
    }
    if p1 != p2 && l1 != l2 {
        // (c)
        if inc(p2, l1) && inc(p2, l2) && inc(p1, l2) && !inc(p1, l1) {
            return true;
        }
        // (d)
        if inc(p1, l1) && inc(p1, l2) && inc(p2, l1) && !inc(p2, l2) {
            return true;
        }
        // (e)
        if inc(p1, l2) && !inc(p1, l1) && inc(p2, l1) && !inc(p2, l2) {
            return true;
        }
    }
    false
}

/// Fast path: for distinct pairs the edge relation is exactly
/// P2 in L1 and P1 in L2. Cross-checked against [`delta_edge`] in tests.
pub fn delta_edge_simplified(
    plane: &ProjectivePlane,
    a: &PointLinePair,
    b: &PointLinePair,
) -> bool {
    if a == b {
        return true;
    }
    plane.incident_ids(b.point, a.line) && plane.incident_ids(a.point, b.line)
}

/// The full pair graph with loops on every vertex.
#[derive(Clone, Debug)]
pub struct DeltaGraph {
    plane: ProjectivePlane,
    pairs: Vec<PointLinePair>,
    adj: Csr,
}

impl DeltaGraph {
    pub fn plane(&self) -> &ProjectivePlane {
        &self.plane
    }

    pub fn pairs(&self) -> &[PointLinePair] {
        &self.pairs
    }

    pub fn pair(&self, idx: u32) -> &PointLinePair {
        &self.pairs[idx as usize]
    }

    pub fn kind(&self, idx: u32) -> PairKind {
        self.pairs[idx as usize].kind(&self.plane)
    }

    pub fn adj(&self) -> &Csr {
        &self.adj
    }

    pub fn vertex_count(&self) -> usize {
        self.pairs.len()
    }
}

/// Build the pair graph for PG(2,p) in lexicographic (point, line) order.
/// Adjacency of (P1, L1) is enumerated structurally: the neighbors are the
/// pairs (P2, L2) with P2 on L1 and L2 through P1, plus the loop.
pub fn build_delta(p: u64) -> Result<DeltaGraph> {
    let plane = ProjectivePlane::new(p)?;
    let n = plane.size() as u32;
    let pairs: Vec<PointLinePair> = (0..n * n)
        .map(|idx| PointLinePair::from_index(&plane, idx))
        .collect();
    let adj = Csr::from_emitter(pairs.len(), |f| {
        for a in &pairs {
            let u = a.index(&plane);
            f(u, u); // loop
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
    });
    Ok(DeltaGraph { plane, pairs, adj })
}

fn outer_product(point: [Fe; 3], dual: [Fe; 3]) -> Mat3 {
    let fp = point[0].fp();
    let mut m = Mat3::zero(&fp);
    for r in 0..3 {
        for c in 0..3 {
            m.set(r, c, point[r] * dual[c]);
        }
    }
    m
}

/// Canonical rank-1 matrix attached to a pair: for kind B the idempotent
/// projector onto the point along the line; for kind E the nilpotent
/// outer product of the normalized point and dual vectors.
pub fn psi(plane: &ProjectivePlane, pair: &PointLinePair) -> Mat3 {
    let u = plane.point(pair.point).coords();
    let v = plane.line(pair.line).dual_coords();
    let dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    let m = outer_product(u, v);
    match pair.kind(plane) {
        PairKind::B => m.scale(dot.inv().expect("kind B has point off line")),
        PairKind::E => m,
    }
}

fn point_of_subspace(plane: &ProjectivePlane, s: &Subspace) -> u32 {
    assert_eq!(s.dim(), 1);
    let b = s.basis()[0];
    plane.point_id(&ProjPoint::new(b).unwrap())
}

fn line_of_kernel(plane: &ProjectivePlane, s: &Subspace) -> u32 {
    assert_eq!(s.dim(), 2);
    let rows: Vec<Vec<Fe>> = s.basis().iter().map(|v| v.to_vec()).collect();
    let ns = GfMat::from_rows(rows).nullspace(&plane.fp());
    assert_eq!(ns.len(), 1);
    let ln = ProjLine::new([ns[0][0], ns[0][1], ns[0][2]]).unwrap();
    plane.line_id(&ln)
}

/// Recover the pair of a type-B or type-E subring: locate its rank-1
/// idempotent (unique for B) or a rank-1 nilpotent (unique up to scalars
/// for E) and take the (image, kernel) pair. Errors for other types.
pub fn phi(plane: &ProjectivePlane, key: &SubringKey) -> Result<PointLinePair> {
    let fp = plane.fp();
    assert_eq!(fp.p(), key.p(), "plane and key moduli differ");
    let elements = key.elements(&fp);
    let ty = classify_type(
        elements
            .iter()
            .find(|m| crate::matrix::subring_key(m) == *key)
            .expect("every key has a generator"),
    );
    let witness = match ty {
        MatrixType::B => elements
            .iter()
            .find(|m| m.rank() == 1 && **m * **m == **m),
        MatrixType::E => elements
            .iter()
            .find(|m| !m.is_zero() && (**m * **m).is_zero()),
        other => return Err(Error::PhiUndefined(other)),
    }
    .expect("type B/E subrings contain a rank-1 witness");
    let (image, kernel) = image_kernel(witness);
    Ok(PointLinePair {
        point: point_of_subspace(plane, &image),
        line: line_of_kernel(plane, &kernel),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::subring_key;

    fn pair_by_coords(
        plane: &ProjectivePlane,
        point: [u64; 3],
        dual: [u64; 3],
    ) -> PointLinePair {
        let fp = plane.fp();
        let pt = ProjPoint::new([fp.el(point[0]), fp.el(point[1]), fp.el(point[2])]).unwrap();
        let ln = ProjLine::new([fp.el(dual[0]), fp.el(dual[1]), fp.el(dual[2])]).unwrap();
        PointLinePair {
            point: plane.point_id(&pt),
            line: plane.line_id(&ln),
        }
    }

    #[test]
    fn edge_examples() {
        let plane = ProjectivePlane::new(2).unwrap();
        // loops
        let a = pair_by_coords(&plane, [1, 0, 0], [1, 0, 0]);
        assert!(delta_edge(&plane, &a, &a));
        // two B pairs joined through condition (e)
        let b = pair_by_coords(&plane, [0, 1, 0], [0, 1, 0]);
        assert!(delta_edge(&plane, &a, &b));
        // two E pairs sharing their point
        let e1 = pair_by_coords(&plane, [1, 0, 0], [0, 0, 1]);
        let e2 = pair_by_coords(&plane, [1, 0, 0], [0, 1, 0]);
        assert!(delta_edge(&plane, &e1, &e2));
        // a B and an E pair sharing the point but failing every containment
        let b1 = pair_by_coords(&plane, [1, 0, 0], [1, 0, 0]);
        assert!(!delta_edge(&plane, &b1, &e2));
    }

    #[test]
    fn simplified_predicate_agrees_exhaustively() {
        for p in [2u64, 3] {
            let plane = ProjectivePlane::new(p).unwrap();
            let n = plane.size() as u32;
            for ai in 0..n * n {
                let a = PointLinePair::from_index(&plane, ai);
                for bi in 0..n * n {
                    let b = PointLinePair::from_index(&plane, bi);
                    assert_eq!(
                        delta_edge(&plane, &a, &b),
                        delta_edge_simplified(&plane, &a, &b),
                        "p={p} a={a:?} b={b:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn vertex_counts() {
        let d2 = build_delta(2).unwrap();
        assert_eq!(d2.vertex_count(), 49);
        let d3 = build_delta(3).unwrap();
        assert_eq!(d3.vertex_count(), 169);

        for (d, p) in [(&d2, 2u64), (&d3, 3)] {
            let n = p * p + p + 1;
            let b_count = d
                .pairs()
                .iter()
                .filter(|pr| pr.kind(d.plane()) == PairKind::B)
                .count() as u64;
            assert_eq!(b_count, p * p * n);
            assert_eq!(d.vertex_count() as u64 - b_count, (p + 1) * n);
        }
    }

    #[test]
    fn adjacency_matches_predicate() {
        let d = build_delta(2).unwrap();
        let n = d.vertex_count() as u32;
        for u in 0..n {
            for v in 0..n {
                assert_eq!(
                    d.adj().has_edge(u, v),
                    delta_edge(d.plane(), d.pair(u), d.pair(v))
                );
            }
        }
    }

    #[test]
    fn neighbor_counts_by_kind() {
        // B vertices see p+1 E neighbors; E vertices see 2p+1 E neighbors
        // (counting themselves through the loop).
        for p in [2u64, 3] {
            let d = build_delta(p).unwrap();
            for u in 0..d.vertex_count() as u32 {
                let e_neighbors = d
                    .adj()
                    .neighbors(u)
                    .iter()
                    .filter(|&&v| d.kind(v) == PairKind::E)
                    .count() as u64;
                match d.kind(u) {
                    PairKind::B => assert_eq!(e_neighbors, p + 1),
                    PairKind::E => assert_eq!(e_neighbors, 2 * p + 1),
                }
            }
        }
    }

    #[test]
    fn psi_examples() {
        let plane = ProjectivePlane::new(2).unwrap();
        let fp = plane.fp();
        let b = pair_by_coords(&plane, [1, 0, 0], [1, 0, 0]);
        assert_eq!(psi(&plane, &b), Mat3::unit(&fp, 1, 1));
        let e = pair_by_coords(&plane, [1, 0, 0], [0, 1, 0]);
        assert_eq!(psi(&plane, &e), Mat3::unit(&fp, 1, 2));
    }

    #[test]
    fn psi_has_prescribed_image_and_kernel() {
        for p in [2u64, 3] {
            let plane = ProjectivePlane::new(p).unwrap();
            let n = plane.size() as u32;
            for idx in 0..n * n {
                let pair = PointLinePair::from_index(&plane, idx);
                let m = psi(&plane, &pair);
                let (img, ker) = image_kernel(&m);
                assert_eq!(point_of_subspace(&plane, &img), pair.point);
                assert_eq!(line_of_kernel(&plane, &ker), pair.line);
            }
        }
    }

    #[test]
    fn phi_examples() {
        let plane = ProjectivePlane::new(2).unwrap();
        let fp = plane.fp();
        let key = subring_key(&Mat3::diag(&fp, [0, 1, 1]));
        let pair = phi(&plane, &key).unwrap();
        assert_eq!(pair, pair_by_coords(&plane, [1, 0, 0], [1, 0, 0]));

        let key = subring_key(&Mat3::unit(&fp, 1, 2));
        let pair = phi(&plane, &key).unwrap();
        assert_eq!(pair, pair_by_coords(&plane, [1, 0, 0], [0, 1, 0]));

        // undefined off types B and E
        assert!(phi(&plane, &subring_key(&Mat3::identity(&fp))).is_err());
    }

    #[test]
    fn phi_inverts_psi() {
        for p in [2u64, 3] {
            let plane = ProjectivePlane::new(p).unwrap();
            let n = plane.size() as u32;
            for idx in 0..n * n {
                let pair = PointLinePair::from_index(&plane, idx);
                let key = subring_key(&psi(&plane, &pair));
                assert_eq!(phi(&plane, &key).unwrap(), pair);
            }
        }
    }

    #[test]
    fn edges_are_algebraic_commutation() {
        for p in [2u64, 3] {
            let d = build_delta(p).unwrap();
            let mats: Vec<Mat3> = d.pairs().iter().map(|pr| psi(d.plane(), pr)).collect();
            for u in 0..d.vertex_count() {
                for v in 0..d.vertex_count() {
                    assert_eq!(
                        d.adj().has_edge(u as u32, v as u32),
                        mats[u].commutes_with(&mats[v]),
                        "p={p} u={u} v={v}"
                    );
                }
            }
        }
    }

    #[test]
    fn two_by_two_submatrix_patterns() {
        // Within any 2x2 submatrix of the incidence structure (two points,
        // two lines): same-row or same-column pairs are adjacent iff both
        // are incident; diagonal pairs are adjacent iff the other two
        // entries are both incident.
        let plane = ProjectivePlane::new(2).unwrap();
        let n = plane.size() as u32;
        for p1 in 0..n {
            for p2 in (p1 + 1)..n {
                for l1 in 0..n {
                    for l2 in (l1 + 1)..n {
                        let pair = |pt, ln| PointLinePair { point: pt, line: ln };
                        let inc = |pt, ln| plane.incident_ids(pt, ln);
                        // same row
                        assert_eq!(
                            delta_edge(&plane, &pair(p1, l1), &pair(p1, l2)),
                            inc(p1, l1) && inc(p1, l2)
                        );
                        // same column
                        assert_eq!(
                            delta_edge(&plane, &pair(p1, l1), &pair(p2, l1)),
                            inc(p1, l1) && inc(p2, l1)
                        );
                        // diagonals
                        assert_eq!(
                            delta_edge(&plane, &pair(p1, l1), &pair(p2, l2)),
                            inc(p1, l2) && inc(p2, l1)
                        );
                        assert_eq!(
                            delta_edge(&plane, &pair(p1, l2), &pair(p2, l1)),
                            inc(p1, l1) && inc(p2, l2)
                        );
                    }
                }
            }
        }
    }
}
