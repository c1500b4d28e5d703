//! Covering and tiling checks in Z^d, fundamental regions, efficiencies, and
//! the exact real-geometry certificates.

mod certificate;
mod simplex;

pub use certificate::{
    certify_local_optimality, thm16, thm20, Certificate, CertificateReport, CheckOutcome,
    ConeDecomposition, Monomial,
};
pub use simplex::{
    face_coverage, l7_combinations, l7_generators, l7_translates, verify_simplex_cover,
    verify_simplex_cover_l7, FaceCell, FaceCoverage, SimplexCoverCheck, FACE_LEVEL,
};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{diameter, AbelianGroup, GeneratorSet, Mode};
use crate::lattices::{hnf_of_generators, quotient_structure, Lattice, QuotientStructure};
use crate::rational::{int, ratio, to_fixed, Rational};
use crate::shapes::{real_volume, Shape, ShapeKind};

/// Conjectured optimal real covering efficiency for the 3-D octahedron.
pub const CONJECTURED_EPS_R_OCTA: (i64, i64) = (8, 9);
/// Conjectured optimal real covering efficiency for the 3-D tetrahedron.
pub const CONJECTURED_EPS_R_TETRA: (i64, i64) = (63, 125);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub covers: bool,
    pub index: u64,
    pub shape_size: u64,
    /// index / shape_size.
    #[serde(with = "crate::rational::as_string")]
    pub efficiency_discrete: Rational,
    /// index / volume of the padded real body; absent for the order-2 ball.
    #[serde(with = "crate::rational::as_string::option")]
    pub efficiency_real: Option<Rational>,
    pub is_tiling: bool,
}

impl CoverReport {
    /// shape_size / index, the covering density.
    pub fn density(&self) -> Rational {
        ratio(self.shape_size as i64, self.index as i64)
    }
}

fn mode_for(kind: ShapeKind) -> Mode {
    match kind {
        ShapeKind::Tetrahedron => Mode::Directed,
        _ => Mode::Undirected,
    }
}

/// Padded radius of the real body that a discrete covering of radius k
/// guarantees: k + d/2 for octahedra, k + d for tetrahedra.
pub fn padded_radius(kind: ShapeKind, d: usize, k: u64) -> Rational {
    match kind {
        ShapeKind::Tetrahedron => int((k + d as u64) as i64),
        _ => int(k as i64) + ratio(d as i64, 2),
    }
}

pub fn real_efficiency(kind: ShapeKind, d: usize, k: u64, n: u64) -> Result<Rational> {
    let vol = real_volume(kind, d, &padded_radius(kind, d, k))?;
    Ok(int(n as i64) / vol)
}

/// Does S + L = Z^d? Decided by BFS on Z^d / L with the images of e_i.
pub fn covers(l: &Lattice, shape: &Shape) -> Result<CoverReport> {
    if shape.kind == ShapeKind::Order2Ball {
        return Err(Error::Argument("order-2 balls need a coset vector; use covers_order2".into()));
    }
    if shape.dim != l.dim() {
        return Err(Error::Argument("shape and lattice dimensions differ".into()));
    }
    let q = quotient_structure(l)?;
    let gens = GeneratorSet::new(q.images.clone(), None, mode_for(shape.kind));
    let res = diameter(&q.group, &gens)?;
    let covered = res.diameter.is_some_and(|dm| dm <= shape.radius);
    let index = q.group.order();
    let size = shape.size()?;
    Ok(CoverReport {
        covers: covered,
        index,
        shape_size: size,
        efficiency_discrete: ratio(index as i64, size as i64),
        efficiency_real: Some(real_efficiency(shape.kind, shape.dim, shape.radius, index)?),
        is_tiling: covered && index == size,
    })
}

/// The quotient (Z^d x Z_2) / N with N generated by L x {0} and (g, 1).
/// The returned images have d + 1 entries, the last being the order-2
/// element rho.
pub fn extended_quotient(l: &Lattice, g: &[i64]) -> Result<QuotientStructure> {
    let d = l.dim();
    if g.len() != d {
        return Err(Error::Argument("coset vector has the wrong dimension".into()));
    }
    let twice: Vec<i64> = g.iter().map(|x| 2 * x).collect();
    if !l.contains(&twice)? {
        return Err(Error::Argument("2g must lie in the lattice".into()));
    }
    if l.contains(g)? {
        return Err(Error::Argument("g lies in the lattice, so the order-2 generator is trivial".into()));
    }
    let mut rows: Vec<Vec<i64>> = l
        .basis()
        .iter()
        .map(|r| {
            let mut v = r.clone();
            v.push(0);
            v
        })
        .collect();
    let mut lifted = g.to_vec();
    lifted.push(1);
    rows.push(lifted);
    let mut two = vec![0; d + 1];
    two[d] = 2;
    rows.push(two);
    let ext = Lattice::new(hnf_of_generators(&rows)?)?;
    quotient_structure(&ext)
}

/// Condition (S_k + L) u (S_{k-1} + g + L) = Z^d, given 2g in L.
pub fn covers_order2(l: &Lattice, g: &[i64], k: u64) -> Result<CoverReport> {
    let shape = Shape::new(ShapeKind::Order2Ball, l.dim(), k)?;
    let q = extended_quotient(l, g)?;
    let d = l.dim();
    let gens = GeneratorSet::new(q.images[..d].to_vec(), Some(q.images[d].clone()), Mode::Undirected);
    let res = diameter(&q.group, &gens)?;
    let covered = res.diameter.is_some_and(|dm| dm <= k);
    let index = l.index()?;
    debug_assert_eq!(index, q.group.order());
    let size = shape.size()?;
    Ok(CoverReport {
        covers: covered,
        index,
        shape_size: size,
        efficiency_discrete: ratio(index as i64, size as i64),
        efficiency_real: None,
        is_tiling: covered && index == size,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalRegion {
    /// Lexicographically sorted points of T.
    pub points: Vec<Vec<i64>>,
    #[serde(skip)]
    pub order_direction: Vec<Rational>,
}

/// Fundamental region: the points of S that are not in S + v for any lattice
/// vector v > 0. Within each coset that is exactly the least point of S under
/// the order (direction . x, then lexicographic).
pub fn fundamental_region(l: &Lattice, shape: &Shape, direction: &[Rational]) -> Result<FundamentalRegion> {
    if direction.len() != l.dim() {
        return Err(Error::Argument("direction has the wrong dimension".into()));
    }
    let report = covers(l, shape)?;
    if !report.covers {
        return Err(Error::Argument("lattice does not cover with this shape".into()));
    }
    let q = quotient_structure(l)?;
    let mut best: HashMap<u64, (Rational, Vec<i64>)> = HashMap::new();
    for p in shape.enumerate()? {
        let key: Rational = p.iter().zip(direction).map(|(&x, w)| int(x) * w).sum();
        let class = q.group.index_of(&q.map(&p));
        match best.get(&class) {
            Some((bk, bp)) if (bk, bp) <= (&key, &p) => {}
            _ => {
                best.insert(class, (key, p));
            }
        }
    }
    let mut points: Vec<Vec<i64>> = best.into_values().map(|(_, p)| p).collect();
    points.sort();
    debug_assert_eq!(points.len() as u64, report.index);
    Ok(FundamentalRegion { points, order_direction: direction.to_vec() })
}

pub fn default_direction(d: usize) -> Vec<Rational> {
    vec![int(1); d]
}

/// Whether the quotient map is a bijection from `points` onto Z^d / L.
pub fn is_bijective_on(l: &Lattice, points: &[Vec<i64>]) -> Result<bool> {
    let q = quotient_structure(l)?;
    let mut seen = std::collections::HashSet::new();
    for p in points {
        if !seen.insert(q.group.index_of(&q.map(p))) {
            return Ok(false);
        }
    }
    Ok(seen.len() as u64 == q.group.order())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportInput {
    pub d: usize,
    pub k: u64,
    pub n: u64,
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EfficiencyRow {
    pub k: u64,
    pub n: u64,
    #[serde(with = "crate::rational::as_string")]
    pub eff_discrete: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub eff_real: Rational,
}

impl EfficiencyRow {
    /// Six-decimal renderings of (eff_discrete, eff_real).
    pub fn rendered(&self) -> (String, String) {
        (to_fixed(&self.eff_discrete, 6), to_fixed(&self.eff_real, 6))
    }
}

pub fn covering_report_table(rows: &[ReportInput]) -> Result<Vec<EfficiencyRow>> {
    rows.iter()
        .map(|r| {
            let kind = match r.mode {
                Mode::Directed => ShapeKind::Tetrahedron,
                Mode::Undirected => ShapeKind::Octahedron,
            };
            let size = Shape::new(kind, r.d, r.k)?.size()?;
            Ok(EfficiencyRow {
                k: r.k,
                n: r.n,
                eff_discrete: ratio(r.n as i64, size as i64),
                eff_real: real_efficiency(kind, r.d, r.k, r.n)?,
            })
        })
        .collect()
}

/// Group order must match the covering index; used by callers that build
/// quotient groups themselves.
pub fn check_index(group: &AbelianGroup, l: &Lattice) -> Result<()> {
    if group.order() != l.index()? {
        return Err(Error::Degenerate(format!("group {group} does not match lattice index")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lbcc(a: [i64; 3]) -> Lattice {
        Lattice::from_rows(&[[2 * a[0], 0, 0], [0, 2 * a[1], 0], [a[0], a[1], a[2]]]).unwrap()
    }

    fn l7() -> Lattice {
        Lattice::from_rows(&[[-2, 2, 2], [3, -3, 3], [4, 3, -1]]).unwrap()
    }

    /// Direct definition: every coset of L meets the shape.
    fn covers_direct(l: &Lattice, shape: &Shape) -> bool {
        let q = quotient_structure(l).unwrap();
        let hit: std::collections::HashSet<u64> =
            shape.enumerate().unwrap().iter().map(|p| q.group.index_of(&q.map(p))).collect();
        hit.len() as u64 == q.group.order()
    }

    #[test]
    fn cover_examples() {
        let r = covers(&lbcc([2, 2, 3]), &Shape::octahedron(3, 3)).unwrap();
        assert!(r.covers);
        assert_eq!(r.index, 48);
        let k = 4;
        let t = Lattice::from_rows(&[[k, k + 1], [-k - 1, k]]).unwrap();
        let r = covers(&t, &Shape::octahedron(2, 4)).unwrap();
        assert!(r.covers && r.is_tiling);
        assert_eq!(r.index, 41);
        let r = covers(&Lattice::identity(3), &Shape::tetrahedron(3, 0)).unwrap();
        assert!(r.covers);
        assert_eq!(r.index, 1);
        let k = 3;
        let o2 = Lattice::from_rows(&[[2 * k + 1, 1], [-1, 2 * k - 1]]).unwrap();
        let r = covers_order2(&o2, &[k, k], k as u64).unwrap();
        assert!(r.covers);
        assert_eq!(r.index, 36);
    }

    #[test]
    fn agrees_with_direct_definition() {
        for (l, kinds) in [
            (l7(), vec![Shape::tetrahedron(3, 6), Shape::tetrahedron(3, 7), Shape::octahedron(3, 3)]),
            (lbcc([2, 2, 3]), vec![Shape::octahedron(3, 2), Shape::octahedron(3, 3)]),
        ] {
            for s in kinds {
                assert_eq!(covers(&l, &s).unwrap().covers, covers_direct(&l, &s), "{s:?}");
            }
        }
    }

    #[test]
    fn region_examples() {
        let t = fundamental_region(&l7(), &Shape::tetrahedron(3, 10), &default_direction(3)).unwrap();
        assert_eq!(t.points.len(), 84);
        assert!(is_bijective_on(&l7(), &t.points).unwrap());
        let l = Lattice::from_rows(&[[1, 1], [2, -1]]).unwrap();
        let t = fundamental_region(&l, &Shape::tetrahedron(2, 1), &default_direction(2)).unwrap();
        assert_eq!(t.points, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        let t = fundamental_region(&Lattice::identity(3), &Shape::tetrahedron(3, 4), &default_direction(3)).unwrap();
        assert_eq!(t.points, vec![vec![0, 0, 0]]);
        // for a symmetric shape the single point is the least one under the order
        let t = fundamental_region(&Lattice::identity(2), &Shape::octahedron(2, 3), &[int(2), ratio(-1, 3)]).unwrap();
        assert_eq!(t.points, vec![vec![-3, 0]]);
        assert!(fundamental_region(&l7(), &Shape::tetrahedron(3, 5), &default_direction(3)).is_err());
    }

    /// The defining condition taken literally, by pairwise differences.
    #[test]
    fn region_matches_literal_definition() {
        let l = l7();
        let s = Shape::tetrahedron(3, 8);
        let pts = s.enumerate().unwrap();
        let positive = |v: &[i64]| {
            let sum: i64 = v.iter().sum();
            sum > 0 || (sum == 0 && v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0))
        };
        let literal: Vec<Vec<i64>> = pts
            .iter()
            .filter(|p| {
                !pts.iter().any(|q| {
                    let v: Vec<i64> = p.iter().zip(q.iter()).map(|(a, b)| a - b).collect();
                    positive(&v) && l.contains(&v).unwrap()
                })
            })
            .cloned()
            .collect();
        let t = fundamental_region(&l, &s, &default_direction(3)).unwrap();
        assert_eq!(t.points, literal);
    }

    #[test]
    fn report_rows() {
        let rows = covering_report_table(&[
            ReportInput { d: 3, k: 10, n: 1393, mode: Mode::Undirected },
            ReportInput { d: 3, k: 7, n: 84, mode: Mode::Directed },
            ReportInput { d: 3, k: 0, n: 1, mode: Mode::Directed },
        ])
        .unwrap();
        assert_eq!(rows[0].rendered(), ("0.892377".into(), "0.686940".into()));
        assert_eq!(rows[1].rendered().1, "0.504000");
        assert_eq!(rows[2].rendered().1, "0.222222");
        assert_eq!(rows[2].eff_real, ratio(2, 9));
    }
}
