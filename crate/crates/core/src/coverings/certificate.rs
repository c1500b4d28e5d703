//! Rational certificates of local optimality for the 3-D lattices L_bcc and
//! L'_7. The determinant F(v) of the three constraint-bound vectors is
//! maximized locally at v.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattices::rational_det;
use crate::rational::{int, ratio, Rational};
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Rational,
    /// Power of each null-space parameter.
    pub powers: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeDecomposition {
    /// (normal index, coefficient) pairs; indices are 0-based.
    pub terms: Vec<(usize, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub label: String,
    pub v: Vec<Rational>,
    pub g: Vec<Rational>,
    pub normals: Vec<Vec<Rational>>,
    pub bounds: Vec<Rational>,
    pub independent: Vec<usize>,
    pub null_space: Vec<Vec<Rational>>,
    pub cone: Vec<ConeDecomposition>,
    /// F(v + sum r_j w_j) as a polynomial in the r_j.
    pub det_curve: Vec<Monomial>,
}

fn ints(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| int(x)).collect()
}

fn rows(xs: &[[i64; 9]]) -> Vec<Vec<Rational>> {
    xs.iter().map(|r| ints(r)).collect()
}

fn mono(c: i64, powers: &[u32]) -> Monomial {
    Monomial { coeff: int(c), powers: powers.to_vec() }
}

fn unit_cone(groups: &[&[usize]]) -> Vec<ConeDecomposition> {
    groups
        .iter()
        .map(|g| ConeDecomposition { terms: g.iter().map(|&i| (i, int(1))).collect() })
        .collect()
}

/// Certificate for the body-centered cubic lattice and the octahedron.
pub fn thm16() -> Certificate {
    let normals = rows(&[
        [1, 1, 1, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, -1, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 1, -1],
        [-1, 1, 1, 1, -1, -1, 1, -1, -1],
        [-1, 1, 1, 2, 0, 0, 1, 1, -1],
        [0, 2, 0, 1, -1, 1, 1, -1, -1],
        [-1, 1, 1, 1, -1, 1, 2, 0, 0],
        [1, 1, 1, 0, -2, 0, 1, -1, -1],
        [0, 0, 2, 1, -1, -1, 1, 1, -1],
        [1, 1, 1, 1, -1, -1, 0, 0, -2],
    ]);
    let mut bounds = vec![int(3); 4];
    bounds.extend(vec![int(6); 6]);
    Certificate {
        label: "thm16".into(),
        v: ints(&[1, 1, 1, 1, -1, 1, 1, 1, -1]),
        g: ints(&[0, 2, 2, 2, -2, 0, 2, 0, -2]),
        normals,
        bounds,
        independent: (0..7).collect(),
        null_space: rows(&[[1, 0, -1, 1, 0, -1, 1, 0, 1], [-1, 1, 0, -1, -1, 0, -1, 1, 0]]),
        cone: unit_cone(&[&[0, 1, 2, 3], &[4, 7], &[5, 8], &[6, 9]]),
        // 4(1-r)(1+s)(1+r-s)
        det_curve: vec![
            mono(4, &[0, 0]),
            mono(-4, &[2, 0]),
            mono(4, &[1, 1]),
            mono(-4, &[0, 2]),
            mono(-4, &[2, 1]),
            mono(4, &[1, 2]),
        ],
    }
}

/// Certificate for L'_7 and the tetrahedron.
pub fn thm20() -> Certificate {
    let normals = rows(&[
        [1, 2, 2, 1, 1, 1, 0, 0, -1],
        [1, 1, 2, 1, 0, 1, 0, 0, 0],
        [0, 1, 1, 1, 0, 1, 0, 0, 0],
        [-1, 1, 0, 1, 0, 1, 0, 0, 0],
        [-1, 0, 1, 1, 0, 0, 0, 1, 0],
        [0, -1, 1, 0, -1, 0, 1, 1, 0],
        [-1, 1, 1, -1, 0, 0, 1, 1, 0],
        [1, 0, 1, 0, -1, 0, 1, 1, 0],
        [0, 2, 1, -1, -1, 0, 1, 0, 0],
        [-2, -1, -1, 0, 0, 1, 1, 1, 0],
        [-1, 0, -1, 0, 0, 1, 1, 1, 0],
        [-1, 0, 1, -1, -1, 0, 1, 1, 1],
        [0, 1, 2, -1, -1, -1, 1, 1, 0],
    ]);
    let cone = vec![ConeDecomposition {
        terms: vec![
            (0, int(1)),
            (1, ratio(24, 5)),
            (3, ratio(32, 5)),
            (4, int(1)),
            (5, ratio(8, 5)),
            (6, ratio(16, 5)),
            (7, ratio(17, 5)),
            (8, int(1)),
            (9, ratio(9, 5)),
            (11, int(1)),
        ],
    }];
    Certificate {
        label: "thm20".into(),
        v: ints(&[-2, 2, 2, 3, -3, 3, 4, 3, -1]),
        g: ints(&[-6, 15, 21, 8, -6, 14, 12, 12, 0]),
        normals,
        bounds: vec![int(10); 13],
        independent: vec![0, 1, 3, 4, 5, 6, 7, 9],
        null_space: rows(&[[0, 0, 0, 1, 1, -1, 2, -1, 1]]),
        cone,
        det_curve: vec![mono(84, &[0]), mono(-12, &[2])],
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn as_matrix(x: &[Rational]) -> Vec<Vec<Rational>> {
    x.chunks(3).map(|c| c.to_vec()).collect()
}

fn rank(m: &[Vec<Rational>]) -> usize {
    let mut a = m.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, r);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone() / a[r][c].clone();
                for j in c..cols {
                    let t = f.clone() * a[r][j].clone();
                    a[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

impl Certificate {
    /// F at v + sum_j params[j] w_j, by direct determinant.
    pub fn det_along(&self, params: &[Rational]) -> Rational {
        let mut x = self.v.clone();
        for (p, w) in params.iter().zip(&self.null_space) {
            for (xi, wi) in x.iter_mut().zip(w) {
                *xi += p * wi;
            }
        }
        rational_det(&as_matrix(&x))
    }

    pub fn curve_value(&self, params: &[Rational]) -> Rational {
        self.det_curve
            .iter()
            .map(|m| {
                params
                    .iter()
                    .zip(&m.powers)
                    .fold(m.coeff.clone(), |acc, (p, &e)| acc * num_traits::pow(p.clone(), e as usize))
            })
            .sum()
    }

    /// Gradient of the 3x3 determinant at v, from cofactors.
    pub fn cofactor_gradient(&self) -> Vec<Rational> {
        let m = as_matrix(&self.v);
        let mut out = Vec::with_capacity(9);
        for i in 0..3 {
            for j in 0..3 {
                let r: Vec<usize> = (0..3).filter(|&t| t != i).collect();
                let c: Vec<usize> = (0..3).filter(|&t| t != j).collect();
                let minor = &m[r[0]][c[0]] * &m[r[1]][c[1]] - &m[r[0]][c[1]] * &m[r[1]][c[0]];
                out.push(if (i + j) % 2 == 0 { minor } else { -minor });
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub label: String,
    #[serde(with = "crate::rational::as_string")]
    pub f_value: Rational,
    pub checks: Vec<CheckOutcome>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<String> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect()
    }

    pub fn into_result(self) -> Result<CertificateReport> {
        if self.passed() {
            Ok(self)
        } else {
            Err(Error::CertificateInvalid { failed: self.failed() })
        }
    }
}

fn outcome(name: &str, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome { name: name.into(), passed, detail }
}

/// Evaluate every identity of the certificate exactly.
pub fn certify_local_optimality(cert: &Certificate) -> CertificateReport {
    let mut checks = Vec::new();

    let slack: Vec<usize> = cert
        .normals
        .iter()
        .zip(&cert.bounds)
        .enumerate()
        .filter(|(_, (u, b))| dot(u, &cert.v) != **b)
        .map(|(i, _)| i + 1)
        .collect();
    checks.push(outcome("tight", slack.is_empty(), format!("non-tight constraints {slack:?}")));

    let indep: Vec<Vec<Rational>> = cert.independent.iter().map(|&i| cert.normals[i].clone()).collect();
    let indep_ok = rank(&indep) == indep.len();
    let orth_ok = cert
        .null_space
        .iter()
        .all(|w| cert.normals.iter().all(|u| dot(u, w).is_zero()));
    let span_ok = rank(&cert.null_space) == cert.null_space.len()
        && indep.len() + cert.null_space.len() == cert.v.len();
    checks.push(outcome(
        "null-space",
        indep_ok && orth_ok && span_ok,
        format!("independent {indep_ok}, orthogonal {orth_ok}, spanning {span_ok}"),
    ));

    let mut cone_fail = Vec::new();
    for (n, dec) in cert.cone.iter().enumerate() {
        let mut sum = vec![Rational::zero(); cert.g.len()];
        let mut nonneg = true;
        for (i, c) in &dec.terms {
            nonneg &= !c.is_negative();
            for (s, u) in sum.iter_mut().zip(&cert.normals[*i]) {
                *s += c * u;
            }
        }
        if !nonneg || sum != cert.g {
            cone_fail.push(n + 1);
        }
    }
    checks.push(outcome("cone", cone_fail.is_empty(), format!("failing decompositions {cone_fail:?}")));

    let samples = [int(-1), int(0), ratio(1, 2), int(2)];
    let m = cert.null_space.len();
    let mut curve_ok = true;
    let mut idx = vec![0usize; m];
    'grid: loop {
        let params: Vec<Rational> = idx.iter().map(|&i| samples[i].clone()).collect();
        if cert.det_along(&params) != cert.curve_value(&params) {
            curve_ok = false;
            break;
        }
        for slot in idx.iter_mut() {
            *slot += 1;
            if *slot < samples.len() {
                continue 'grid;
            }
            *slot = 0;
        }
        break;
    }
    checks.push(outcome("det-curve", curve_ok, format!("{} sample points per parameter", samples.len())));

    let grad = cert.cofactor_gradient();
    checks.push(outcome("gradient", grad == cert.g, format!("cofactor gradient {:?}", grad.iter().map(|x| x.to_string()).collect::<Vec<_>>())));

    CertificateReport { label: cert.label.clone(), f_value: cert.det_along(&[]), checks }
}
