//! Integer lattices N in Z^d: Hermite and Smith normal forms, kernels of maps
//! Z^d -> G, quotient structure, membership, scaling and rounding of rational
//! lattices. All arithmetic is exact with overflow checks.

use serde::{Deserialize, Serialize};

use crate::coverings;
use crate::error::{Error, Result};
use crate::groups::{AbelianGroup, GroupElement};
use crate::rational::{round_half_up, Rational};
use crate::shapes::{Shape, ShapeKind};
use num_traits::{ToPrimitive, Zero};

/// Dense integer matrix, row-major, rows are lattice vectors.
pub type Matrix = Vec<Vec<i64>>;

type Work = Vec<Vec<i128>>;

fn ovf() -> Error {
    Error::Overflow("lattice arithmetic")
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or_else(ovf)
}

fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or_else(ovf)
}

fn widen(m: &[Vec<i64>]) -> Work {
    m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

fn narrow(m: &Work) -> Result<Matrix> {
    m.iter()
        .map(|r| r.iter().map(|&x| i64::try_from(x).map_err(|_| ovf())).collect())
        .collect()
}

fn identity_work(n: usize) -> Work {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// row[dst] -= q * row[src]
fn row_axpy(m: &mut Work, dst: usize, src: usize, q: i128) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for j in 0..m[dst].len() {
        let v = sub(m[dst][j], mul(q, m[src][j])?)?;
        m[dst][j] = v;
    }
    Ok(())
}

/// col[dst] -= q * col[src]
fn col_axpy(m: &mut Work, dst: usize, src: usize, q: i128) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for row in m.iter_mut() {
        row[dst] = sub(row[dst], mul(q, row[src])?)?;
    }
    Ok(())
}

fn check_rect(m: &[Vec<i64>]) -> Result<(usize, usize)> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if rows == 0 || cols == 0 || m.iter().any(|r| r.len() != cols) {
        return Err(Error::Argument("matrix must be nonempty and rectangular".into()));
    }
    Ok((rows, cols))
}

/// Exact determinant by fraction-free elimination.
pub fn determinant(m: &[Vec<i64>]) -> Result<i128> {
    let (n, c) = check_rect(m)?;
    if n != c {
        return Err(Error::Argument("determinant of a non-square matrix".into()));
    }
    let mut a = widen(m);
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = sub(mul(a[i][j], a[k][k])?, mul(a[i][k], a[k][j])?)?;
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    Ok(sign * a[n - 1][n - 1])
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<Matrix> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            if row.len() != inner {
                return Err(Error::Argument("dimension mismatch in product".into()));
            }
            (0..cols)
                .map(|j| {
                    let mut s = 0i128;
                    for t in 0..inner {
                        s = s.checked_add(mul(row[t] as i128, b[t][j] as i128)?).ok_or_else(ovf)?;
                    }
                    i64::try_from(s).map_err(|_| ovf())
                })
                .collect()
        })
        .collect()
}

/// Echelon reduction shared by the HNF routines. Returns (H, U, pivots) with
/// U*M = H; the first `rows - rank` rows of H are zero and the remaining rows
/// are lower-triangular with pivots listed bottom-up as (row, column).
fn row_reduce(m: &[Vec<i64>]) -> Result<(Work, Work, Vec<(usize, usize)>)> {
    let (rows, cols) = check_rect(m)?;
    let mut h = widen(m);
    let mut u = identity_work(rows);
    let mut limit = rows;
    let mut pivots = Vec::new();
    for col in (0..cols).rev() {
        if limit == 0 {
            break;
        }
        let p = limit - 1;
        loop {
            let best = (0..limit).filter(|&r| h[r][col] != 0).min_by_key(|&r| h[r][col].abs());
            let Some(b) = best else { break };
            h.swap(b, p);
            u.swap(b, p);
            let mut clean = true;
            for r in 0..p {
                if h[r][col] != 0 {
                    let q = h[r][col].div_euclid(h[p][col]);
                    row_axpy(&mut h, r, p, q)?;
                    row_axpy(&mut u, r, p, q)?;
                    if h[r][col] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if h[p][col] == 0 {
            continue;
        }
        if h[p][col] < 0 {
            for x in h[p].iter_mut().chain(u[p].iter_mut()) {
                *x = -*x;
            }
        }
        pivots.push((p, col));
        limit -= 1;
    }
    // Reduce entries below each pivot into [0, pivot).
    for &(pr, pc) in &pivots {
        let piv = h[pr][pc];
        for r in pr + 1..rows {
            let q = h[r][pc].div_euclid(piv);
            row_axpy(&mut h, r, pr, q)?;
            row_axpy(&mut u, r, pr, q)?;
        }
    }
    Ok((h, u, pivots))
}

/// Hermite normal form of a full-row-rank matrix: U*M = H with H
/// lower-triangular (row echelon from the right), positive pivots, and each
/// entry below a pivot reduced into [0, pivot).
pub fn hermite_normal_form(m: &[Vec<i64>]) -> Result<(Matrix, Matrix)> {
    let (h, u, pivots) = row_reduce(m)?;
    if pivots.len() < m.len() {
        return Err(Error::Degenerate(format!(
            "matrix has rank {} < {} rows",
            pivots.len(),
            m.len()
        )));
    }
    Ok((narrow(&h)?, narrow(&u)?))
}

/// Hermite basis of the lattice spanned by arbitrary (possibly dependent) rows.
pub fn hnf_of_generators(m: &[Vec<i64>]) -> Result<Matrix> {
    let (h, _, pivots) = row_reduce(m)?;
    let zero = m.len() - pivots.len();
    narrow(&h[zero..].to_vec())
}

/// Smith normal form of a nonsingular square matrix, returned as (D, U, V)
/// with U*M*V = D, D = diag(d_1, ..., d_n), d_i > 0 and d_i | d_{i+1}.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Result<(Matrix, Matrix, Matrix)> {
    let (n, c) = check_rect(m)?;
    if n != c {
        return Err(Error::Argument("Smith form needs a square matrix".into()));
    }
    if determinant(m)? == 0 {
        return Err(Error::Degenerate("singular matrix has no Smith form here".into()));
    }
    let mut a = widen(m);
    let mut u = identity_work(n);
    let mut v = identity_work(n);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let (bi, bj) = best.ok_or_else(|| Error::Degenerate("singular".into()))?;
            a.swap(bi, t);
            u.swap(bi, t);
            for row in a.iter_mut().chain(v.iter_mut()) {
                row.swap(bj, t);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t].div_euclid(p);
                row_axpy(&mut a, i, t, q)?;
                row_axpy(&mut u, i, t, q)?;
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = a[t][j].div_euclid(p);
                col_axpy(&mut a, j, t, q)?;
                col_axpy(&mut v, j, t, q)?;
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    row_axpy(&mut a, t, i, -1)?;
                    row_axpy(&mut u, t, i, -1)?;
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut().chain(u[t].iter_mut()) {
                *x = -*x;
            }
        }
    }
    Ok((narrow(&a)?, narrow(&u)?, narrow(&v)?))
}

/// A full-rank sublattice of Z^d given by basis rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Matrix", into = "Matrix")]
pub struct Lattice {
    basis: Matrix,
}

impl TryFrom<Matrix> for Lattice {
    type Error = Error;
    fn try_from(m: Matrix) -> Result<Self> {
        Lattice::new(m)
    }
}

impl From<Lattice> for Matrix {
    fn from(l: Lattice) -> Matrix {
        l.basis
    }
}

impl Lattice {
    pub fn new(basis: Matrix) -> Result<Self> {
        let (r, c) = check_rect(&basis)?;
        if r != c {
            return Err(Error::Argument(format!("lattice basis must be square, got {r}x{c}")));
        }
        if determinant(&basis)? == 0 {
            return Err(Error::Degenerate("lattice basis is singular".into()));
        }
        Ok(Lattice { basis })
    }

    pub fn from_rows<const D: usize>(rows: &[[i64; D]]) -> Result<Self> {
        Lattice::new(rows.iter().map(|r| r.to_vec()).collect())
    }

    pub fn identity(d: usize) -> Self {
        Lattice { basis: identity(d) }
    }

    pub fn diagonal(sides: &[i64]) -> Result<Self> {
        let n = sides.len();
        Lattice::new(
            (0..n).map(|i| (0..n).map(|j| if i == j { sides[i] } else { 0 }).collect()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn determinant(&self) -> i128 {
        determinant(&self.basis).expect("validated at construction")
    }

    /// [Z^d : L].
    pub fn index(&self) -> Result<u64> {
        u64::try_from(self.determinant().abs()).map_err(|_| ovf())
    }

    pub fn hnf(&self) -> Result<Matrix> {
        Ok(hermite_normal_form(&self.basis)?.0)
    }

    pub fn same_lattice(&self, other: &Lattice) -> Result<bool> {
        Ok(self.dim() == other.dim() && self.hnf()? == other.hnf()?)
    }

    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        member(self, x)
    }

    pub fn scaled(&self, m: i64) -> Result<Lattice> {
        let basis = self
            .basis
            .iter()
            .map(|r| r.iter().map(|&x| x.checked_mul(m).ok_or_else(ovf)).collect())
            .collect::<Result<Matrix>>()?;
        Lattice::new(basis)
    }

    /// Integer combination of the basis rows.
    pub fn combination(&self, coeffs: &[i64]) -> Result<Vec<i64>> {
        let d = self.dim();
        (0..d)
            .map(|j| {
                let mut s = 0i128;
                for (i, &c) in coeffs.iter().enumerate() {
                    s += mul(c as i128, self.basis[i][j] as i128)?;
                }
                i64::try_from(s).map_err(|_| ovf())
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientStructure {
    pub group: AbelianGroup,
    /// Images of the unit vectors e_1, ..., e_d.
    pub images: Vec<GroupElement>,
}

impl QuotientStructure {
    /// Image of an arbitrary integer point.
    pub fn map(&self, x: &[i64]) -> GroupElement {
        let mut acc = self.group.identity();
        for (xi, img) in x.iter().zip(&self.images) {
            acc = self.group.add(&acc, &self.group.scale(img, *xi));
        }
        acc
    }
}

/// L = { x in Z^d : sum x_i g_i = 0 }.
pub fn kernel_lattice(group: &AbelianGroup, gens: &[GroupElement]) -> Result<Lattice> {
    let d = gens.len();
    let r = group.factors().len();
    if d == 0 {
        return Err(Error::Argument("need at least one generator".into()));
    }
    if let Some(g) = gens.iter().find(|g| !group.contains(g)) {
        return Err(Error::Argument(format!("{g} is not an element of {group}")));
    }
    let mut m = vec![vec![0i64; d + r]; d + r];
    for (i, g) in gens.iter().enumerate() {
        m[i][i] = 1;
        for (j, &c) in g.coords().iter().enumerate() {
            m[i][d + j] = c as i64;
        }
    }
    for (j, &mj) in group.factors().iter().enumerate() {
        m[d + j][d + j] = i64::try_from(mj).map_err(|_| ovf())?;
    }
    let (h, _) = hermite_normal_form(&m)?;
    let basis: Matrix = h[..d].iter().map(|row| row[..d].to_vec()).collect();
    let lattice = Lattice::new(basis)?;
    let index = lattice.index()?;
    if index != group.order() {
        return Err(Error::Argument(format!(
            "generators span a subgroup of order {index}, not all of {group}"
        )));
    }
    Ok(lattice)
}

pub fn quotient_structure(l: &Lattice) -> Result<QuotientStructure> {
    let (dmat, _, v) = smith_normal_form(l.basis())?;
    let d = l.dim();
    let keep: Vec<usize> = (0..d).filter(|&j| dmat[j][j] > 1).collect();
    if keep.is_empty() {
        let group = AbelianGroup::trivial();
        let images = vec![group.identity(); d];
        return Ok(QuotientStructure { group, images });
    }
    let factors: Vec<u64> = keep.iter().map(|&j| dmat[j][j] as u64).collect();
    let group = AbelianGroup::new(factors)?;
    let images = (0..d)
        .map(|i| GroupElement(keep.iter().map(|&j| v[i][j].rem_euclid(dmat[j][j]) as u64).collect()))
        .collect();
    Ok(QuotientStructure { group, images })
}

/// Canonical form of an arbitrary product of cyclic groups, with the images
/// of the product's standard generators.
pub fn presentation(orders: &[u64]) -> Result<QuotientStructure> {
    let sides = orders
        .iter()
        .map(|&m| i64::try_from(m).map_err(|_| ovf()))
        .collect::<Result<Vec<_>>>()?;
    quotient_structure(&Lattice::diagonal(&sides)?)
}

/// Is `x` an integer combination of the basis rows?
pub fn member(l: &Lattice, x: &[i64]) -> Result<bool> {
    if x.len() != l.dim() {
        return Err(Error::Argument("point dimension does not match lattice".into()));
    }
    let h = widen(&l.hnf()?);
    let mut rest: Vec<i128> = x.iter().map(|&v| v as i128).collect();
    for i in (0..h.len()).rev() {
        let piv = h[i][i];
        if rest[i] % piv != 0 {
            return Ok(false);
        }
        let q = rest[i] / piv;
        for j in 0..=i {
            rest[j] = sub(rest[j], mul(q, h[i][j])?)?;
        }
    }
    Ok(rest.iter().all(|&v| v == 0))
}

/// Scale a covering: if S_k + L = Z^d then S_{k'} + mL = Z^d with
/// k' = mk + floor(m/2) d (octahedra) or mk + (m-1) d (tetrahedra).
pub fn scale_covering(l: &Lattice, k: u64, m: u64, kind: ShapeKind) -> Result<(Lattice, u64)> {
    if m == 0 {
        return Err(Error::Argument("scale factor must be at least 1".into()));
    }
    let d = l.dim() as u64;
    let shape = Shape::new(kind, l.dim(), k)?;
    if !coverings::covers(l, &shape)?.covers {
        return Err(Error::Argument(format!("lattice does not cover with radius {k}")));
    }
    let extra = match kind {
        ShapeKind::Octahedron => (m / 2) * d,
        ShapeKind::Tetrahedron => (m - 1) * d,
        ShapeKind::Order2Ball => {
            return Err(Error::Argument("scaling is defined for octahedra and tetrahedra".into()))
        }
    };
    let k2 = m.checked_mul(k).and_then(|x| x.checked_add(extra)).ok_or_else(ovf)?;
    let ms = i64::try_from(m).map_err(|_| ovf())?;
    Ok((l.scaled(ms)?, k2))
}

/// A full-rank lattice in R^d with exact rational basis rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalLattice {
    basis: Vec<Vec<Rational>>,
}

impl RationalLattice {
    pub fn new(basis: Vec<Vec<Rational>>) -> Result<Self> {
        let n = basis.len();
        if n == 0 || basis.iter().any(|r| r.len() != n) {
            return Err(Error::Argument("rational basis must be square and nonempty".into()));
        }
        if rational_det(&basis).is_zero() {
            return Err(Error::Degenerate("rational basis is singular".into()));
        }
        Ok(RationalLattice { basis })
    }

    pub fn from_integer(l: &Lattice) -> Self {
        RationalLattice {
            basis: l
                .basis()
                .iter()
                .map(|r| r.iter().map(|&x| crate::rational::int(x)).collect())
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn determinant(&self) -> Rational {
        rational_det(&self.basis)
    }
}

/// Exact determinant over the rationals.
pub fn rational_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = crate::rational::int(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k].clone();
        for i in k + 1..n {
            let f = a[i][k].clone() / a[k][k].clone();
            for j in k..n {
                let t = f.clone() * a[k][j].clone();
                a[i][j] -= t;
            }
        }
    }
    det
}

/// Round every coordinate of t*L to the nearest integer, halves toward +infinity.
pub fn round_real_lattice(l: &RationalLattice, t: &Rational) -> Result<Lattice> {
    if *t <= Rational::zero() {
        return Err(Error::Argument("scale t must be positive".into()));
    }
    let basis = l
        .basis
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| round_half_up(&(x * t)).to_i64().ok_or_else(ovf))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Matrix>>()?;
    Lattice::new(basis).map_err(|e| match e {
        Error::Degenerate(_) => Error::Degenerate(format!(
            "rounded basis at t = {t} is singular; use a larger scale"
        )),
        other => other,
    })
}
