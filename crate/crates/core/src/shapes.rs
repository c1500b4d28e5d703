//! Discrete balls S_k (octahedron), S'_k (tetrahedron) and the order-2 ball
//! W_k = (S_k x {0}) u (S_{k-1} x {1}), with their real counterparts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeKind {
    Octahedron,
    Tetrahedron,
    Order2Ball,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape {
    pub kind: ShapeKind,
    /// Unrestricted coordinates only; the Z_2 coordinate of W_k is implicit.
    pub dim: usize,
    pub radius: u64,
}

/// Default cap on enumerated points.
pub const ENUMERATION_BUDGET: u64 = 1 << 24;

impl Shape {
    pub fn new(kind: ShapeKind, dim: usize, radius: u64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Argument("shape dimension must be at least 1".into()));
        }
        if kind == ShapeKind::Order2Ball && radius == 0 {
            return Err(Error::Argument("order-2 ball needs radius >= 1".into()));
        }
        Ok(Shape { kind, dim, radius })
    }

    pub fn octahedron(dim: usize, radius: u64) -> Self {
        Shape::new(ShapeKind::Octahedron, dim, radius).expect("valid octahedron")
    }

    pub fn tetrahedron(dim: usize, radius: u64) -> Self {
        Shape::new(ShapeKind::Tetrahedron, dim, radius).expect("valid tetrahedron")
    }

    pub fn order2ball(dim: usize, radius: u64) -> Self {
        Shape::new(ShapeKind::Order2Ball, dim, radius).expect("valid order-2 ball")
    }

    /// Coordinates per emitted point (d + 1 for the order-2 ball).
    pub fn total_dim(&self) -> usize {
        match self.kind {
            ShapeKind::Order2Ball => self.dim + 1,
            _ => self.dim,
        }
    }

    pub fn size(&self) -> Result<u64> {
        let d = self.dim as u64;
        let k = self.radius;
        match self.kind {
            ShapeKind::Tetrahedron => binomial(k + d, d),
            ShapeKind::Octahedron => octahedron_size(d, k),
            ShapeKind::Order2Ball => octahedron_size(d, k)?
                .checked_add(octahedron_size(d, k - 1)?)
                .ok_or(Error::Overflow("shape size")),
        }
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        if p.len() != self.total_dim() {
            return false;
        }
        let k = self.radius as i64;
        match self.kind {
            ShapeKind::Octahedron => l1(p) <= k,
            ShapeKind::Tetrahedron => p.iter().all(|&x| x >= 0) && p.iter().sum::<i64>() <= k,
            ShapeKind::Order2Ball => {
                let (x, parity) = p.split_at(self.dim);
                match parity[0] {
                    0 => l1(x) <= k,
                    1 => l1(x) < k,
                    _ => false,
                }
            }
        }
    }

    /// All points in lexicographic order.
    pub fn enumerate(&self) -> Result<Vec<Vec<i64>>> {
        self.enumerate_with_budget(ENUMERATION_BUDGET)
    }

    pub fn enumerate_with_budget(&self, budget: u64) -> Result<Vec<Vec<i64>>> {
        let n = self.size()?;
        if n > budget {
            return Err(Error::Resource { what: "shape enumeration", needed: n, budget });
        }
        let k = self.radius as i64;
        let mut out = Vec::with_capacity(n as usize);
        let mut cur = Vec::with_capacity(self.total_dim());
        match self.kind {
            ShapeKind::Octahedron => push_ball(self.dim, k, false, &mut cur, &mut out),
            ShapeKind::Tetrahedron => push_ball(self.dim, k, true, &mut cur, &mut out),
            ShapeKind::Order2Ball => {
                let mut even = Vec::new();
                push_ball(self.dim, k, false, &mut cur, &mut even);
                let mut odd = Vec::new();
                push_ball(self.dim, k - 1, false, &mut cur, &mut odd);
                out.extend(even.into_iter().map(|mut p| {
                    p.push(0);
                    p
                }));
                out.extend(odd.into_iter().map(|mut p| {
                    p.push(1);
                    p
                }));
                out.sort();
            }
        }
        Ok(out)
    }
}

fn l1(p: &[i64]) -> i64 {
    p.iter().map(|x| x.abs()).sum()
}

fn push_ball(d: usize, left: i64, nonneg: bool, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if cur.len() == d {
        out.push(cur.clone());
        return;
    }
    let lo = if nonneg { 0 } else { -left };
    for x in lo..=left {
        cur.push(x);
        push_ball(d, left - x.abs(), nonneg, cur, out);
        cur.pop();
    }
}

pub fn binomial(n: u64, r: u64) -> Result<u64> {
    if r > n {
        return Ok(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or(Error::Overflow("binomial"))?
            / (i + 1) as u128;
    }
    u64::try_from(acc).map_err(|_| Error::Overflow("binomial"))
}

fn octahedron_size(d: u64, k: u64) -> Result<u64> {
    let mut total: u64 = 0;
    for i in 0..=d {
        let term = binomial(d, i)?
            .checked_mul(binomial(k, i)?)
            .and_then(|t| t.checked_mul(1u64.checked_shl(i as u32)?))
            .ok_or(Error::Overflow("octahedron size"))?;
        total = total.checked_add(term).ok_or(Error::Overflow("octahedron size"))?;
    }
    Ok(total)
}

/// Volume of the real body of the given kind and radius:
/// `2^d r^d / d!` for the cross-polytope, `r^d / d!` for the simplex.
pub fn real_volume(kind: ShapeKind, dim: usize, radius: &Rational) -> Result<Rational> {
    let mut fact = int(1);
    for i in 1..=dim as i64 {
        fact *= int(i);
    }
    let rd = num_traits::pow(radius.clone(), dim);
    match kind {
        ShapeKind::Tetrahedron => Ok(rd / fact),
        ShapeKind::Octahedron => Ok(rd * num_traits::pow(int(2), dim) / fact),
        ShapeKind::Order2Ball => {
            Err(Error::Argument("the order-2 ball has no real counterpart".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn sizes() {
        assert_eq!(Shape::octahedron(3, 14).size().unwrap(), 4089);
        assert_eq!(Shape::tetrahedron(3, 10).size().unwrap(), 286);
        assert_eq!(Shape::octahedron(2, 3).size().unwrap(), 25);
        assert_eq!(Shape::octahedron(5, 0).size().unwrap(), 1);
        assert_eq!(Shape::tetrahedron(4, 0).size().unwrap(), 1);
        assert_eq!(Shape::order2ball(2, 3).size().unwrap(), 38);
    }

    #[test]
    fn enumeration_examples() {
        let pts = Shape::octahedron(1, 2).enumerate().unwrap();
        assert_eq!(pts, vec![vec![-2], vec![-1], vec![0], vec![1], vec![2]]);
        let pts = Shape::tetrahedron(2, 1).enumerate().unwrap();
        assert_eq!(pts, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(Shape::octahedron(3, 1).enumerate().unwrap().len(), 7);
        let w = Shape::order2ball(1, 1).enumerate().unwrap();
        assert_eq!(w, vec![vec![-1, 0], vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn budget_is_enforced() {
        let e = Shape::octahedron(3, 10).enumerate_with_budget(10).unwrap_err();
        assert!(matches!(e, Error::Resource { .. }));
    }

    #[test]
    fn volumes() {
        let v = |kind, d, r: Rational| real_volume(kind, d, &r).unwrap();
        assert_eq!(v(ShapeKind::Tetrahedron, 3, int(1)), ratio(1, 6));
        assert_eq!(v(ShapeKind::Octahedron, 3, ratio(3, 2)), ratio(9, 2));
        assert_eq!(v(ShapeKind::Octahedron, 1, int(5)), int(10));
    }

    #[test]
    fn overflow_reported() {
        assert!(matches!(
            Shape::octahedron(60, 1 << 40).size(),
            Err(Error::Overflow(_))
        ));
    }
}
