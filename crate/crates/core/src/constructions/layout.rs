//! Physical placements of mesh nodes and the wire lengths they induce.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Construction;
use crate::error::{arg, Result};
use crate::groups::GroupElement;
use crate::rational::{int, Rational};

/// Placement order of the ring 1..n, as 1-based labels.
///
/// Single: 1, n, 2, n-1, ... Double applies the single order to itself.
pub fn interleave(n: u64, double: bool) -> Result<Vec<u64>> {
    if n < 2 {
        return arg("interleave needs n >= 2");
    }
    if double && n < 4 {
        return arg("double interleave needs n >= 4");
    }
    let single: Vec<u64> = (0..n).map(|p| if p % 2 == 0 { p / 2 + 1 } else { n - p / 2 }).collect();
    if !double {
        return Ok(single);
    }
    Ok(single.iter().map(|&s| single[(s - 1) as usize]).collect())
}

/// Per-dimension placement scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Identity,
    Single,
    Double,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Norm {
    /// Chebyshev distance.
    Step,
    /// Squared Euclidean distance.
    Euclidean,
}

/// Position of each 0-based ring coordinate under a scheme.
fn positions_1d(n: u64, scheme: Scheme) -> Result<Vec<i64>> {
    let order = match scheme {
        Scheme::Identity => return Ok((0..n as i64).collect()),
        Scheme::Single => interleave(n, false)?,
        Scheme::Double => interleave(n, true)?,
    };
    let mut pos = vec![0; n as usize];
    for (p, &label) in order.iter().enumerate() {
        pos[(label - 1) as usize] = p as i64;
    }
    Ok(pos)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layout {
    pub positions: BTreeMap<GroupElement, Vec<i64>>,
}

impl Layout {
    /// Places the box [0, sides_1) x ... x [0, sides_d), which must be a
    /// fundamental region of the construction's lattice. With `shear`, the
    /// last coordinate is the short one and level j is rotated by j units in
    /// every other coordinate before the schemes are applied.
    pub fn boxed(c: &Construction, sides: &[u64], schemes: &[Scheme], shear: bool) -> Result<Layout> {
        let d = c.dim();
        if sides.len() != d || schemes.len() != d {
            return arg(format!("layout needs {d} sides and {d} schemes"));
        }
        if sides.contains(&0) {
            return arg("layout sides must be positive");
        }
        let maps: Vec<Vec<i64>> = sides.iter().zip(schemes).map(|(&n, &s)| positions_1d(n, s)).collect::<Result<_>>()?;
        let total: u64 = sides.iter().product();
        if total != c.group.order() {
            return arg(format!("box of {total} nodes does not match group order {}", c.group.order()));
        }
        let mut positions = BTreeMap::new();
        let mut x = vec![0i64; d];
        for _ in 0..total {
            let elem = node_of(c, &x);
            let last = x[d - 1];
            let pos: Vec<i64> = (0..d)
                .map(|i| {
                    let n = sides[i] as i64;
                    let y = if shear && i + 1 < d { (x[i] + last).rem_euclid(n) } else { x[i] };
                    maps[i][y as usize]
                })
                .collect();
            if positions.insert(elem, pos).is_some() {
                return arg("layout box is not a fundamental region");
            }
            for i in (0..d).rev() {
                x[i] += 1;
                if x[i] < sides[i] as i64 {
                    break;
                }
                x[i] = 0;
            }
        }
        Ok(Layout { positions })
    }

    /// Row-major placement of the box.
    pub fn identity(c: &Construction, sides: &[u64]) -> Result<Layout> {
        Layout::boxed(c, sides, &vec![Scheme::Identity; sides.len()], false)
    }
}

fn node_of(c: &Construction, x: &[i64]) -> GroupElement {
    let g = &c.group;
    x.iter()
        .zip(&c.gens.unrestricted)
        .fold(g.identity(), |acc, (&xi, e)| g.add(&acc, &g.scale(e, xi)))
}

fn distance(a: &[i64], b: &[i64], norm: Norm) -> i64 {
    let diffs = a.iter().zip(b).map(|(x, y)| (x - y).abs());
    match norm {
        Norm::Step => diffs.max().unwrap_or(0),
        Norm::Euclidean => diffs.map(|t| t * t).sum(),
    }
}

/// Longest edge of the construction's graph under the layout. Euclidean
/// lengths are returned squared so the result stays exact.
pub fn max_wire_length(c: &Construction, layout: &Layout, norm: Norm) -> Result<Rational> {
    if layout.positions.len() as u64 != c.group.order() {
        return arg(format!(
            "layout places {} of {} nodes",
            layout.positions.len(),
            c.group.order()
        ));
    }
    let gens: Vec<&GroupElement> = c.gens.unrestricted.iter().chain(c.gens.order2.iter()).collect();
    let mut best = 0;
    for (elem, pos) in &layout.positions {
        for g in &gens {
            let Some(q) = layout.positions.get(&c.group.add(elem, g)) else {
                return arg("layout is missing a node");
            };
            best = best.max(distance(pos, q, norm));
        }
    }
    Ok(int(best))
}
