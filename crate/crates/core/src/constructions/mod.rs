//! Explicit graph families, each returned as a lattice together with its
//! quotient group and generators.

pub mod layout;

pub use layout::{interleave, max_wire_length, Layout, Norm, Scheme};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coverings::extended_quotient;
use crate::error::{arg, Error, Result};
use crate::groups::{diameter, AbelianGroup, DiameterResult, GeneratorSet, GroupElement, Mode};
use crate::lattices::{
    hnf_of_generators, kernel_lattice, presentation, quotient_structure, Lattice, QuotientStructure,
    RationalLattice,
};
use crate::rational::{int, ratio, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Toroidal,
    Twisted2d,
    Directed2d,
    #[serde(rename = "twistedbcc3d")]
    TwistedBcc3d,
    #[serde(rename = "theorem15")]
    Theorem15,
    #[serde(rename = "l7_scaled")]
    L7Scaled,
    Tetracube,
    Sixteencell,
    BccHighdim,
    #[serde(rename = "order2_d1")]
    Order2D1,
    #[serde(rename = "order2_d2")]
    Order2D2,
    #[serde(rename = "order2_table4")]
    Order2Table4,
    #[serde(rename = "product_z2")]
    ProductZ2,
    TwistedMesh,
    Custom,
}

impl Family {
    pub const BUILDABLE: [Family; 13] = [
        Family::Toroidal,
        Family::Twisted2d,
        Family::Directed2d,
        Family::TwistedBcc3d,
        Family::Theorem15,
        Family::L7Scaled,
        Family::Tetracube,
        Family::Sixteencell,
        Family::BccHighdim,
        Family::Order2D1,
        Family::Order2D2,
        Family::Order2Table4,
        Family::ProductZ2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Toroidal => "toroidal",
            Family::Twisted2d => "twisted2d",
            Family::Directed2d => "directed2d",
            Family::TwistedBcc3d => "twistedbcc3d",
            Family::Theorem15 => "theorem15",
            Family::L7Scaled => "l7_scaled",
            Family::Tetracube => "tetracube",
            Family::Sixteencell => "sixteencell",
            Family::BccHighdim => "bcc_highdim",
            Family::Order2D1 => "order2_d1",
            Family::Order2D2 => "order2_d2",
            Family::Order2Table4 => "order2_table4",
            Family::ProductZ2 => "product_z2",
            Family::TwistedMesh => "twisted_mesh",
            Family::Custom => "custom",
        }
    }

    /// Smallest valid k.
    pub fn min_k(self) -> u64 {
        match self {
            Family::TwistedBcc3d
            | Family::Tetracube
            | Family::Sixteencell
            | Family::Order2D1
            | Family::Order2D2
            | Family::ProductZ2 => 1,
            Family::Order2Table4 => 3,
            Family::L7Scaled => 7,
            _ => 0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        Family::BUILDABLE
            .iter()
            .chain([Family::TwistedMesh].iter())
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown family '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildOptions {
    /// Dimension for toroidal and bcc_highdim (default 3).
    pub d: Option<usize>,
    /// Toroidal only.
    pub mode: Mode,
    /// directed2d: use the alternate lattice (a,b),(2a,-a).
    pub alternate: bool,
    /// product_z2: family of the factor built at k - 1 (default theorem15).
    pub base: Option<Family>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { d: None, mode: Mode::Undirected, alternate: false, base: None }
    }
}

/// How the order-2 coordinate is glued on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Order2Coset {
    /// N is generated by L x {0} and (g, 1).
    Lifted(Vec<i64>),
    /// N = L x {0}: the group is Z^d / L times Z_2.
    Product,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Construction {
    pub family: Family,
    pub params: BTreeMap<String, i64>,
    pub lattice: Lattice,
    pub order2: Option<Order2Coset>,
    pub group: AbelianGroup,
    pub gens: GeneratorSet,
    pub predicted_size: u64,
    pub predicted_diameter: u64,
    /// The predicted diameter is only an upper bound.
    pub diameter_is_bound: bool,
}

impl Construction {
    /// Plain Cayley graph of Z^d / L on the images of e_i.
    pub fn from_lattice(lattice: Lattice, mode: Mode, predicted_diameter: u64) -> Result<Self> {
        let q = quotient_structure(&lattice)?;
        Ok(Construction {
            family: Family::Custom,
            params: BTreeMap::new(),
            predicted_size: q.group.order(),
            group: q.group,
            gens: GeneratorSet::new(q.images, None, mode),
            lattice,
            order2: None,
            predicted_diameter,
            diameter_is_bound: true,
        })
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn verify(&self) -> Result<DiameterResult> {
        diameter(&self.group, &self.gens)
    }

    /// The (d+1)-dimensional kernel for order-2 families.
    pub fn extended_lattice(&self) -> Result<Option<Lattice>> {
        let d = self.dim();
        let Some(coset) = &self.order2 else { return Ok(None) };
        let mut rows: Vec<Vec<i64>> = self
            .lattice
            .basis()
            .iter()
            .map(|r| r.iter().copied().chain([0]).collect())
            .collect();
        if let Order2Coset::Lifted(g) = coset {
            rows.push(g.iter().copied().chain([1]).collect());
        }
        let mut two = vec![0; d + 1];
        two[d] = 2;
        rows.push(two);
        Ok(Some(Lattice::new(hnf_of_generators(&rows)?)?))
    }

    /// Does the kernel of the generator map equal the stored lattice?
    pub fn kernel_matches(&self) -> Result<bool> {
        match self.extended_lattice()? {
            None => kernel_lattice(&self.group, &self.gens.unrestricted)?.same_lattice(&self.lattice),
            Some(ext) => {
                let mut all = self.gens.unrestricted.clone();
                all.extend(self.gens.order2.iter().cloned());
                kernel_lattice(&self.group, &all)?.same_lattice(&ext)
            }
        }
    }
}

fn params(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn cyclic_gens(n: u64, gens: &[i64], mode: Mode) -> GeneratorSet {
    let m = n as i64;
    GeneratorSet::new(gens.iter().map(|&g| GroupElement(vec![g.rem_euclid(m) as u64])).collect(), None, mode)
}

fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    let e = num_integer::Integer::extended_gcd(&a.rem_euclid(n), &n);
    (e.gcd == 1).then(|| e.x.rem_euclid(n))
}

/// Quotient images, rescaled so the first generator is 1 when the group is
/// cyclic and the first image is a unit.
fn normalized(q: QuotientStructure, mode: Mode) -> (AbelianGroup, GeneratorSet) {
    if q.group.is_cyclic() && q.group.order() > 1 {
        let n = q.group.order() as i64;
        if let Some(u) = mod_inverse(q.images[0].0[0] as i64, n) {
            let imgs = q.images.iter().map(|e| q.group.scale(e, u)).collect();
            return (q.group, GeneratorSet::new(imgs, None, mode));
        }
    }
    (q.group, GeneratorSet::new(q.images, None, mode))
}

fn lattice_construction(
    family: Family,
    p: BTreeMap<String, i64>,
    lattice: Lattice,
    mode: Mode,
    predicted_size: u64,
    predicted_diameter: u64,
    diameter_is_bound: bool,
) -> Result<Construction> {
    let (group, gens) = normalized(quotient_structure(&lattice)?, mode);
    Ok(Construction {
        family,
        params: p,
        lattice,
        order2: None,
        group,
        gens,
        predicted_size,
        predicted_diameter,
        diameter_is_bound,
    })
}

#[allow(clippy::too_many_arguments)]
fn cyclic_construction(
    family: Family,
    p: BTreeMap<String, i64>,
    lattice: Lattice,
    order2: Option<Order2Coset>,
    n: u64,
    gens: &[i64],
    rho: Option<i64>,
    mode: Mode,
    predicted_diameter: u64,
) -> Result<Construction> {
    let group = if n == 1 { AbelianGroup::trivial() } else { AbelianGroup::cyclic(n)? };
    let mut gs = cyclic_gens(n, gens, mode);
    if let Some(r) = rho {
        gs.order2 = Some(GroupElement(vec![r.rem_euclid(n as i64) as u64]));
    }
    Ok(Construction {
        family,
        params: p,
        lattice,
        order2,
        group,
        gens: gs,
        predicted_size: n,
        predicted_diameter,
        diameter_is_bound: false,
    })
}

fn check_k(family: Family, k: u64) -> Result<()> {
    if k < family.min_k() {
        return arg(format!("{family} needs k >= {}", family.min_k()));
    }
    Ok(())
}

fn to_i64(k: u64) -> Result<i64> {
    i64::try_from(k).map_err(|_| Error::Overflow("construction parameter"))
}

fn as_u64(x: i128) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::Overflow("construction size"))
}

pub fn build(family: Family, k: u64, opts: &BuildOptions) -> Result<Construction> {
    check_k(family, k)?;
    let ki = to_i64(k)?;
    match family {
        Family::Toroidal => toroidal(opts.d.unwrap_or(3), k, opts.mode),
        Family::Twisted2d => {
            let n = as_u64(2 * (ki as i128).pow(2) + 2 * ki as i128 + 1)?;
            let l = Lattice::from_rows(&[[ki, ki + 1], [-ki - 1, ki]])?;
            cyclic_construction(family, params(&[("k", ki)]), l, None, n, &[1, 2 * ki * ki], None, Mode::Undirected, k)
        }
        Family::Directed2d => directed2d(k, opts.alternate),
        Family::TwistedBcc3d => {
            let a: Vec<i64> = (1..=3).map(|i| (2 * ki + i) / 3).collect();
            let l = Lattice::from_rows(&[[2 * a[0], 0, 0], [0, 2 * a[1], 0], [a[0], a[1], a[2]]])?;
            let n = as_u64(4 * a.iter().map(|&x| x as i128).product::<i128>())?;
            let p = params(&[("k", ki), ("a1", a[0]), ("a2", a[1]), ("a3", a[2])]);
            lattice_construction(family, p, l, Mode::Undirected, n, k, false)
        }
        Family::Theorem15 => cyclic_3d(k),
        Family::L7Scaled => {
            if (k + 3) % 10 != 0 {
                return arg("l7_scaled needs k = 10m - 3 for some m >= 1");
            }
            let m = (ki + 3) / 10;
            let l = Lattice::from_rows(&[[-2, 2, 2], [3, -3, 3], [4, 3, -1]])?.scaled(m)?;
            let n = as_u64(84 * (m as i128).pow(3))?;
            lattice_construction(family, params(&[("m", m), ("k", ki)]), l, Mode::Directed, n, k, true)
        }
        Family::Tetracube => {
            let s: Vec<i64> = [3, 4, 5].iter().map(|i| (ki + i) / 4).collect();
            let l = Lattice::from_rows(&[[2 * s[0], 0, 0], [0, 2 * s[1], 0], [s[0], s[1], -s[2]]])?;
            let n = as_u64(4 * s.iter().map(|&x| x as i128).product::<i128>())?;
            let bound = s.iter().sum::<i64>() + s.iter().max().unwrap() - 3;
            let p = params(&[("k", ki), ("s1", s[0]), ("s2", s[1]), ("s3", s[2])]);
            lattice_construction(family, p, l, Mode::Directed, n, bound as u64, true)
        }
        Family::Sixteencell => {
            let s: Vec<i64> = [3, 4, 6].iter().map(|i| (ki + i) / 6).collect();
            if s[0] == 0 {
                return arg("sixteencell needs k >= 3");
            }
            let l = Lattice::from_rows(&[
                [s[0], s[1], s[2]],
                [s[0], -3 * s[1], s[2]],
                [s[0], s[1], -3 * s[2]],
            ])?;
            let n = as_u64(16 * s.iter().map(|&x| x as i128).product::<i128>())?;
            let bound = s[0] + 2 * s[1] + 3 * s[2] - 3;
            let p = params(&[("k", ki), ("s1", s[0]), ("s2", s[1]), ("s3", s[2])]);
            lattice_construction(family, p, l, Mode::Directed, n, bound as u64, true)
        }
        Family::BccHighdim => bcc_highdim(opts.d.unwrap_or(3), k),
        Family::Order2D1 => {
            let l = Lattice::new(vec![vec![4 * ki]])?;
            let coset = Order2Coset::Lifted(vec![2 * ki]);
            cyclic_construction(family, params(&[("k", ki)]), l, Some(coset), 4 * k, &[1], Some(2 * ki), Mode::Undirected, k)
        }
        Family::Order2D2 => {
            let l = Lattice::from_rows(&[[2 * ki + 1, 1], [-1, 2 * ki - 1]])?;
            let coset = Order2Coset::Lifted(vec![ki, ki]);
            let n = 4 * k * k;
            cyclic_construction(family, params(&[("k", ki)]), l, Some(coset), n, &[2 * ki - 1, 1], Some(2 * ki * ki), Mode::Undirected, k)
        }
        Family::Order2Table4 => order2_table4(k),
        Family::ProductZ2 => {
            let base_family = opts.base.unwrap_or(Family::Theorem15);
            let base_opts = BuildOptions { base: None, ..opts.clone() };
            product_z2(&build(base_family, k - 1, &base_opts)?)
        }
        Family::TwistedMesh | Family::Custom => arg(format!("{family} is not built from k")),
    }
}

fn toroidal(d: usize, k: u64, mode: Mode) -> Result<Construction> {
    if d == 0 {
        return arg("toroidal needs d >= 1");
    }
    let ki = to_i64(k)?;
    let di = d as i64;
    let b: Vec<i64> = (0..di).map(|i| (ki + i) / di).collect();
    let sides: Vec<i64> = match mode {
        Mode::Undirected => b.iter().map(|x| 2 * x + 1).collect(),
        Mode::Directed => b.iter().map(|x| x + 1).collect(),
    };
    let n = as_u64(sides.iter().map(|&x| x as i128).product::<i128>())?;
    let mut p = params(&[("k", ki), ("d", di)]);
    for (i, s) in sides.iter().enumerate() {
        p.insert(format!("side{}", i + 1), *s);
    }
    lattice_construction(Family::Toroidal, p, Lattice::diagonal(&sides)?, mode, n, k, false)
}

fn directed2d(k: u64, alternate: bool) -> Result<Construction> {
    let ki = to_i64(k)?;
    // a = round((k+2)/3); (k+2)/3 never has fractional part 1/2
    let a = (ki + 2 + 1) / 3;
    let b = ki + 2 - 2 * a;
    let n = as_u64(((ki as i128) + 2).pow(2) / 3)?;
    let p = params(&[("k", ki), ("a", a), ("b", b)]);
    let l = if alternate {
        if k % 3 == 1 {
            return arg("the alternate directed lattice needs k not congruent to 1 mod 3");
        }
        Lattice::from_rows(&[[a, b], [2 * a, -a]])?
    } else {
        Lattice::from_rows(&[[a, a], [a + b, -b]])?
    };
    lattice_construction(Family::Directed2d, p, l, Mode::Directed, n, k, false)
}

fn cyclic_3d(k: u64) -> Result<Construction> {
    let ki = to_i64(k)?;
    let a = (2 * ki + 2) / 3;
    let (rows, n, g2, g3): ([[i64; 3]; 3], i128, i64, i64) = match k % 3 {
        0 => (
            [[a + 1, a, a], [a, -a, a + 1], [a + 1, a - 1, -a - 1]],
            (2 * a * a + a + 1) as i128 * (2 * a + 1) as i128,
            2 * a + 1,
            4 * a * a + 2 * a + 1,
        ),
        1 => (
            [[a, a, a], [a + 1, -a, a - 1], [a - 1, a + 1, -a]],
            4 * (a as i128).pow(3) + 3 * a as i128,
            2 * a * a - a + 1,
            2 * a * a + a + 1,
        ),
        _ => (
            [[a, a, a - 1], [a - 1, -a, a], [a, a - 1, -a]],
            (2 * a * a - a + 1) as i128 * (2 * a - 1) as i128,
            2 * a - 1,
            4 * a * a - 2 * a + 1,
        ),
    };
    let p = params(&[("k", ki), ("a", a)]);
    let l = Lattice::from_rows(&rows)?;
    cyclic_construction(Family::Theorem15, p, l, None, as_u64(n)?, &[1, g2, g3], None, Mode::Undirected, k)
}

fn bcc_highdim(d: usize, k: u64) -> Result<Construction> {
    if d == 0 {
        return arg("bcc_highdim needs d >= 1");
    }
    let ki = to_i64(k)?;
    let di = d as i64;
    let (q, r) = ((2 * ki + 1) / di, (2 * ki + 1) % di);
    if q == 0 {
        return arg(format!("bcc_highdim in dimension {d} needs 2k + 1 >= d"));
    }
    let s: Vec<i64> = (0..di).map(|i| if i < r { q + 1 } else { q }).collect();
    let mut rows: Vec<Vec<i64>> = (0..d - 1)
        .map(|i| (0..d).map(|j| if i == j { 2 * s[i] } else { 0 }).collect())
        .collect();
    rows.push(s.clone());
    let l = Lattice::new(rows)?;
    let n = l.index()?;
    let p = params(&[("k", ki), ("d", di), ("q", q), ("r", r)]);
    lattice_construction(Family::BccHighdim, p, l, Mode::Undirected, n, k, true)
}

fn order2_table4(k: u64) -> Result<Construction> {
    let ki = to_i64(k)?;
    let (rows, g, n, gens, rho): ([[i64; 3]; 3], [i64; 3], i128, [i64; 3], i64) = match k % 3 {
        0 => {
            let a = 2 * ki / 3;
            (
                [[2 * a, 1, -1], [-1, 2 * a, -1], [1, 1, 2 * a]],
                [a, a + 1, a - 1],
                (64 * (ki as i128).pow(3) + 108 * ki as i128) / 27,
                [1, 4 * a.pow(3) - 2 * a * a + 2 * a - 1, 4 * a.pow(3) - 2 * a * a + 4 * a - 1],
                4 * a.pow(3) + 3 * a,
            )
        }
        1 => {
            let a = (2 * ki + 1) / 3;
            (
                [[2 * a - 1, -1, 0], [1, 2 * a, -1], [0, 1, 2 * a - 1]],
                [a, a, a - 1],
                (64 * (ki as i128).pow(3) + 60 * ki as i128 - 16) / 27,
                [1, 2 * a - 1, 4 * a * a - 2 * a + 1],
                4 * a.pow(3) - 4 * a * a + 3 * a - 1,
            )
        }
        _ => {
            let a = (2 * ki - 1) / 3;
            (
                [[2 * a + 1, -1, 0], [1, 2 * a, -1], [0, 1, 2 * a + 1]],
                [a + 1, a, a],
                (64 * (ki as i128).pow(3) + 60 * ki as i128 + 16) / 27,
                [1, 2 * a + 1, 4 * a * a + 2 * a + 1],
                4 * a.pow(3) + 4 * a * a + 3 * a + 1,
            )
        }
    };
    let l = Lattice::from_rows(&rows)?;
    let a = match k % 3 {
        0 => 2 * ki / 3,
        1 => (2 * ki + 1) / 3,
        _ => (2 * ki - 1) / 3,
    };
    let p = params(&[("k", ki), ("a", a)]);
    cyclic_construction(
        Family::Order2Table4,
        p,
        l,
        Some(Order2Coset::Lifted(g.to_vec())),
        as_u64(n)?,
        &gens,
        Some(rho),
        Mode::Undirected,
        k,
    )
}

/// G x Z_2 with generators (g_i, 0) and the order-2 generator (0, 1).
pub fn product_z2(base: &Construction) -> Result<Construction> {
    if base.order2.is_some() || base.gens.order2.is_some() {
        return arg("product_z2 needs a base without an order-2 generator");
    }
    let mut orders: Vec<u64> = if base.group.order() == 1 { vec![] } else { base.group.factors().to_vec() };
    orders.push(2);
    let pres = presentation(&orders)?;
    let r = orders.len() - 1;
    let lift = |e: &GroupElement| {
        let mut acc = pres.group.identity();
        let coords: Vec<u64> = if base.group.order() == 1 { vec![] } else { e.0.clone() };
        for (c, img) in coords.iter().zip(&pres.images[..r]) {
            acc = pres.group.add(&acc, &pres.group.scale(img, *c as i64));
        }
        acc
    };
    let unrestricted = base.gens.unrestricted.iter().map(lift).collect();
    let gens = GeneratorSet::new(unrestricted, Some(pres.images[r].clone()), Mode::Undirected);
    let mut p = base.params.clone();
    p.insert(format!("base_{}", base.family.name()), 1);
    Ok(Construction {
        family: Family::ProductZ2,
        params: p,
        lattice: base.lattice.clone(),
        order2: Some(Order2Coset::Product),
        group: pres.group,
        gens,
        predicted_size: 2 * base.predicted_size,
        predicted_diameter: base.predicted_diameter + 1,
        diameter_is_bound: base.diameter_is_bound,
    })
}

/// Z_{2m}^{d-1} x Z_m with the last wrap twisted by m in every other
/// coordinate. Size 2^{d-1} m^d, diameter floor(dm/2).
pub fn twisted_mesh(d: usize, m: u64) -> Result<Construction> {
    if d < 2 || m == 0 {
        return arg("twisted_mesh needs d >= 2 and m >= 1");
    }
    let mi = to_i64(m)?;
    let mut rows: Vec<Vec<i64>> = (0..d - 1)
        .map(|i| (0..d).map(|j| if i == j { 2 * mi } else { 0 }).collect())
        .collect();
    rows.push(vec![mi; d]);
    let l = Lattice::new(rows)?;
    let n = l.index()?;
    let p = params(&[("d", d as i64), ("m", mi)]);
    lattice_construction(Family::TwistedMesh, p, l, Mode::Undirected, n, d as u64 * m / 2, false)
}

/// Twice the vectors from the centroid of the unit simplex to the centroids
/// of its faces opposite 0, e_2, ..., e_d.
pub fn simplex_centroid(d: usize) -> Result<RationalLattice> {
    if d == 0 {
        return arg("simplex_centroid needs d >= 1");
    }
    let di = d as i64;
    let c = ratio(1, di + 1);
    let mut rows = Vec::with_capacity(d);
    // face opposite the origin
    rows.push(vec![int(2) * (ratio(1, di) - &c); d]);
    for j in 1..d {
        rows.push(
            (0..d)
                .map(|i| {
                    let f = if i == j { int(0) } else { ratio(1, di) };
                    int(2) * (f - &c)
                })
                .collect(),
        );
    }
    RationalLattice::new(rows)
}

/// d! 2^d / (d^d (d + 1)).
pub fn simplex_centroid_efficiency(d: usize) -> Rational {
    let di = d as i64;
    let mut fact = int(1);
    for i in 1..=di {
        fact *= int(i);
    }
    fact * num_traits::pow(int(2), d) / (num_traits::pow(int(di), d) * int(di + 1))
}

/// Covering quotient of an order-2 construction, recomputed from its lattice.
pub fn order2_quotient(c: &Construction) -> Result<Option<QuotientStructure>> {
    match &c.order2 {
        Some(Order2Coset::Lifted(g)) => Ok(Some(extended_quotient(&c.lattice, g)?)),
        _ => Ok(None),
    }
}
