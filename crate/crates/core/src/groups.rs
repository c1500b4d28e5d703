//! Finite Abelian groups in invariant-factor form, generator sets, and exact
//! Cayley-graph diameters.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bfs::{Engine, Outcome, Scratch};
use crate::error::{arg, Error, Result};
use crate::shapes::Shape;

/// Default cap on the order of a group handed to the BFS.
pub const BFS_BUDGET: u64 = 1 << 30;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct AbelianGroup {
    factors: Vec<u64>,
    order: u64,
}

impl AbelianGroup {
    /// Invariant factors m_1 | m_2 | ... | m_r.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.is_empty() {
            return arg("a group needs at least one factor");
        }
        if factors.contains(&0) {
            return arg("invariant factors must be positive");
        }
        if factors.len() > 1 && factors.contains(&1) {
            return arg("factor 1 is only allowed as the trivial group [1]");
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return arg(format!("factors {factors:?} do not form a divisor chain"));
        }
        let order = factors
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .ok_or(Error::Overflow("group order"))?;
        Ok(AbelianGroup { factors, order })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        AbelianGroup::new(vec![n])
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: vec![1], order: 1 }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rank(&self) -> usize {
        if self.order == 1 {
            0
        } else {
            self.factors.len()
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.factors.len()])
    }

    /// Reduce arbitrary integer coordinates into the group.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.factors.len() {
            return arg(format!(
                "element has {} coordinates, group has {} factors",
                coords.len(),
                self.factors.len()
            ));
        }
        Ok(GroupElement(
            coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &m)| c.rem_euclid(m as i64) as u64)
                .collect(),
        ))
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        e.0.len() == self.factors.len() && e.0.iter().zip(&self.factors).all(|(c, m)| c < m)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter().zip(&b.0).zip(&self.factors).map(|((x, y), m)| (x + y) % m).collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().zip(&self.factors).map(|(x, m)| (m - x) % m).collect())
    }

    pub fn scale(&self, a: &GroupElement, s: i64) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &m)| ((x as i128 * s as i128).rem_euclid(m as i128)) as u64)
                .collect(),
        )
    }

    /// Mixed-radix index, first factor most significant.
    pub fn index_of(&self, e: &GroupElement) -> u64 {
        e.0.iter().zip(&self.factors).fold(0u64, |acc, (&x, &m)| acc * m + x)
    }

    pub fn element_at(&self, mut index: u64) -> GroupElement {
        let mut c = vec![0u64; self.factors.len()];
        for j in (0..self.factors.len()).rev() {
            c[j] = index % self.factors[j];
            index /= self.factors[j];
        }
        GroupElement(c)
    }

    /// Order of an element.
    pub fn element_order(&self, e: &GroupElement) -> u64 {
        e.0.iter()
            .zip(&self.factors)
            .map(|(&x, &m)| m / num_integer::gcd(x, m))
            .fold(1u64, num_integer::lcm)
    }
}

impl TryFrom<Vec<u64>> for AbelianGroup {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        AbelianGroup::new(v)
    }
}

impl From<AbelianGroup> for Vec<u64> {
    fn from(g: AbelianGroup) -> Vec<u64> {
        g.factors
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|m| format!("Z_{m}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Directed,
    Undirected,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSet {
    pub unrestricted: Vec<GroupElement>,
    pub order2: Option<GroupElement>,
    pub mode: Mode,
}

impl GeneratorSet {
    pub fn new(unrestricted: Vec<GroupElement>, order2: Option<GroupElement>, mode: Mode) -> Self {
        GeneratorSet { unrestricted, order2, mode }
    }

    /// Cyclic-group shorthand.
    pub fn cyclic(gens: &[u64], mode: Mode) -> Self {
        GeneratorSet::new(gens.iter().map(|&g| GroupElement(vec![g])).collect(), None, mode)
    }

    pub fn with_order2(mut self, rho: GroupElement) -> Self {
        self.order2 = Some(rho);
        self
    }

    pub fn d(&self) -> usize {
        self.unrestricted.len()
    }

    pub fn validate(&self, group: &AbelianGroup) -> Result<()> {
        if self.unrestricted.is_empty() {
            return arg("need at least one unrestricted generator");
        }
        for g in self.unrestricted.iter().chain(self.order2.iter()) {
            if !group.contains(g) {
                return arg(format!("generator {g} is not an element of {group}"));
            }
        }
        if let Some(rho) = &self.order2 {
            if rho.is_zero() || !group.add(rho, rho).is_zero() {
                return arg(format!("order-2 generator {rho} does not have order 2"));
            }
        }
        Ok(())
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.unrestricted.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(","))?;
        if let Some(rho) = &self.order2 {
            write!(f, ";rho={rho}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiameterResult {
    pub generates: bool,
    pub diameter: Option<u64>,
    /// Cumulative number of elements within word length 0, 1, 2, ...
    pub ball_sizes: Vec<u64>,
}

pub fn diameter(group: &AbelianGroup, gens: &GeneratorSet) -> Result<DiameterResult> {
    diameter_with_budget(group, gens, BFS_BUDGET)
}

pub fn diameter_with_budget(
    group: &AbelianGroup,
    gens: &GeneratorSet,
    budget: u64,
) -> Result<DiameterResult> {
    gens.validate(group)?;
    if group.order() > budget {
        return Err(Error::Resource { what: "diameter BFS", needed: group.order(), budget });
    }
    let engine = Engine::new(group);
    let steps = steps_for(&engine, group, gens);
    let mut sizes = Vec::new();
    let outcome = engine.run(&steps, None, &mut Scratch::default(), Some(&mut sizes));
    Ok(match outcome {
        Outcome::Reached(k) => DiameterResult { generates: true, diameter: Some(k), ball_sizes: sizes },
        _ => DiameterResult { generates: false, diameter: None, ball_sizes: sizes },
    })
}

fn steps_for(engine: &Engine, group: &AbelianGroup, gens: &GeneratorSet) -> Vec<crate::bfs::Step> {
    let mut steps = Vec::new();
    for g in &gens.unrestricted {
        steps.push(engine.step(g.coords()));
        if gens.mode == Mode::Undirected {
            steps.push(engine.step(group.neg(g).coords()));
        }
    }
    if let Some(rho) = &gens.order2 {
        steps.push(engine.step(rho.coords()));
    }
    steps
}

/// Path-counting upper bound on the order of a degree-d Cayley graph of
/// diameter k.
pub fn moore_bound(d: u64, k: u64, mode: Mode, order2_count: u32) -> Result<u64> {
    if d == 0 {
        return arg("moore bound needs d >= 1");
    }
    let ovf = Error::Overflow("moore bound");
    match (order2_count, mode) {
        (0, Mode::Directed) => {
            let mut total = 0u64;
            let mut p = 1u64;
            for i in 0..=k {
                total = total.checked_add(p).ok_or(ovf.clone())?;
                if i < k {
                    p = p.checked_mul(d).ok_or(ovf.clone())?;
                }
            }
            Ok(total)
        }
        (0, Mode::Undirected) => {
            let mut total = 1u64;
            let mut shell = 2 * d;
            for i in 1..=k {
                total = total.checked_add(shell).ok_or(ovf.clone())?;
                if i < k {
                    shell = shell.checked_mul(2 * d - 1).ok_or(ovf.clone())?;
                }
            }
            Ok(total)
        }
        (1, Mode::Undirected) => {
            let a = Shape::octahedron(d as usize, k).size()?;
            let b = if k == 0 { 0 } else { Shape::octahedron(d as usize, k - 1).size()? };
            a.checked_add(b).ok_or(ovf)
        }
        (1, Mode::Directed) => arg("the order-2 bound is stated for undirected graphs only"),
        _ => arg("order2_count must be 0 or 1"),
    }
}
