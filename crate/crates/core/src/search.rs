//! Exhaustive search for the largest Abelian Cayley graph of given degree and
//! diameter.

use std::collections::BTreeSet;
use std::fs;
use std::ops::ControlFlow;
use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::bfs::{Engine, Outcome, Scratch, Step};
use crate::error::{arg, Error, Result};
use crate::exec::Execution;
use crate::groups::{diameter, moore_bound, AbelianGroup, GeneratorSet, GroupElement, Mode};
use crate::shapes::{binomial, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupClass {
    Cyclic,
    Abelian,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Budget {
    /// Stop after this many generator sets.
    pub max_sets: Option<u64>,
    /// Wall-clock limit in seconds.
    pub max_seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub d: usize,
    pub k: u64,
    pub mode: Mode,
    pub order2: bool,
    pub group_class: GroupClass,
    pub n_min: u64,
    /// Defaults to the applicable upper bound.
    pub n_max: Option<u64>,
    /// 0: all multisets; 1: sorted, divisor rule, sign normalization;
    /// 2: additionally quotient cyclic sets by unit multiplication.
    pub canonicalization: u8,
    /// Cyclic groups only: the set must contain 1 (equivalently, a unit).
    pub require_one: bool,
    /// Record every feasible n instead of stopping at the first.
    pub scan_all: bool,
    pub budget: Budget,
    pub execution: Execution,
}

impl SearchSpec {
    pub fn new(d: usize, k: u64, mode: Mode, group_class: GroupClass) -> Self {
        SearchSpec {
            d,
            k,
            mode,
            order2: false,
            group_class,
            n_min: 1,
            n_max: None,
            canonicalization: 2,
            require_one: false,
            scan_all: false,
            budget: Budget::default(),
            execution: Execution::default(),
        }
    }

    pub fn with_order2(mut self) -> Self {
        self.order2 = true;
        self
    }

    /// Largest order a graph with these parameters can have.
    pub fn upper_bound(&self) -> Result<u64> {
        upper_bound(self.d, self.k, self.mode, self.order2)
    }

    fn validate(&self) -> Result<u64> {
        if self.d == 0 {
            return arg("search needs d >= 1");
        }
        if self.canonicalization > 2 {
            return arg("canonicalization level must be 0, 1 or 2");
        }
        if self.order2 && self.mode == Mode::Directed {
            return arg("order-2 search is undirected only");
        }
        let bound = self.upper_bound()?;
        let n_max = self.n_max.unwrap_or(bound);
        if n_max > bound {
            return arg(format!("n_max {n_max} exceeds the upper bound {bound}"));
        }
        if self.n_min == 0 {
            return arg("n_min must be at least 1");
        }
        Ok(n_max)
    }

    /// Identity for checkpoint matching: everything except limits and strategy.
    fn key(&self) -> SearchSpec {
        SearchSpec { budget: Budget::default(), execution: Execution::default(), ..self.clone() }
    }
}

/// 3(k+3)^3/25, rounded down.
pub fn ffz_bound(k: u64) -> Result<u64> {
    let c = k.checked_add(3).and_then(|x| x.checked_pow(3)).ok_or(Error::Overflow("ffz bound"))?;
    Ok(c / 25 * 3 + (c % 25) * 3 / 25)
}

/// Shape-size bound, tightened by the FFZ bound for d = 3 directed, k > 7.
pub fn upper_bound(d: usize, k: u64, mode: Mode, order2: bool) -> Result<u64> {
    if order2 {
        return moore_bound(d as u64, k, Mode::Undirected, 1);
    }
    match mode {
        Mode::Undirected => Shape::octahedron(d, k).size(),
        Mode::Directed => {
            let s = binomial(k + d as u64, d as u64)?;
            if d == 3 && k > 7 {
                Ok(s.min(ffz_bound(k)?))
            } else {
                Ok(s)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub n: u64,
    pub group: AbelianGroup,
    pub gens: GeneratorSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best_n: u64,
    pub witnesses: Vec<Witness>,
    pub exhaustive: bool,
    pub groups_examined: u64,
    pub sets_examined: u64,
    /// Every feasible n in range, descending, when `scan_all` is set.
    pub feasible_n: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub spec: SearchSpec,
    pub completed_n: Vec<u64>,
    pub best: Option<Witness>,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Checkpoint> {
        let text = fs::read_to_string(path).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::Checkpoint(e.to_string()))?;
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, text)
            .and_then(|_| fs::rename(&tmp, path))
            .map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Partitions of n as non-increasing part lists.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// One group per isomorphism class of order n, sorted by rank and then by
/// invariant factors.
pub fn enumerate_abelian_groups(n: u64) -> Result<Vec<AbelianGroup>> {
    if n == 0 {
        return arg("group order must be positive");
    }
    if n == 1 {
        return Ok(vec![AbelianGroup::trivial()]);
    }
    // factors kept largest first while primes are merged in
    let mut chains: Vec<Vec<u64>> = vec![vec![]];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for chain in &chains {
            for part in partitions(e) {
                let len = chain.len().max(part.len());
                let merged: Vec<u64> = (0..len)
                    .map(|i| chain.get(i).copied().unwrap_or(1) * p.pow(part.get(i).copied().unwrap_or(0)))
                    .collect();
                next.push(merged);
            }
        }
        chains = next;
    }
    let chains = chains.into_iter().map(|mut c| {
        c.reverse();
        c
    });
    let mut groups: Vec<AbelianGroup> = chains.into_iter().map(AbelianGroup::new).collect::<Result<_>>()?;
    groups.sort_by(|a, b| a.rank().cmp(&b.rank()).then_with(|| a.factors().cmp(b.factors())));
    Ok(groups)
}

struct Shared {
    examined: AtomicU64,
    truncated: AtomicBool,
    max_sets: Option<u64>,
    deadline: Option<Instant>,
}

impl Shared {
    fn tick(&self) -> bool {
        if self.truncated.load(Ordering::Relaxed) {
            return false;
        }
        let done = self.examined.fetch_add(1, Ordering::Relaxed) + 1;
        let over_sets = self.max_sets.is_some_and(|m| done > m);
        let over_time = done % 256 == 0 && self.deadline.is_some_and(|t| Instant::now() >= t);
        if over_sets || over_time {
            self.truncated.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

/// Per-group tables shared by all work units of that group.
struct GroupCtx {
    group: AbelianGroup,
    engine: Engine,
    neg: Vec<usize>,
    cyclic: bool,
    /// Elements of order 2 (all of them), or just the one for cyclic groups.
    rhos: Vec<usize>,
}

impl GroupCtx {
    fn new(group: AbelianGroup) -> GroupCtx {
        let n = group.order() as usize;
        let neg = (0..n).map(|i| group.index_of(&group.neg(&group.element_at(i as u64))) as usize).collect::<Vec<_>>();
        let rhos: Vec<usize> = (1..n)
            .filter(|&i| {
                let e = group.element_at(i as u64);
                group.add(&e, &e).is_zero()
            })
            .collect();
        let cyclic = group.is_cyclic() && n > 1;
        GroupCtx { engine: Engine::new(&group), group, neg, cyclic, rhos }
    }
}

/// A slice of the search: a group, an optional order-2 element, and a fixed
/// prefix of the generator tuple.
struct Unit {
    ctx: usize,
    rho: Option<usize>,
    prefix: Vec<usize>,
    /// Candidates for the remaining positions, ascending.
    tail: std::sync::Arc<Vec<usize>>,
    /// Index into `tail` that completion starts from.
    start: usize,
}

struct Plan {
    ctxs: Vec<GroupCtx>,
    units: Vec<Unit>,
}

fn canonical_sign(ctx: &GroupCtx, g: usize) -> bool {
    g <= ctx.neg[g]
}

fn plan_for_n(spec: &SearchSpec, n: u64) -> Result<Plan> {
    let mut ctxs = Vec::new();
    let mut units = Vec::new();
    let max_rank = spec.d + usize::from(spec.order2);
    for group in enumerate_abelian_groups(n)? {
        let trivial = group.order() == 1;
        if spec.group_class == GroupClass::Cyclic && !(group.is_cyclic() || trivial) {
            continue;
        }
        if !trivial && group.rank() > max_rank {
            continue;
        }
        if spec.require_one && !(group.is_cyclic() || trivial) {
            continue;
        }
        let ctx = GroupCtx::new(group);
        let rho_choices: Vec<Option<usize>> = if spec.order2 {
            if ctx.cyclic { ctx.rhos.iter().map(|&r| Some(r)).take(1).collect() } else { ctx.rhos.iter().map(|&r| Some(r)).collect() }
        } else {
            vec![None]
        };
        if rho_choices.is_empty() {
            continue;
        }
        let id = ctxs.len();
        let n = ctx.group.order() as usize;
        for rho in rho_choices {
            if spec.canonicalization == 0 || trivial {
                let all = std::sync::Arc::new((0..n).collect::<Vec<_>>());
                for first in 0..n {
                    units.push(Unit { ctx: id, rho, prefix: vec![first], tail: all.clone(), start: first });
                }
            } else if ctx.cyclic {
                for delta in (1..n).filter(|dv| n % dv == 0) {
                    if spec.require_one && delta != 1 {
                        break;
                    }
                    let tail: Vec<usize> = (1..n)
                        .filter(|&g| g.gcd(&n) >= delta)
                        .filter(|&g| spec.mode == Mode::Directed || canonical_sign(&ctx, g))
                        .collect();
                    let tail = std::sync::Arc::new(tail);
                    if spec.d == 1 {
                        units.push(Unit { ctx: id, rho, prefix: vec![delta], tail, start: 0 });
                    } else {
                        for i in 0..tail.len() {
                            units.push(Unit { ctx: id, rho, prefix: vec![delta, tail[i]], tail: tail.clone(), start: i });
                        }
                    }
                }
            } else {
                let tail: Vec<usize> = (1..n)
                    .filter(|&g| spec.mode == Mode::Directed || canonical_sign(&ctx, g))
                    .collect();
                let tail = std::sync::Arc::new(tail);
                for i in 0..tail.len() {
                    units.push(Unit { ctx: id, rho, prefix: vec![tail[i]], tail: tail.clone(), start: i });
                }
            }
        }
        ctxs.push(ctx);
    }
    Ok(Plan { ctxs, units })
}

fn mod_inv(a: usize, n: usize) -> usize {
    let e = (a as i64).extended_gcd(&(n as i64));
    e.x.rem_euclid(n as i64) as usize
}

/// Level-2 test for a cyclic tuple starting with 1: is some other
/// representation (scale by the inverse of another unit generator) smaller?
fn dominated(tuple: &[usize], n: usize, mode: Mode) -> bool {
    let norm = |x: usize| if mode == Mode::Undirected { x.min(n - x) } else { x };
    let mut alt = Vec::with_capacity(tuple.len());
    for (j, &g) in tuple.iter().enumerate().skip(1) {
        if g.gcd(&n) != 1 {
            continue;
        }
        let u = mod_inv(g, n);
        alt.clear();
        alt.extend(tuple.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &x)| norm(x * u % n)));
        alt.sort_unstable();
        // representation is (1, sorted rest); compare rest
        if alt.as_slice() < &tuple[1..] {
            return true;
        }
    }
    false
}

fn run_unit(spec: &SearchSpec, plan: &Plan, unit: &Unit, shared: &Shared) -> Option<Vec<usize>> {
    let ctx = &plan.ctxs[unit.ctx];
    let n = ctx.group.order() as usize;
    let d = spec.d;
    let mut tuple = unit.prefix.clone();
    let mut scratch = Scratch::default();
    let level2 = spec.canonicalization >= 2 && ctx.cyclic;
    let mut visit = |t: &[usize]| -> ControlFlow<Option<Vec<usize>>> {
        if level2 && t[0] == 1 && dominated(t, n, spec.mode) {
            return ControlFlow::Continue(());
        }
        if ctx.cyclic && spec.canonicalization >= 1 {
            let g = t.iter().fold(n, |acc, &x| acc.gcd(&x));
            let g = unit.rho.map_or(g, |r| g.gcd(&r));
            if g != 1 {
                return ControlFlow::Continue(());
            }
        }
        if !shared.tick() {
            return ControlFlow::Break(None);
        }
        let mut steps: Vec<Step> = Vec::with_capacity(2 * d + 1);
        for &g in t {
            steps.push(ctx.engine.step_index(g));
            if spec.mode == Mode::Undirected && ctx.neg[g] != g {
                steps.push(ctx.engine.step_index(ctx.neg[g]));
            }
        }
        if let Some(r) = unit.rho {
            steps.push(ctx.engine.step_index(r));
        }
        match ctx.engine.run(&steps, Some(spec.k), &mut scratch, None) {
            Outcome::Reached(_) => ControlFlow::Break(Some(t.to_vec())),
            _ => ControlFlow::Continue(()),
        }
    };
    let need = d.saturating_sub(tuple.len());
    let found = complete(&mut tuple, need, &unit.tail, unit.start, &mut visit);
    match found {
        ControlFlow::Break(hit) => hit,
        ControlFlow::Continue(()) => None,
    }
}

/// Extend `tuple` by `need` non-decreasing picks from `tail[start..]`.
fn complete<F>(tuple: &mut Vec<usize>, need: usize, tail: &[usize], start: usize, visit: &mut F) -> ControlFlow<Option<Vec<usize>>>
where
    F: FnMut(&[usize]) -> ControlFlow<Option<Vec<usize>>>,
{
    if need == 0 {
        return visit(tuple);
    }
    for i in start..tail.len() {
        tuple.push(tail[i]);
        let r = complete(tuple, need - 1, tail, i, visit);
        tuple.pop();
        r?;
    }
    ControlFlow::Continue(())
}

fn witness(spec: &SearchSpec, ctx: &GroupCtx, rho: Option<usize>, tuple: &[usize]) -> Witness {
    let g = &ctx.group;
    let unrestricted = tuple.iter().map(|&i| g.element_at(i as u64)).collect();
    let order2 = rho.map(|r| g.element_at(r as u64));
    Witness { n: g.order(), group: g.clone(), gens: GeneratorSet::new(unrestricted, order2, spec.mode) }
}

/// Outcome of scanning one n.
enum Scan {
    Hit(Witness),
    Miss,
    Truncated(Option<Witness>),
}

fn scan_n(spec: &SearchSpec, n: u64, shared: &Shared) -> Result<(Scan, u64)> {
    let plan = plan_for_n(spec, n)?;
    let groups = plan.ctxs.len() as u64;
    if n == 1 && !spec.order2 {
        let g = AbelianGroup::trivial();
        let gens = GeneratorSet::new(vec![g.identity(); spec.d], None, spec.mode);
        return Ok((Scan::Hit(Witness { n: 1, group: g, gens }), 1));
    }
    let hit = spec.execution.find_map_first(&plan.units, |u| {
        run_unit(spec, &plan, u, shared).map(|t| witness(spec, &plan.ctxs[u.ctx], u.rho, &t))
    });
    let truncated = shared.truncated.load(Ordering::Relaxed);
    Ok(match (hit, truncated) {
        (Some(w), false) => (Scan::Hit(w), groups),
        (w, true) => (Scan::Truncated(w), groups),
        (None, false) => (Scan::Miss, groups),
    })
}

pub fn best_graph(spec: &SearchSpec) -> Result<SearchResult> {
    run_search(spec, None)
}

/// Like [`best_graph`], resuming from and updating a JSON checkpoint.
pub fn best_graph_with_checkpoint(spec: &SearchSpec, path: &Path) -> Result<SearchResult> {
    run_search(spec, Some(path))
}

fn run_search(spec: &SearchSpec, checkpoint: Option<&Path>) -> Result<SearchResult> {
    let n_max = spec.validate()?;
    let mut ck = match checkpoint {
        Some(p) if p.exists() => {
            let c = Checkpoint::load(p)?;
            if c.spec.key() != spec.key() {
                return Err(Error::Checkpoint("checkpoint was written for a different search".into()));
            }
            c
        }
        _ => Checkpoint { spec: spec.key(), completed_n: vec![], best: None },
    };
    let shared = Shared {
        examined: AtomicU64::new(0),
        truncated: AtomicBool::new(false),
        max_sets: spec.budget.max_sets,
        deadline: spec.budget.max_seconds.map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0))),
    };
    let done: BTreeSet<u64> = ck.completed_n.iter().copied().collect();
    let mut result = SearchResult {
        best_n: 0,
        witnesses: vec![],
        exhaustive: true,
        groups_examined: 0,
        sets_examined: 0,
        feasible_n: vec![],
    };
    if let Some(b) = &ck.best {
        if !spec.scan_all {
            result.best_n = b.n;
            result.witnesses.push(b.clone());
            return Ok(result);
        }
    }
    let mut n = n_max;
    while n >= spec.n_min {
        if done.contains(&n) {
            n -= 1;
            continue;
        }
        let (scan, groups) = scan_n(spec, n, &shared)?;
        result.groups_examined += groups;
        match scan {
            Scan::Hit(w) => {
                if result.best_n == 0 {
                    result.best_n = n;
                    result.witnesses.push(w.clone());
                    ck.best = Some(w);
                }
                result.feasible_n.push(n);
                ck.completed_n.push(n);
                if let Some(p) = checkpoint {
                    ck.save(p)?;
                }
                if !spec.scan_all {
                    break;
                }
            }
            Scan::Miss => {
                ck.completed_n.push(n);
                if let Some(p) = checkpoint {
                    ck.save(p)?;
                }
            }
            Scan::Truncated(w) => {
                if let Some(w) = w {
                    if result.best_n == 0 {
                        result.best_n = n;
                        result.witnesses.push(w);
                    }
                }
                result.exhaustive = false;
                break;
            }
        }
        n -= 1;
    }
    result.sets_examined = shared.examined.load(Ordering::Relaxed);
    if !spec.scan_all {
        result.feasible_n.clear();
    }
    Ok(result)
}

/// Re-run the BFS on a witness and return its diameter.
pub fn verify_witness(w: &Witness) -> Result<Option<u64>> {
    Ok(diameter(&w.group, &w.gens)?.diameter)
}

/// Cyclic generator coordinates of a witness, for display.
pub fn cyclic_gens(w: &Witness) -> Option<Vec<u64>> {
    w.group.is_cyclic().then(|| w.gens.unrestricted.iter().map(|e: &GroupElement| e.0[0]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn partition_count(e: u32) -> u64 {
        // p(e) by the pentagonal recurrence
        let mut p = vec![1i64];
        for m in 1..=e as i64 {
            let mut s = 0;
            let mut j = 1;
            loop {
                let g1 = j * (3 * j - 1) / 2;
                if g1 > m {
                    break;
                }
                let sign = if j % 2 == 1 { 1 } else { -1 };
                s += sign * p[(m - g1) as usize];
                let g2 = j * (3 * j + 1) / 2;
                if g2 <= m {
                    s += sign * p[(m - g2) as usize];
                }
                j += 1;
            }
            p.push(s);
        }
        p[e as usize] as u64
    }

    #[test]
    fn group_enumeration() {
        let names = |n| enumerate_abelian_groups(n).unwrap().iter().map(|g| g.to_string()).collect::<Vec<_>>();
        assert_eq!(names(4), vec!["Z_4", "Z_2xZ_2"]);
        assert_eq!(names(12), vec!["Z_12", "Z_2xZ_6"]);
        assert_eq!(names(93), vec!["Z_93"]);
        for n in 1..=400u64 {
            let groups = enumerate_abelian_groups(n).unwrap();
            let expect: u64 = factorize(n).iter().map(|&(_, e)| partition_count(e)).product();
            assert_eq!(groups.len() as u64, expect, "n={n}");
            let distinct: BTreeSet<_> = groups.iter().collect();
            assert_eq!(distinct.len(), groups.len());
            assert!(groups.iter().all(|g| g.order() == n));
        }
    }

    #[test]
    fn ffz_rounds_down() {
        assert_eq!(ffz_bound(8).unwrap(), 3 * 1331 / 25);
        assert_eq!(upper_bound(3, 8, Mode::Directed, false).unwrap(), 159);
        assert_eq!(upper_bound(3, 7, Mode::Directed, false).unwrap(), 120);
    }

    #[test]
    fn small_searches() {
        let r = best_graph(&SearchSpec::new(2, 2, Mode::Undirected, GroupClass::Abelian)).unwrap();
        assert_eq!(r.best_n, 13);
        assert!(r.exhaustive);
        let r = best_graph(&SearchSpec::new(3, 2, Mode::Undirected, GroupClass::Abelian)).unwrap();
        assert_eq!(r.best_n, 21);
        assert_eq!(cyclic_gens(&r.witnesses[0]), Some(vec![1, 2, 8]));
        let r = best_graph(&SearchSpec::new(3, 5, Mode::Directed, GroupClass::Cyclic)).unwrap();
        assert_eq!(r.best_n, 40);
        assert_eq!(cyclic_gens(&r.witnesses[0]), Some(vec![1, 6, 15]));
    }

    #[test]
    fn order2_searches() {
        let r = best_graph(&SearchSpec::new(3, 1, Mode::Undirected, GroupClass::Abelian).with_order2()).unwrap();
        assert_eq!(r.best_n, 8);
        let r = best_graph(&SearchSpec::new(3, 2, Mode::Undirected, GroupClass::Cyclic).with_order2()).unwrap();
        assert_eq!(r.best_n, 26);
        assert_eq!(verify_witness(&r.witnesses[0]).unwrap(), Some(2));
    }

    #[test]
    fn levels_agree_on_small_cases() {
        for (d, k, mode) in [(2, 3, Mode::Directed), (2, 2, Mode::Undirected), (3, 1, Mode::Undirected), (3, 2, Mode::Directed)] {
            for class in [GroupClass::Cyclic, GroupClass::Abelian] {
                let mut s = SearchSpec::new(d, k, mode, class);
                let best: Vec<u64> = (0..=2)
                    .map(|lvl| {
                        s.canonicalization = lvl;
                        best_graph(&s).unwrap().best_n
                    })
                    .collect();
                assert!(best.windows(2).all(|w| w[0] == w[1]), "{d} {k} {mode:?} {class:?} {best:?}");
            }
        }
    }

    #[test]
    fn budget_truncates() {
        let mut s = SearchSpec::new(3, 4, Mode::Undirected, GroupClass::Abelian);
        s.budget.max_sets = Some(10);
        let r = best_graph(&s).unwrap();
        assert!(!r.exhaustive);
        assert!(r.sets_examined <= 10 + 64);
    }

    #[test]
    fn bad_specs() {
        let mut s = SearchSpec::new(3, 2, Mode::Undirected, GroupClass::Abelian);
        s.n_max = Some(1000);
        assert!(best_graph(&s).is_err());
        let s = SearchSpec::new(3, 2, Mode::Directed, GroupClass::Abelian).with_order2();
        assert!(best_graph(&s).is_err());
    }
}
