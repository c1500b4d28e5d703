//! Acceptance gate: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cayley_lattice::constructions::layout::{interleave, max_wire_length, Layout, Norm, Scheme};
use cayley_lattice::constructions::{build, twisted_mesh, BuildOptions, Construction, Family};
use cayley_lattice::coverings::{
    certify_local_optimality, covering_report_table, default_direction, fundamental_region, is_bijective_on, thm16,
    thm20, verify_simplex_cover_l7, ReportInput,
};
use cayley_lattice::groups::{diameter, moore_bound};
use cayley_lattice::lattices::{quotient_structure, scale_covering};
use cayley_lattice::rational::{int, ratio, Rational};
use cayley_lattice::search::{best_graph, ffz_bound, verify_witness, GroupClass, SearchSpec, Witness};
use cayley_lattice::tables::TABLE2_CYCLIC;
use cayley_lattice::{Lattice, Mode, Shape, ShapeKind};

/// Efficiency columns are compared against six-decimal printed values.
const EFF_TOLERANCE: (i64, i64) = (1, 1_000_000);

const BUDGET_TABLE1: Duration = Duration::from_secs(300);
const BUDGET_TABLE2: Duration = Duration::from_secs(600);
const BUDGET_MINUTE: Duration = Duration::from_secs(60);
const BUDGET_TWO_MINUTES: Duration = Duration::from_secs(120);
const BUDGET_TEN_SECONDS: Duration = Duration::from_secs(10);
const BUDGET_SECOND: Duration = Duration::from_secs(1);

type Check = Result<String, String>;

/// Witnesses collected from every search run, with their k and mode.
#[derive(Default)]
struct Runs {
    witnesses: Vec<(u64, Mode, Witness)>,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn opts() -> BuildOptions {
    BuildOptions::default()
}

fn exact_diameter(c: &Construction, what: &str) -> Result<(), String> {
    let r = c.verify().map_err(|e| format!("{what}: {e}"))?;
    ensure(r.diameter == Some(c.predicted_diameter), || {
        format!("{what}: diameter {:?}, expected {}", r.diameter, c.predicted_diameter)
    })?;
    ensure(c.group.order() == c.predicted_size, || format!("{what}: order {} != {}", c.group.order(), c.predicted_size))
}

fn search_row(runs: &mut Runs, mode: Mode, class: GroupClass, k: u64, expect: u64) -> Result<(), String> {
    let r = best_graph(&SearchSpec::new(3, k, mode, class)).map_err(|e| e.to_string())?;
    ensure(r.best_n == expect && r.exhaustive, || {
        format!("k={k}: best {} exhaustive {}, expected {expect}", r.best_n, r.exhaustive)
    })?;
    ensure(!r.witnesses.is_empty(), || format!("k={k}: no witness"))?;
    for w in &r.witnesses {
        let d = verify_witness(w).map_err(|e| e.to_string())?;
        ensure(d == Some(k), || format!("k={k}: witness {} {} has diameter {d:?}", w.group, w.gens))?;
        runs.witnesses.push((k, mode, w.clone()));
    }
    Ok(())
}

fn table1(runs: &mut Runs) -> Check {
    for (k, n) in [(1, 7), (2, 21), (3, 55), (4, 117)] {
        search_row(runs, Mode::Undirected, GroupClass::Abelian, k, n)?;
    }
    Ok("n = 7, 21, 55, 117".into())
}

fn table2(runs: &mut Runs) -> Check {
    let expect = [4, 9, 16, 27, 40, 57, 84];
    for (k, &n) in (1..).zip(&expect) {
        search_row(runs, Mode::Directed, GroupClass::Abelian, k, n)?;
        search_row(runs, Mode::Directed, GroupClass::Cyclic, k, n)?;
    }
    Ok("n = 4, 9, 16, 27, 40, 57, 84 (abelian and cyclic)".into())
}

fn twisted_2d() -> Check {
    for k in 1..=40 {
        let c = build(Family::Twisted2d, k, &opts()).map_err(|e| e.to_string())?;
        ensure(c.predicted_size == 2 * k * k + 2 * k + 1, || format!("k={k}: size formula"))?;
        exact_diameter(&c, &format!("k={k}"))?;
    }
    for k in 1..=4 {
        let r = best_graph(&SearchSpec::new(2, k, Mode::Undirected, GroupClass::Abelian)).map_err(|e| e.to_string())?;
        ensure(r.exhaustive && r.best_n == 2 * k * k + 2 * k + 1, || format!("k={k}: 2-generator search gave {}", r.best_n))?;
    }
    Ok("k = 1..40 exact; search optimal for k <= 4".into())
}

fn directed_2d() -> Check {
    let alt = BuildOptions { alternate: true, ..opts() };
    let mut alternates = 0;
    for k in 1..=40 {
        let c = build(Family::Directed2d, k, &opts()).map_err(|e| e.to_string())?;
        ensure(c.predicted_size == (k + 2) * (k + 2) / 3, || format!("k={k}: size formula"))?;
        exact_diameter(&c, &format!("k={k}"))?;
        if let Ok(a) = build(Family::Directed2d, k, &alt) {
            ensure(a.predicted_size == c.predicted_size, || format!("k={k}: alternate size"))?;
            exact_diameter(&a, &format!("alternate k={k}"))?;
            alternates += 1;
        }
    }
    ensure(alternates > 0, || "no alternate lattice was defined".into())?;
    Ok(format!("k = 1..40 exact; {alternates} alternate lattices exact"))
}

fn cyclic_3d_family() -> Check {
    for k in 0..=30u64 {
        let c = build(Family::Theorem15, k, &opts()).map_err(|e| e.to_string())?;
        let n = match k % 3 {
            0 => (32 * k.pow(3) + 48 * k * k + 54 * k + 27) / 27,
            1 => (32 * k.pow(3) + 48 * k * k + 78 * k + 31) / 27,
            _ => (32 * k.pow(3) + 48 * k * k + 54 * k + 11) / 27,
        };
        ensure(c.predicted_size == n, || format!("k={k}: size {} != {n}", c.predicted_size))?;
        ensure(c.group.is_cyclic(), || format!("k={k}: group {} is not cyclic", c.group))?;
        exact_diameter(&c, &format!("k={k}"))?;
    }
    let c = build(Family::Theorem15, 10, &opts()).map_err(|e| e.to_string())?;
    let gens: Vec<u64> = c.gens.unrestricted.iter().map(|g| g.0[0]).collect();
    ensure(c.group.factors() == [1393] && gens == [1, 92, 106], || format!("k=10: {} {}", c.group, c.gens))?;
    Ok("k = 0..30 exact; k=10 is Z_1393 {1,92,106}".into())
}

fn table4() -> Check {
    for k in 3..=10u64 {
        let c = build(Family::Order2Table4, k, &opts()).map_err(|e| e.to_string())?;
        let n = match k % 3 {
            0 => (64 * k.pow(3) + 108 * k) / 27,
            1 => (64 * k.pow(3) + 60 * k - 16) / 27,
            _ => (64 * k.pow(3) + 60 * k + 16) / 27,
        };
        ensure(c.group.factors() == [n], || format!("k={k}: group {} expected Z_{n}", c.group))?;
        exact_diameter(&c, &format!("k={k}"))?;
    }
    Ok("k = 3..10 exact, cyclic orders match".into())
}

fn l7() -> Lattice {
    Lattice::from_rows(&[[-2, 2, 2], [3, -3, 3], [4, 3, -1]]).unwrap()
}

fn simplex_certificate() -> Check {
    ensure(verify_simplex_cover_l7(), || "simplex cover check failed".into())?;
    let l = l7();
    let fr = fundamental_region(&l, &Shape::tetrahedron(3, 10), &default_direction(3)).map_err(|e| e.to_string())?;
    ensure(fr.points.len() == 84, || format!("region has {} points", fr.points.len()))?;
    ensure(is_bijective_on(&l, &fr.points).map_err(|e| e.to_string())?, || "region is not a bijection".into())?;
    let q = quotient_structure(&l).map_err(|e| e.to_string())?;
    ensure(q.group.factors() == [84], || format!("quotient {}", q.group))?;
    let c = Construction::from_lattice(l, Mode::Directed, 7).map_err(|e| e.to_string())?;
    exact_diameter(&c, "quotient")?;
    Ok("cover verified; |T| = 84 bijective; Z_84 directed diameter 7".into())
}

fn certificates() -> Check {
    let r16 = certify_local_optimality(&thm16());
    ensure(r16.passed() && r16.f_value == int(4), || format!("thm16 failed {:?}, F(v)={}", r16.failed(), r16.f_value))?;
    let c20 = thm20();
    let r20 = certify_local_optimality(&c20);
    ensure(r20.passed() && r20.f_value == int(84), || format!("thm20 failed {:?}, F(v)={}", r20.failed(), r20.f_value))?;
    for r in [ratio(1, 3), ratio(-1, 3), ratio(1, 2), ratio(-1, 2)] {
        let expect = int(84) - int(12) * &r * &r;
        let got = c20.det_along(std::slice::from_ref(&r));
        ensure(got == expect, || format!("thm20 F(v+rw) at r={r}: {got}"))?;
    }

    let mut bad = thm16();
    bad.v[0] += int(1);
    let failed = certify_local_optimality(&bad).failed();
    ensure(failed.iter().any(|n| n == "tight"), || format!("perturbed v: {failed:?}"))?;

    let mut bad = thm20();
    bad.cone[0].terms[0].1 += int(1);
    let failed = certify_local_optimality(&bad).failed();
    ensure(failed == ["cone"], || format!("perturbed cone: {failed:?}"))?;

    let mut bad = thm20();
    bad.det_curve[0].coeff += int(1);
    let failed = certify_local_optimality(&bad).failed();
    ensure(failed == ["det-curve"], || format!("perturbed curve: {failed:?}"))?;

    let mut bad = thm16();
    bad.null_space[0][0] += int(1);
    let failed = certify_local_optimality(&bad).failed();
    ensure(failed.iter().any(|n| n == "null-space"), || format!("perturbed null space: {failed:?}"))?;
    Ok("thm16 F(v)=4, thm20 F(v)=84 and curve; corruptions named".into())
}

fn decimal(s: &str) -> Rational {
    let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
    let scale = 10i64.pow(frac.len() as u32);
    let w: i64 = if whole.is_empty() { 0 } else { whole.parse().unwrap() };
    let f: i64 = if frac.is_empty() { 0 } else { frac.parse().unwrap() };
    ratio(w * scale + f, scale)
}

fn efficiencies() -> Check {
    let tol = ratio(EFF_TOLERANCE.0, EFF_TOLERANCE.1);
    let printed: [(Mode, u64, u64, &str, &str); 8] = [
        (Mode::Undirected, 2, 21, ".840000", ".367347"),
        (Mode::Undirected, 6, 333, ".883289", ".592000"),
        (Mode::Undirected, 10, 1393, ".892377", ".686940"),
        (Mode::Undirected, 14, 3629, ".887503", ".730892"),
        (Mode::Directed, 0, 1, "1", ".222222"),
        (Mode::Directed, 7, 84, ".700000", ".504000"),
        (Mode::Directed, 15, 462, ".566176", ".475309"),
        (Mode::Directed, 27, 2224, ".547783", ".494222"),
    ];
    for (mode, k, n, disc, real) in printed {
        let row = covering_report_table(&[ReportInput { d: 3, k, n, mode }]).map_err(|e| e.to_string())?;
        let row = &row[0];
        for (name, got, want) in [("discrete", &row.eff_discrete, disc), ("real", &row.eff_real, real)] {
            let diff = got - decimal(want);
            ensure(diff.clone() <= tol && -diff <= tol, || format!("{mode:?} k={k} {name}: {got} vs {want}"))?;
        }
    }
    Ok("8 rows within 1e-6".into())
}

fn scaled_composition() -> Check {
    let (l, k) = scale_covering(&l7(), 7, 2, ShapeKind::Tetrahedron).map_err(|e| e.to_string())?;
    ensure(k == 17, || format!("scaled radius {k}"))?;
    let c = Construction::from_lattice(l, Mode::Directed, k).map_err(|e| e.to_string())?;
    ensure(c.group.order() == 672, || format!("scaled order {}", c.group.order()))?;
    let r = diameter(&c.group, &c.gens).map_err(|e| e.to_string())?;
    ensure(r.diameter.is_some_and(|d| d <= 17), || format!("scaled diameter {:?}", r.diameter))?;
    Ok(format!("{} of order 672, diameter {}", c.group, r.diameter.unwrap()))
}

fn bounds(runs: &Runs) -> Check {
    ensure(!runs.witnesses.is_empty(), || "no search witnesses collected".into())?;
    let mut ffz_checked = 0;
    for (k, mode, w) in &runs.witnesses {
        let kind = match mode {
            Mode::Directed => ShapeKind::Tetrahedron,
            Mode::Undirected => ShapeKind::Octahedron,
        };
        let moore = moore_bound(3, *k, *mode, 0).map_err(|e| e.to_string())?;
        let shape = Shape::new(kind, 3, *k).and_then(|s| s.size()).map_err(|e| e.to_string())?;
        ensure(w.n <= moore && w.n <= shape, || format!("k={k} n={} exceeds moore {moore} / shape {shape}", w.n))?;
        if *mode == Mode::Directed && *k > 7 {
            ensure(w.n <= ffz_bound(*k).map_err(|e| e.to_string())?, || format!("k={k} n={} exceeds FFZ", w.n))?;
            ffz_checked += 1;
        }
    }
    for &(k, n, _, _) in TABLE2_CYCLIC.iter().filter(|r| r.0 > 7) {
        let f = ffz_bound(k).map_err(|e| e.to_string())?;
        ensure(n <= f, || format!("reference k={k} n={n} exceeds FFZ {f}"))?;
        ffz_checked += 1;
    }
    Ok(format!("{} witnesses within Moore and shape bounds; {ffz_checked} FFZ checks", runs.witnesses.len()))
}

fn ring(n: i64) -> Construction {
    Construction::from_lattice(Lattice::diagonal(&[n]).unwrap(), Mode::Undirected, 0).unwrap()
}

fn layouts() -> Check {
    for n in 2..=64u64 {
        let c = ring(n as i64);
        let l = Layout::boxed(&c, &[n], &[Scheme::Single], false).map_err(|e| e.to_string())?;
        let w = max_wire_length(&c, &l, Norm::Step).map_err(|e| e.to_string())?;
        ensure(w <= int(2), || format!("ring {n}: single interleave wire {w}"))?;
    }
    let order = interleave(16, true).map_err(|e| e.to_string())?;
    ensure(order == [1, 9, 16, 8, 2, 10, 15, 7, 3, 11, 14, 6, 4, 12, 13, 5], || format!("double order {order:?}"))?;
    let c = ring(16);
    let l = Layout::boxed(&c, &[16], &[Scheme::Double], false).map_err(|e| e.to_string())?;
    let w = max_wire_length(&c, &l, Norm::Step).map_err(|e| e.to_string())?;
    ensure(w <= int(4), || format!("double interleave wire {w}"))?;
    for (d, m) in [(2usize, 4u64), (2, 8), (3, 3), (3, 4)] {
        let c = twisted_mesh(d, m).map_err(|e| e.to_string())?;
        let mut sides = vec![2 * m; d];
        sides[d - 1] = m;
        let l = Layout::boxed(&c, &sides, &vec![Scheme::Single; d], true).map_err(|e| e.to_string())?;
        let sq = max_wire_length(&c, &l, Norm::Euclidean).map_err(|e| e.to_string())?;
        // (2 sqrt(d))^2 = 4d with unit spacing
        ensure(sq <= int(4 * d as i64), || format!("twisted mesh d={d} m={m}: squared wire {sq}"))?;
    }
    Ok("rings <= 2; double order exact and <= 4; twisted meshes <= 2 sqrt(d)".into())
}

fn main() -> ExitCode {
    let mut runs = Runs::default();
    let mut all = true;
    let mut report = |id: u32, name: &str, budget: Duration, f: &mut dyn FnMut() -> Check| {
        let start = Instant::now();
        let result = f();
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if took <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget {:.1}s", budget.as_secs_f64())),
            Err(e) => (false, e),
        };
        all &= ok;
        println!(
            "{} criterion {id:>2} {name}: {detail} [{:.2}s]",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
    };
    report(1, "undirected search k=1..4", BUDGET_TABLE1, &mut || table1(&mut runs));
    report(2, "directed search k=1..7", BUDGET_TABLE2, &mut || table2(&mut runs));
    report(3, "twisted 2-D tori", BUDGET_MINUTE, &mut twisted_2d);
    report(4, "directed 2-D tori", BUDGET_MINUTE, &mut directed_2d);
    report(5, "cyclic 3-D family", BUDGET_TWO_MINUTES, &mut cyclic_3d_family);
    report(6, "order-2 family", BUDGET_MINUTE, &mut table4);
    report(7, "simplex covering certificate", BUDGET_TEN_SECONDS, &mut simplex_certificate);
    report(8, "local optimality certificates", BUDGET_SECOND, &mut certificates);
    report(9, "efficiency columns", BUDGET_SECOND, &mut efficiencies);
    report(10, "scaled composition", BUDGET_TEN_SECONDS, &mut scaled_composition);
    report(11, "bound properties", BUDGET_SECOND, &mut || bounds(&runs));
    report(12, "layout wire lengths", BUDGET_SECOND, &mut layouts);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
