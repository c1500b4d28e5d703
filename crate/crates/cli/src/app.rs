use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cayley_lattice::constructions::{build, twisted_mesh, BuildOptions, Construction, Family};
use cayley_lattice::coverings::{
    certify_local_optimality, covers, covers_order2, default_direction, fundamental_region, is_bijective_on, thm16,
    thm20, verify_simplex_cover, l7_combinations, l7_generators, l7_translates,
};
use cayley_lattice::lattices::{presentation, Lattice, QuotientStructure};
use cayley_lattice::rational::{to_fixed, Rational};
use cayley_lattice::search::{best_graph, best_graph_with_checkpoint, Budget, GroupClass, SearchSpec};
use cayley_lattice::tables::{table, Columns, TableOptions};
use cayley_lattice::{render, AbelianGroup, Error, Execution, GeneratorSet, GroupElement, Mode, Shape, ShapeKind};

const EXIT_FAIL: i32 = 1;
const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "cayley-lattice", version, about = "Abelian Cayley graphs of small diameter via lattice coverings")]
struct Cli {
    /// Emit JSON instead of TSV.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a named family and optionally verify its diameter.
    Construct(ConstructArgs),
    /// Diameter of a Cayley graph given by a group and generators.
    Diameter(DiameterArgs),
    /// Largest Cayley graph of given degree and diameter.
    Search(SearchArgs),
    /// Check that translates of a shape cover Z^d.
    VerifyCover(CoverArgs),
    /// Fundamental region inside a covering shape.
    FundamentalRegion(RegionArgs),
    /// Check a local-optimality certificate in exact arithmetic.
    Certify(CertifyArgs),
    /// Regenerate a size table.
    Tables(TablesArgs),
    /// Render a tiling or face-coverage figure.
    Svg(SvgArgs),
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    k: Option<u64>,
    /// Dimension for toroidal, bcc_highdim and twisted_mesh.
    #[arg(long)]
    d: Option<usize>,
    /// Half-period for twisted_mesh.
    #[arg(long)]
    m: Option<u64>,
    /// Toroidal only.
    #[arg(long)]
    directed: bool,
    /// directed2d: alternate lattice.
    #[arg(long)]
    alternate: bool,
    /// product_z2: base family.
    #[arg(long)]
    base: Option<String>,
    /// Run the BFS and compare with the predicted diameter.
    #[arg(long)]
    verify: bool,
}

#[derive(Args, Debug)]
struct DiameterArgs {
    /// `84` or invariant factors such as `93x3`.
    #[arg(long)]
    group: String,
    /// `1,2,8` for cyclic groups, `1,0;9,1;10,2` otherwise.
    #[arg(long, allow_hyphen_values = true)]
    gens: String,
    /// Order-2 generator.
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<String>,
    #[arg(long)]
    directed: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClassArg {
    Cyclic,
    Abelian,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    k: u64,
    #[arg(long)]
    directed: bool,
    #[arg(long)]
    order2: bool,
    #[arg(long, value_enum, default_value = "abelian")]
    class: ClassArg,
    #[arg(long, default_value_t = 1)]
    n_min: u64,
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(0..=2))]
    level: u8,
    /// Cyclic groups only: generator sets must contain 1.
    #[arg(long)]
    require_one: bool,
    #[arg(long)]
    scan_all: bool,
    #[arg(long)]
    max_sets: Option<u64>,
    #[arg(long)]
    max_seconds: Option<f64>,
    #[arg(long)]
    sequential: bool,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ShapeArg {
    Octa,
    Tetra,
}

impl From<ShapeArg> for ShapeKind {
    fn from(s: ShapeArg) -> ShapeKind {
        match s {
            ShapeArg::Octa => ShapeKind::Octahedron,
            ShapeArg::Tetra => ShapeKind::Tetrahedron,
        }
    }
}

#[derive(Args, Debug)]
struct CoverArgs {
    /// Basis rows `a,b,c;d,e,f;g,h,i`.
    #[arg(long, required_unless_present = "simplex_l7", allow_hyphen_values = true)]
    lattice: Option<String>,
    #[arg(long, value_enum, default_value = "octa")]
    shape: ShapeArg,
    #[arg(long, required_unless_present = "simplex_l7")]
    k: Option<u64>,
    /// Order-2 coset vector; uses the ball W_k.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    /// Check the fourteen-translate simplex cover instead.
    #[arg(long)]
    simplex_l7: bool,
}

#[derive(Args, Debug)]
struct RegionArgs {
    #[arg(long, allow_hyphen_values = true)]
    lattice: String,
    #[arg(long, value_enum, default_value = "tetra")]
    shape: ShapeArg,
    #[arg(long)]
    k: u64,
    /// Ordering direction, rationals such as `1,1,1` or `2,-1/3`.
    #[arg(long, allow_hyphen_values = true)]
    direction: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CertArg {
    Thm16,
    Thm20,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[arg(long, value_enum)]
    which: CertArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ColumnsArg {
    Constructions,
    Search,
    Reference,
    All,
}

#[derive(Args, Debug)]
struct TablesArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    which: u8,
    #[arg(long)]
    kmax: u64,
    #[arg(long, value_enum, default_value = "all")]
    columns: ColumnsArg,
    #[arg(long)]
    max_seconds: Option<f64>,
    #[arg(long)]
    sequential: bool,
}

#[derive(Args, Debug)]
struct SvgArgs {
    #[arg(long, value_parser = ["1", "4", "7"])]
    figure: String,
    #[arg(long, default_value_t = 3)]
    k: u64,
    #[arg(long)]
    out: PathBuf,
}

/// Failure carrying an exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = if matches!(e, Error::Argument(_)) { EXIT_USAGE } else { EXIT_FAIL };
        Failure { code, message: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: msg.into() }
}

type CmdResult = std::result::Result<(String, bool), Failure>;

pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let json = cli.json;
    let result = match cli.command {
        Command::Construct(a) => construct(a, json),
        Command::Diameter(a) => diameter_cmd(a, json),
        Command::Search(a) => search(a, json),
        Command::VerifyCover(a) => verify_cover(a, json),
        Command::FundamentalRegion(a) => region(a, json),
        Command::Certify(a) => certify(a, json),
        Command::Tables(a) => tables(a, json),
        Command::Svg(a) => svg(a, json),
    };
    match result {
        Ok((text, ok)) => {
            let _ = out.write_all(text.as_bytes());
            if ok {
                0
            } else {
                EXIT_FAIL
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn tsv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = header.join("\t");
    s.push('\n');
    for r in rows {
        s.push_str(&r.join("\t"));
        s.push('\n');
    }
    s
}

fn parse_ints(s: &str) -> std::result::Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| usage(format!("'{t}' is not an integer"))))
        .collect()
}

fn parse_lattice(s: &str) -> std::result::Result<Lattice, Failure> {
    let rows = s.split(';').map(parse_ints).collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(Lattice::new(rows)?)
}

fn parse_rationals(s: &str) -> std::result::Result<Vec<Rational>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<Rational>().map_err(|_| usage(format!("'{t}' is not a rational"))))
        .collect()
}

/// Group from `84` or `93x3`, with a map from user coordinates to canonical
/// elements.
struct UserGroup {
    group: AbelianGroup,
    quotient: QuotientStructure,
}

impl UserGroup {
    fn parse(s: &str) -> std::result::Result<UserGroup, Failure> {
        let orders = s
            .split('x')
            .map(|t| t.trim().parse::<u64>().map_err(|_| usage(format!("bad group '{s}'"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let quotient = presentation(&orders)?;
        Ok(UserGroup { group: quotient.group.clone(), quotient })
    }

    fn element(&self, s: &str) -> std::result::Result<GroupElement, Failure> {
        let coords = parse_ints(s)?;
        let rank = self.quotient.images.len();
        if coords.len() != rank {
            return Err(usage(format!("element '{s}' needs {rank} coordinates")));
        }
        Ok(self.quotient.map(&coords))
    }

    fn gens(&self, s: &str) -> std::result::Result<Vec<GroupElement>, Failure> {
        if self.quotient.images.len() == 1 {
            parse_ints(s)?.iter().map(|c| self.element(&c.to_string())).collect()
        } else {
            s.split(';').map(|t| self.element(t.trim_matches(|c| c == '(' || c == ')'))).collect()
        }
    }
}

fn mode(directed: bool) -> Mode {
    if directed {
        Mode::Directed
    } else {
        Mode::Undirected
    }
}

fn construction_row(c: &Construction) -> Vec<String> {
    vec![
        c.family.to_string(),
        c.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(","),
        c.group.to_string(),
        c.gens.to_string(),
        c.predicted_size.to_string(),
        c.predicted_diameter.to_string(),
    ]
}

fn construct(a: ConstructArgs, json: bool) -> CmdResult {
    let c = if a.family == "twisted_mesh" {
        let (Some(d), Some(m)) = (a.d, a.m) else {
            return Err(usage("twisted_mesh needs --d and --m"));
        };
        twisted_mesh(d, m)?
    } else {
        let family: Family = a.family.parse()?;
        let k = a.k.ok_or_else(|| usage("--k is required"))?;
        let base = a.base.as_deref().map(str::parse::<Family>).transpose()?;
        let opts = BuildOptions { d: a.d, mode: mode(a.directed), alternate: a.alternate, base };
        build(family, k, &opts)?
    };
    if !a.verify {
        if json {
            return Ok((pretty(&c), true));
        }
        let header = ["family", "params", "group", "generators", "predicted_size", "predicted_diameter"];
        return Ok((tsv(&header, &[construction_row(&c)]), true));
    }
    let r = c.verify()?;
    let kernel = c.kernel_matches()?;
    let ok = r.generates
        && kernel
        && c.group.order() == c.predicted_size
        && match r.diameter {
            Some(dm) if c.diameter_is_bound => dm <= c.predicted_diameter,
            Some(dm) => dm == c.predicted_diameter,
            None => false,
        };
    if !ok {
        eprintln!(
            "mismatch: predicted size {} diameter {}, got size {} diameter {}",
            c.predicted_size,
            c.predicted_diameter,
            c.group.order(),
            r.diameter.map(|d| d.to_string()).unwrap_or_else(|| "none".into())
        );
    }
    if json {
        return Ok((pretty(&json!({ "construction": c, "diameter": r, "kernel_matches": kernel, "verified": ok })), ok));
    }
    let mut row = construction_row(&c);
    row.push(r.diameter.map(|d| d.to_string()).unwrap_or_default());
    row.push(kernel.to_string());
    row.push(if ok { "PASS" } else { "FAIL" }.into());
    let header = [
        "family",
        "params",
        "group",
        "generators",
        "predicted_size",
        "predicted_diameter",
        "diameter",
        "kernel_matches",
        "result",
    ];
    Ok((tsv(&header, &[row]), ok))
}

fn diameter_cmd(a: DiameterArgs, json: bool) -> CmdResult {
    let ug = UserGroup::parse(&a.group)?;
    let mut gens = GeneratorSet::new(ug.gens(&a.gens)?, None, mode(a.directed));
    if let Some(r) = &a.rho {
        gens.order2 = Some(ug.element(r)?);
    }
    let r = cayley_lattice::groups::diameter(&ug.group, &gens)?;
    if json {
        return Ok((pretty(&json!({ "group": ug.group, "generators": gens, "result": r })), true));
    }
    Ok((r.diameter.map(|d| format!("{d}\n")).unwrap_or_else(|| "not generating\n".into()), true))
}

fn search(a: SearchArgs, json: bool) -> CmdResult {
    let class = match a.class {
        ClassArg::Cyclic => GroupClass::Cyclic,
        ClassArg::Abelian => GroupClass::Abelian,
    };
    let mut spec = SearchSpec::new(a.d, a.k, mode(a.directed), class);
    spec.order2 = a.order2;
    spec.n_min = a.n_min;
    spec.n_max = a.n_max;
    spec.canonicalization = a.level;
    spec.require_one = a.require_one;
    spec.scan_all = a.scan_all;
    spec.budget = Budget { max_sets: a.max_sets, max_seconds: a.max_seconds };
    spec.execution = if a.sequential { Execution::Sequential } else { Execution::Parallel };
    let r = match &a.checkpoint {
        Some(p) => best_graph_with_checkpoint(&spec, p)?,
        None => best_graph(&spec)?,
    };
    if json {
        return Ok((pretty(&r), true));
    }
    let (group, gens) = r
        .witnesses
        .first()
        .map(|w| (w.group.to_string(), w.gens.to_string()))
        .unwrap_or_default();
    let row = vec![
        r.best_n.to_string(),
        group,
        gens,
        r.exhaustive.to_string(),
        r.groups_examined.to_string(),
        r.sets_examined.to_string(),
    ];
    let header = ["best_n", "group", "generators", "exhaustive", "groups_examined", "sets_examined"];
    Ok((tsv(&header, &[row]), true))
}

fn verify_cover(a: CoverArgs, json: bool) -> CmdResult {
    if a.simplex_l7 {
        let check = verify_simplex_cover(l7_generators(), &l7_translates(), &l7_combinations());
        let ok = check.passed();
        if json {
            return Ok((pretty(&check), ok));
        }
        let row = vec![
            check.combinations_hold.to_string(),
            check.members.to_string(),
            check.sums_in_range.to_string(),
            check.uncovered.map(|c| format!("({},{},{})", c.i, c.j, if c.up { "up" } else { "down" })).unwrap_or_default(),
            if ok { "PASS" } else { "FAIL" }.into(),
        ];
        return Ok((tsv(&["combinations", "members", "sums_in_range", "uncovered", "result"], &[row]), ok));
    }
    let l = parse_lattice(a.lattice.as_deref().unwrap_or_default())?;
    let k = a.k.unwrap_or_default();
    let report = match &a.g {
        Some(g) => covers_order2(&l, &parse_ints(g)?, k)?,
        None => covers(&l, &Shape::new(a.shape.into(), l.dim(), k)?)?,
    };
    let ok = report.covers;
    if json {
        return Ok((pretty(&report), ok));
    }
    let row = vec![
        report.covers.to_string(),
        report.index.to_string(),
        report.shape_size.to_string(),
        to_fixed(&report.efficiency_discrete, 6),
        report.efficiency_real.as_ref().map(|e| to_fixed(e, 6)).unwrap_or_default(),
        report.is_tiling.to_string(),
    ];
    let header = ["covers", "index", "shape_size", "eff_discrete", "eff_real", "is_tiling"];
    Ok((tsv(&header, &[row]), ok))
}

fn region(a: RegionArgs, json: bool) -> CmdResult {
    let l = parse_lattice(&a.lattice)?;
    let dir = match &a.direction {
        Some(s) => parse_rationals(s)?,
        None => default_direction(l.dim()),
    };
    let fr = fundamental_region(&l, &Shape::new(a.shape.into(), l.dim(), a.k)?, &dir)?;
    let bijective = is_bijective_on(&l, &fr.points)?;
    if json {
        return Ok((pretty(&json!({ "points": fr.points, "size": fr.points.len(), "bijective": bijective })), bijective));
    }
    let header: Vec<String> = (1..=l.dim()).map(|i| format!("x{i}")).collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows: Vec<Vec<String>> = fr.points.iter().map(|p| p.iter().map(|x| x.to_string()).collect()).collect();
    Ok((tsv(&header, &rows), bijective))
}

fn certify(a: CertifyArgs, json: bool) -> CmdResult {
    let cert = match a.which {
        CertArg::Thm16 => thm16(),
        CertArg::Thm20 => thm20(),
    };
    let report = certify_local_optimality(&cert);
    let ok = report.passed();
    if json {
        return Ok((pretty(&report), ok));
    }
    let mut rows: Vec<Vec<String>> = report
        .checks
        .iter()
        .map(|c| vec![c.name.clone(), if c.passed { "PASS" } else { "FAIL" }.into(), c.detail.clone()])
        .collect();
    rows.push(vec![
        report.label.clone(),
        if ok { "PASS" } else { "FAIL" }.into(),
        format!("F(v)={}", report.f_value),
    ]);
    Ok((tsv(&["check", "result", "detail"], &rows), ok))
}

fn tables(a: TablesArgs, json: bool) -> CmdResult {
    let columns = match a.columns {
        ColumnsArg::Constructions => Columns::Constructions,
        ColumnsArg::Search => Columns::Search,
        ColumnsArg::Reference => Columns::Reference,
        ColumnsArg::All => Columns::All,
    };
    let opts = TableOptions {
        kmax: a.kmax,
        columns,
        budget: Budget { max_sets: None, max_seconds: a.max_seconds },
        execution: if a.sequential { Execution::Sequential } else { Execution::Parallel },
    };
    let t = table(a.which, &opts)?;
    if json {
        return Ok((pretty(&t), true));
    }
    Ok((t.to_tsv(), true))
}

fn svg(a: SvgArgs, json: bool) -> CmdResult {
    let text = match a.figure.as_str() {
        "1" => render::figure1_svg(a.k)?,
        "7" => render::figure7_svg(a.k)?,
        _ => render::figure4_svg(),
    };
    fs::write(&a.out, &text).map_err(|e| Failure { code: EXIT_FAIL, message: format!("{}: {e}", a.out.display()) })?;
    if json {
        return Ok((pretty(&json!({ "path": a.out, "bytes": text.len() })), true));
    }
    Ok((format!("{}\n", a.out.display()), true))
}
