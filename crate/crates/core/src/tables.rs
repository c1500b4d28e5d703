//! Regeneration of the three-generator size tables from constructions,
//! search, and stored reference values.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::constructions::{build, BuildOptions, Family};
use crate::coverings::{covering_report_table, ReportInput};
use crate::error::{arg, Result};
use crate::exec::Execution;
use crate::groups::{diameter, AbelianGroup, GeneratorSet, GroupElement, Mode};
use crate::search::{best_graph, ffz_bound, upper_bound, Budget, GroupClass, SearchSpec};
use crate::shapes::Shape;

/// Best undirected cyclic graphs on three generators: (k, n, generators).
pub const TABLE1_CYCLIC: &[(u64, u64, &[u64])] = &[
    (0, 1, &[]),
    (1, 7, &[1, 2, 3]),
    (2, 21, &[1, 2, 8]),
    (3, 55, &[1, 5, 21]),
    (4, 117, &[1, 16, 22]),
    (5, 203, &[1, 7, 57]),
    (6, 333, &[1, 9, 73]),
    (7, 515, &[1, 46, 56]),
    (8, 737, &[1, 11, 133]),
    (9, 1027, &[1, 13, 157]),
    (10, 1393, &[1, 92, 106]),
    (11, 1815, &[1, 15, 241]),
    (12, 2329, &[1, 17, 273]),
    (13, 2943, &[1, 154, 172]),
    (14, 3629, &[1, 19, 381]),
];

/// Best directed cyclic graphs on three generators: (k, n, generators,
/// conjectural). Conjectural entries lie beyond the exhaustively searched
/// range.
pub const TABLE2_CYCLIC: &[(u64, u64, &[u64], bool)] = &[
    (0, 1, &[], false),
    (1, 4, &[1, 2, 3], false),
    (2, 9, &[1, 3, 4], false),
    (3, 16, &[1, 4, 5], false),
    (4, 27, &[1, 4, 17], false),
    (5, 40, &[1, 6, 15], false),
    (6, 57, &[1, 13, 33], false),
    (7, 84, &[2, 9, 35], false),
    (8, 111, &[1, 31, 69], false),
    (9, 138, &[1, 11, 78], false),
    (10, 176, &[1, 17, 56], false),
    (11, 217, &[1, 13, 119], false),
    (12, 273, &[1, 14, 153], false),
    (13, 340, &[1, 90, 191], false),
    (14, 395, &[1, 35, 271], false),
    (15, 462, &[1, 29, 97], false),
    (16, 560, &[1, 215, 326], false),
    (17, 648, &[1, 76, 237], false),
    (18, 748, &[1, 41, 147], false),
    (19, 861, &[1, 27, 463], false),
    (20, 979, &[1, 22, 351], false),
    (21, 1140, &[1, 45, 196], false),
    (22, 1305, &[1, 246, 1030], false),
    (23, 1440, &[1, 126, 415], false),
    (24, 1616, &[1, 56, 257], false),
    (25, 1788, &[1, 154, 1452], false),
    (26, 1963, &[1, 90, 780], false),
    (27, 2224, &[1, 425, 704], false),
    (28, 2442, &[1, 964, 1372], false),
    (29, 2693, &[1, 39, 942], false),
    (30, 2920, &[1, 540, 831], false),
    (31, 3220, &[7, 30, 2277], false),
    (32, 3591, &[1, 1519, 2031], true),
    (33, 3850, &[2, 475, 1177], true),
    (34, 4191, &[1, 748, 2652], true),
    (35, 4468, &[1, 353, 2789], true),
];

/// Sizes from the Aguilo-Fiol-Garcia construction, k = 0..=35. Reference
/// values only.
pub const AFG_SIZES: [u64; 36] = [
    1, 4, 7, 16, 19, 31, 50, 56, 86, 128, 134, 182, 243, 252, 333, 432, 441, 549, 676, 688, 844, 1024, 1036,
    1228, 1445, 1460, 1715, 2000, 2015, 2315, 2646, 2664, 3042, 3456, 3474, 3906,
];

/// Directed non-cyclic graphs beating the cyclic optimum: (k, n, invariant
/// factors largest first, generators in the same coordinate order,
/// conjectural).
pub const TABLE3_ABELIAN: &[(u64, u64, &[u64], &[&[u64]], bool)] = &[
    (12, 279, &[93, 3], &[&[1, 0], &[9, 1], &[10, 2]], false),
    (17, 672, &[168, 2, 2], &[&[2, 1, 0], &[9, 0, 0], &[35, 0, 1]], false),
    (18, 752, &[188, 4], &[&[1, 0], &[13, 2], &[14, 1]], false),
    (19, 888, &[222, 2, 2], &[&[1, 0, 0], &[142, 1, 0], &[180, 0, 1]], false),
    (26, 1980, &[330, 6], &[&[1, 0], &[123, 2], &[234, 3]], false),
    (27, 2268, &[252, 3, 3], &[&[2, 0, 0], &[9, 1, 0], &[35, 0, 1]], false),
    (28, 2448, &[816, 3], &[&[1, 0], &[427, 0], &[564, 1]], false),
    (29, 2720, &[680, 2, 2], &[&[1, 0, 0], &[191, 1, 0], &[90, 0, 1]], false),
    (30, 2997, &[333, 3, 3], &[&[1, 0, 0], &[31, 1, 0], &[180, 0, 1]], false),
    (35, 4500, &[300, 15], &[&[1, 0], &[3, 1], &[214, 7]], true),
];

/// Group and generators of a non-cyclic reference row in canonical coordinates
/// (invariant factors ascending).
pub fn table3_witness(factors_desc: &[u64], gens: &[&[u64]]) -> Result<(AbelianGroup, GeneratorSet)> {
    let group = AbelianGroup::new(factors_desc.iter().rev().copied().collect())?;
    let elems = gens.iter().map(|g| GroupElement(g.iter().rev().copied().collect())).collect();
    Ok((group, GeneratorSet::new(elems, None, Mode::Directed)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Columns {
    Constructions,
    Search,
    Reference,
    All,
}

impl Columns {
    fn search(self) -> bool {
        matches!(self, Columns::Search | Columns::All)
    }
    fn reference(self) -> bool {
        matches!(self, Columns::Reference | Columns::All)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub n: u64,
    pub group: AbelianGroup,
    pub generators: GeneratorSet,
    /// Search cells: the run covered the whole range. Reference cells: the
    /// value was not proven optimal.
    pub flag: bool,
    pub eff_discrete: String,
    pub eff_real: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub k: u64,
    pub bounds: BTreeMap<String, u64>,
    pub constructions: BTreeMap<String, u64>,
    pub best: Option<Cell>,
    pub reference: Option<Cell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub which: u8,
    pub bound_columns: Vec<String>,
    pub construction_columns: Vec<String>,
    pub columns: Columns,
    pub rows: Vec<ReportRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableOptions {
    pub kmax: u64,
    pub columns: Columns,
    pub budget: Budget,
    pub execution: Execution,
}

fn table_mode(which: u8) -> Mode {
    if which == 2 || which == 3 {
        Mode::Directed
    } else {
        Mode::Undirected
    }
}

fn cell(which: u8, k: u64, group: AbelianGroup, generators: GeneratorSet, flag: bool) -> Result<Cell> {
    let n = group.order();
    let (eff_discrete, eff_real) = if which == 4 {
        (String::new(), String::new())
    } else {
        let row = &covering_report_table(&[ReportInput { d: 3, k, n, mode: table_mode(which) }])?[0];
        row.rendered()
    };
    Ok(Cell { n, group, generators, flag, eff_discrete, eff_real })
}

fn trivial_cell(which: u8, k: u64, mode: Mode, flag: bool) -> Result<Cell> {
    let g = AbelianGroup::trivial();
    let gens = GeneratorSet::new(vec![g.identity(); 3], None, mode);
    cell(which, k, g, gens, flag)
}

fn reference_cell(which: u8, k: u64) -> Result<Option<Cell>> {
    let mode = table_mode(which);
    let cyclic = |n: u64, gens: &[u64], flag: bool| -> Result<Cell> {
        if n == 1 {
            return trivial_cell(which, k, mode, flag);
        }
        cell(which, k, AbelianGroup::cyclic(n)?, GeneratorSet::cyclic(gens, mode), flag)
    };
    match which {
        1 => TABLE1_CYCLIC.iter().find(|r| r.0 == k).map(|r| cyclic(r.1, r.2, false)).transpose(),
        2 => TABLE2_CYCLIC.iter().find(|r| r.0 == k).map(|r| cyclic(r.1, r.2, r.3)).transpose(),
        3 => TABLE3_ABELIAN
            .iter()
            .find(|r| r.0 == k)
            .map(|r| {
                let (g, s) = table3_witness(r.2, r.3)?;
                cell(which, k, g, s, r.4)
            })
            .transpose(),
        _ => {
            if k < 3 {
                return Ok(None);
            }
            let c = build(Family::Order2Table4, k, &BuildOptions::default())?;
            Ok(Some(cell(which, k, c.group, c.gens, false)?))
        }
    }
}

fn search_cell(which: u8, k: u64, opts: &TableOptions) -> Result<Cell> {
    let mode = table_mode(which);
    let class = if which == 3 { GroupClass::Abelian } else { GroupClass::Cyclic };
    let mut spec = SearchSpec::new(3, k, mode, class);
    spec.order2 = which == 4;
    spec.budget = opts.budget;
    spec.execution = opts.execution;
    let r = best_graph(&spec)?;
    match r.witnesses.into_iter().next() {
        Some(w) => cell(which, k, w.group, w.gens, r.exhaustive),
        None => trivial_cell(which, k, mode, r.exhaustive),
    }
}

fn size_of(family: Family, k: u64) -> Option<u64> {
    if k < family.min_k() {
        return None;
    }
    build(family, k, &BuildOptions::default()).ok().map(|c| c.predicted_size).filter(|&n| n > 0)
}

/// Regenerate table 1, 2, 3 or 4 for k up to `kmax`.
pub fn table(which: u8, opts: &TableOptions) -> Result<Table> {
    if !(1..=4).contains(&which) {
        return arg("table must be 1, 2, 3 or 4");
    }
    let mode = table_mode(which);
    let (bound_columns, construction_columns): (Vec<&str>, Vec<&str>) = match which {
        1 => (vec!["shape"], vec!["toroidal", "twisted"]),
        2 => (vec!["shape", "ffz"], vec!["toroidal", "improved", "afg"]),
        3 => (vec!["shape"], vec![]),
        _ => (vec!["w_k"], vec!["table4"]),
    };
    let k_min = if which == 4 { 3 } else { 0 };
    let mut rows = Vec::new();
    for k in k_min..=opts.kmax {
        let mut bounds = BTreeMap::new();
        let mut constructions = BTreeMap::new();
        let shape = match (which, mode) {
            (4, _) => upper_bound(3, k, mode, true)?,
            (_, Mode::Directed) => Shape::tetrahedron(3, k).size()?,
            _ => Shape::octahedron(3, k).size()?,
        };
        bounds.insert(bound_columns[0].to_string(), shape);
        if which == 2 && k > 7 {
            bounds.insert("ffz".into(), ffz_bound(k)?);
        }
        let toroidal = BuildOptions { d: Some(3), mode, ..BuildOptions::default() };
        match which {
            1 => {
                constructions.insert("toroidal".into(), build(Family::Toroidal, k, &toroidal)?.predicted_size);
                if let Some(n) = size_of(Family::TwistedBcc3d, k) {
                    constructions.insert("twisted".into(), n);
                }
            }
            2 => {
                constructions.insert("toroidal".into(), build(Family::Toroidal, k, &toroidal)?.predicted_size);
                let improved = [Family::Tetracube, Family::Sixteencell].iter().filter_map(|&f| size_of(f, k)).max();
                if let Some(n) = improved {
                    constructions.insert("improved".into(), n);
                }
                if let Some(&n) = AFG_SIZES.get(k as usize) {
                    constructions.insert("afg".into(), n);
                }
            }
            4 => {
                constructions.insert("table4".into(), build(Family::Order2Table4, k, &BuildOptions::default())?.predicted_size);
            }
            _ => {}
        }
        let best = if opts.columns.search() { Some(search_cell(which, k, opts)?) } else { None };
        let reference = if opts.columns.reference() { reference_cell(which, k)? } else { None };
        rows.push(ReportRow { k, bounds, constructions, best, reference });
    }
    Ok(Table {
        which,
        bound_columns: bound_columns.iter().map(|s| s.to_string()).collect(),
        construction_columns: construction_columns.iter().map(|s| s.to_string()).collect(),
        columns: opts.columns,
        rows,
    })
}

fn gens_text(gens: &GeneratorSet) -> String {
    let parts: Vec<String> = gens.unrestricted.iter().map(|g| g.to_string()).collect();
    let mut s = parts.join(";");
    if !gens.unrestricted.iter().any(|g| g.0.len() > 1) {
        s = parts.join(",");
    }
    if let Some(r) = &gens.order2 {
        let _ = write!(s, "|{r}");
    }
    s
}

fn cell_fields(c: Option<&Cell>, flag_name: &str) -> Vec<String> {
    match c {
        None => vec![String::new(); 6],
        Some(c) => {
            let flag = if flag_name == "exhaustive" { c.flag.to_string() } else { if c.flag { "*" } else { "" }.to_string() };
            vec![c.n.to_string(), c.group.to_string(), gens_text(&c.generators), flag, c.eff_discrete.clone(), c.eff_real.clone()]
        }
    }
}

impl Table {
    pub fn header(&self) -> Vec<String> {
        let mut h = vec!["k".to_string()];
        h.extend(self.bound_columns.iter().cloned());
        h.extend(self.construction_columns.iter().cloned());
        if self.columns.search() {
            h.extend(["best_n", "group", "generators", "exhaustive", "eff_discrete", "eff_real"].map(String::from));
        }
        if self.columns.reference() {
            h.extend(["ref_n", "ref_group", "ref_generators", "conjectural", "ref_eff_discrete", "ref_eff_real"].map(String::from));
        }
        h
    }

    pub fn to_tsv(&self) -> String {
        let mut out = self.header().join("\t");
        out.push('\n');
        for r in &self.rows {
            let mut f = vec![r.k.to_string()];
            for c in &self.bound_columns {
                f.push(r.bounds.get(c).map(|n| n.to_string()).unwrap_or_default());
            }
            for c in &self.construction_columns {
                f.push(r.constructions.get(c).map(|n| n.to_string()).unwrap_or_default());
            }
            if self.columns.search() {
                f.extend(cell_fields(r.best.as_ref(), "exhaustive"));
            }
            if self.columns.reference() {
                f.extend(cell_fields(r.reference.as_ref(), "conjectural"));
            }
            out.push_str(&f.join("\t"));
            out.push('\n');
        }
        out
    }
}

/// Diameter of a reference cell, recomputed.
pub fn verify_cell(c: &Cell) -> Result<Option<u64>> {
    Ok(diameter(&c.group, &c.generators)?.diameter)
}
