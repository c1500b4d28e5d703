use std::process::{Command, Output};

use cayley_lattice::groups::diameter;
use cayley_lattice::{Construction, SearchResult};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley-lattice")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn diameter_of_table2_row7() {
    let o = run(&["diameter", "--group", "84", "--gens", "2,9,35", "--directed"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "7");
}

#[test]
fn diameter_of_noncyclic_group() {
    let o = run(&["diameter", "--group", "93x3", "--gens", "1,0;9,1;10,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "7");
}

#[test]
fn diameter_with_order2_generator() {
    let o = run(&["diameter", "--group", "8", "--gens", "1", "--rho", "4"]);
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn certify_prints_pass() {
    let o = run(&["certify", "--which", "thm20"]);
    assert_eq!(o.status.code(), Some(0));
    let last = stdout(&o).lines().last().unwrap().to_string();
    assert!(last.contains("PASS") && last.contains("F(v)=84"), "{last}");
    let o = run(&["certify", "--which", "thm16"]);
    assert!(stdout(&o).contains("F(v)=4"));
}

#[test]
fn tables_constructions_columns() {
    let o = run(&["tables", "--which", "1", "--kmax", "4", "--columns", "constructions"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    let pairs: Vec<(&str, &str)> = rows[1..].iter().map(|r| (r[2], r[3])).collect();
    assert_eq!(pairs, [("3", "4"), ("9", "16"), ("27", "48"), ("45", "108")]);
}

#[test]
fn construct_json_round_trips_through_bfs() {
    for family in ["theorem15", "twisted2d", "directed2d", "order2_d2"] {
        let o = run(&["--json", "construct", "--family", family, "--k", "6"]);
        assert_eq!(o.status.code(), Some(0), "{family}");
        let c: Construction = serde_json::from_str(&stdout(&o)).unwrap();
        let r = diameter(&c.group, &c.gens).unwrap();
        assert_eq!(r.diameter, Some(c.predicted_diameter), "{family}");
        assert_eq!(c.group.order(), c.predicted_size);
    }
}

#[test]
fn search_json_round_trips_through_bfs() {
    let o = run(&["--json", "search", "--d", "3", "--k", "3", "--directed"]);
    assert_eq!(o.status.code(), Some(0));
    let r: SearchResult = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.best_n, 16);
    assert!(r.exhaustive);
    for w in &r.witnesses {
        assert_eq!(diameter(&w.group, &w.gens).unwrap().diameter, Some(3));
    }
}

#[test]
fn construct_verify_passes() {
    let o = run(&["construct", "--family", "twistedbcc3d", "--k", "4", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with("PASS"));
}

#[test]
fn verify_cover_exit_codes() {
    let ok = run(&["verify-cover", "--lattice", "3,4;-4,3", "--k", "3"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run(&["verify-cover", "--lattice", "10,0;0,10", "--k", "1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("false"));
    assert_eq!(run(&["verify-cover", "--simplex-l7"]).status.code(), Some(0));
}

#[test]
fn fundamental_region_of_l7() {
    let o = run(&["fundamental-region", "--lattice=-2,2,2;3,-3,3;4,3,-1", "--k", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 85);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["nosuch"]).status.code(), Some(2));
    assert_eq!(run(&["diameter", "--group", "84"]).status.code(), Some(2));
    assert_eq!(run(&["diameter", "--group", "abc", "--gens", "1"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--family", "nosuch", "--k", "2"]).status.code(), Some(2));
    assert_eq!(run(&["tables", "--which", "9", "--kmax", "2"]).status.code(), Some(2));
    assert_eq!(run(&["search", "--d", "3", "--k", "2", "--level", "5"]).status.code(), Some(2));
}

#[test]
fn svg_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for p in [&a, &b] {
        let o = run(&["svg", "--figure", "1", "--k", "3", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let c = dir.path().join("c.svg");
    assert_eq!(run(&["svg", "--figure", "4", "--out", c.to_str().unwrap()]).status.code(), Some(0));
    assert!(std::fs::read_to_string(&c).unwrap().contains("<polygon"));
}

#[test]
fn search_checkpoint_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("ck.json");
    let args = ["search", "--d", "3", "--k", "2", "--checkpoint", p.to_str().unwrap()];
    let first = stdout(&run(&args));
    assert!(p.exists());
    let second = stdout(&run(&args));
    assert_eq!(first.lines().nth(1).unwrap().split('\t').next(), Some("21"));
    assert_eq!(second.lines().nth(1).unwrap().split('\t').next(), Some("21"));
}
