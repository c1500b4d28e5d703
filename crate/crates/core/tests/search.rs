use std::collections::BTreeMap;

use cayley_lattice::groups::{diameter, moore_bound, Mode};
use cayley_lattice::search::{
    best_graph, best_graph_with_checkpoint, cyclic_gens, upper_bound, verify_witness, Checkpoint, GroupClass,
    SearchSpec,
};

fn best(d: usize, k: u64, mode: Mode, class: GroupClass) -> u64 {
    let r = best_graph(&SearchSpec::new(d, k, mode, class)).unwrap();
    assert!(r.exhaustive);
    for w in &r.witnesses {
        assert_eq!(verify_witness(w).unwrap(), Some(k), "d={d} k={k}");
    }
    r.best_n
}

#[test]
fn undirected_three_generators_small_k() {
    let got: Vec<u64> = (1..=3).map(|k| best(3, k, Mode::Undirected, GroupClass::Abelian)).collect();
    assert_eq!(got, vec![7, 21, 55]);
}

#[test]
fn directed_three_generators_small_k() {
    let got: Vec<u64> = (1..=5).map(|k| best(3, k, Mode::Directed, GroupClass::Abelian)).collect();
    assert_eq!(got, vec![4, 9, 16, 27, 40]);
}

#[test]
fn two_generator_optima_match_closed_forms() {
    for k in 1..=5u64 {
        assert_eq!(best(2, k, Mode::Undirected, GroupClass::Abelian), 2 * k * k + 2 * k + 1);
        assert_eq!(best(2, k, Mode::Directed, GroupClass::Abelian), (k + 2).pow(2) / 3);
    }
}

#[test]
fn sets_containing_one() {
    let mut s = SearchSpec::new(3, 7, Mode::Directed, GroupClass::Cyclic);
    s.require_one = true;
    let r = best_graph(&s).unwrap();
    assert_eq!(r.best_n, 78);
    assert_eq!(cyclic_gens(&r.witnesses[0]), Some(vec![1, 6, 49]));
}

#[test]
fn best_is_monotone_and_bounded() {
    for mode in [Mode::Directed, Mode::Undirected] {
        for d in 1..=3 {
            let mut s = SearchSpec::new(d, 4, mode, GroupClass::Cyclic);
            s.k = 3;
            let mut prev = 0;
            for k in 0..=3 {
                s.k = k;
                let c = best_graph(&s).unwrap().best_n;
                s.group_class = GroupClass::Abelian;
                let a = best_graph(&s).unwrap().best_n;
                s.group_class = GroupClass::Cyclic;
                assert!(c <= a);
                assert!(a >= prev);
                assert!(a <= upper_bound(d, k, mode, false).unwrap());
                assert!(a <= moore_bound(d as u64, k, mode, 0).unwrap());
                prev = a;
            }
        }
    }
}

#[test]
fn scan_all_lists_feasible_orders() {
    let mut s = SearchSpec::new(2, 2, Mode::Undirected, GroupClass::Abelian);
    s.scan_all = true;
    let r = best_graph(&s).unwrap();
    assert_eq!(r.best_n, 13);
    assert_eq!(r.feasible_n.first(), Some(&13));
    assert_eq!(r.feasible_n.last(), Some(&1));
}

#[test]
fn checkpoint_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ck.json");
    let spec = SearchSpec::new(3, 2, Mode::Undirected, GroupClass::Abelian);
    let first = best_graph_with_checkpoint(&spec, &path).unwrap();
    let ck = Checkpoint::load(&path).unwrap();
    assert_eq!(ck.best.as_ref().unwrap().n, 21);
    assert!(ck.completed_n.contains(&25));
    let again = best_graph_with_checkpoint(&spec, &path).unwrap();
    assert_eq!(again.best_n, first.best_n);
    assert_eq!(again.sets_examined, 0);
    let other = SearchSpec::new(3, 3, Mode::Undirected, GroupClass::Abelian);
    assert!(best_graph_with_checkpoint(&other, &path).is_err());
}

#[test]
fn order2_sandwich() {
    let mut plain = BTreeMap::new();
    for k in 0..=3 {
        plain.insert(k, best(2, k, Mode::Undirected, GroupClass::Abelian));
    }
    for k in 1..=3u64 {
        let r = best_graph(&SearchSpec::new(2, k, Mode::Undirected, GroupClass::Abelian).with_order2()).unwrap();
        let w = &r.witnesses[0];
        assert_eq!(diameter(&w.group, &w.gens).unwrap().diameter, Some(k));
        assert!(2 * plain[&(k - 1)] <= r.best_n && r.best_n <= 2 * plain[&k], "k={k}");
    }
}
