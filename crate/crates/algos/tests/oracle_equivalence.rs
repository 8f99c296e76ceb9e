use clique_algos::*;
use clique_core::Graph;
use clique_oracle::generate::graph_from_mask;
use clique_oracle::*;

const CFG: AlgoConfig = AlgoConfig {
    execution: clique_core::Execution::Sequential,
    max_rounds: None,
};

fn check_all(g: &Graph, k: usize, via_ds: bool) {
    let ds = k_dominating_set(g, k, &CFG).unwrap();
    assert_eq!(ds.set.is_some(), has_dominating_set(g, k).unwrap().is_some(), "kds {g:?} k={k}");
    if let Some(s) = &ds.set {
        assert!(s.len() <= k && is_dominating(g, &s.members));
    }
    let vc = k_vertex_cover(g, k, &CFG).unwrap();
    assert_eq!(vc.set.is_some(), has_vertex_cover(g, k).unwrap().is_some(), "kvc {g:?} k={k}");
    if let Some(s) = &vc.set {
        assert!(s.len() <= k && is_cover(g, &s.members));
    }
    assert!(vc.report.rounds <= k + 2);
    let want_is = has_independent_set(g, k).unwrap().is_some();
    let mut is_runs = vec![k_independent_set_direct(g, k, &CFG).unwrap()];
    if via_ds {
        is_runs.push(k_independent_set_via_ds(g, k, &CFG).unwrap());
    }
    for is in is_runs {
        assert_eq!(is.set.is_some(), want_is, "kis {g:?} k={k}");
        if let Some(s) = &is.set {
            assert!(s.len() == k && is_independent(g, &s.members));
        }
    }
}

#[test]
fn exhaustive_up_to_five_nodes() {
    for n in 2..=5 {
        for g in all_graphs(n).unwrap() {
            for k in 1..=3.min(n) {
                check_all(&g, k, true);
            }
        }
    }
}

#[test]
fn sampled_six_and_seven_nodes() {
    let mut rng = SplitMix64::new(20);
    for n in [6usize, 7] {
        let pairs = n * (n - 1) / 2;
        for _ in 0..500 {
            let g = graph_from_mask(n, rng.next_u64() & ((1 << pairs) - 1));
            for k in 1..=3 {
                check_all(&g, k, false);
            }
        }
        for _ in 0..60 {
            let g = graph_from_mask(n, rng.next_u64() & ((1 << pairs) - 1));
            for k in 1..=3 {
                check_all(&g, k, true);
            }
        }
    }
}

#[test]
fn reduction_soundness_up_to_six_nodes() {
    for n in 2..=6 {
        for g in all_graphs(n).unwrap() {
            for k in [2, 3] {
                let r = build_is_to_ds_reduction(&g, k);
                assert_eq!(r.derived.n(), k * n + k * (k - 1) / 2 * n + 2 * k);
                assert_eq!(
                    has_independent_set(&g, k).unwrap().is_some(),
                    has_dominating_set(&r.derived, k).unwrap().is_some(),
                    "{g:?} k={k}"
                );
            }
        }
    }
}

#[test]
fn reduction_examples() {
    let edge = Graph::build(2, &[(1, 2)]).unwrap();
    let r = build_is_to_ds_reduction(&edge, 2);
    assert!(has_dominating_set(&r.derived, 2).unwrap().is_none());
    let r = build_is_to_ds_reduction(&Graph::empty(2), 2);
    let d = [r.layout.id(Role::Clique { i: 1, v: 1 }), r.layout.id(Role::Clique { i: 2, v: 2 })];
    assert!(is_dominating(&r.derived, &d));
}

#[test]
fn colouring_reduction_up_to_five_nodes() {
    for n in 1..=5 {
        for g in all_graphs(n).unwrap() {
            for k in 1..=3 {
                let h = build_col_to_is_reduction(&g, k);
                assert_eq!(
                    chromatic_number_at_most(&g, k).unwrap(),
                    max_independent_set_size(&h).unwrap() == n,
                    "{g:?} k={k}"
                );
            }
        }
    }
    let k3 = Graph::build(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
    assert_eq!(max_independent_set_size(&build_col_to_is_reduction(&k3, 3)).unwrap(), 3);
    assert!(max_independent_set_size(&build_col_to_is_reduction(&k3, 2)).unwrap() < 3);
}
