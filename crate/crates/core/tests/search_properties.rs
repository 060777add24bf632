mod common;

use common::*;
use geodex::digraph::{
    common_out_neighbours, excess_profile, is_diregular, is_k_geodetic, Digraph,
};
use geodex::par::Workers;
use geodex::search::checkpoint::CheckpointError;
use geodex::search::*;
use proptest::prelude::*;

fn config(d: u64, k: u64) -> SearchConfig {
    let mut cfg = SearchConfig::new(d, k);
    cfg.workers = Workers::SEQUENTIAL;
    cfg
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn canonical_form_ignores_labels(g in digraph_strategy(10), seed in any::<u64>()) {
        let mut r = rng(seed);
        let form = canonical_form(&g);
        for _ in 0..3 {
            let h = g.relabel(&random_permutation(&mut r, g.order()));
            prop_assert_eq!(canonical_form(&h), form.clone());
        }
        let c = canonical_graph(&g);
        prop_assert_eq!(canonical_form(&c), form);
        prop_assert!(brute_force_isomorphic(&g, &c));
    }

    #[test]
    fn equal_forms_exactly_for_isomorphic_pairs(a in digraph_strategy(6), b in digraph_strategy(6)) {
        prop_assert_eq!(canonical_form(&a) == canonical_form(&b), brute_force_isomorphic(&a, &b));
    }
}

#[test]
fn regular_pairs_are_separated_correctly() {
    let mut r = rng(11);
    for n in 5..=7 {
        let graphs: Vec<Digraph> = (0..40).map(|_| random_diregular(&mut r, n, 2)).collect();
        for a in &graphs {
            for b in &graphs {
                assert_eq!(
                    canonical_form(a) == canonical_form(b),
                    brute_force_isomorphic(a, b)
                );
            }
        }
    }
}

#[test]
fn degree_one_searches_find_only_the_cycle() {
    for k in 2..=6u64 {
        let r = search_excess_one(&config(1, k)).unwrap();
        assert!(r.exhausted);
        assert_eq!(r.found.len(), 1);
        assert!(brute_force_isomorphic(
            &r.found[0],
            &Digraph::directed_cycle(k as usize + 2)
        ));
    }
}

#[test]
fn structural_rules_do_not_change_results() {
    for (d, k) in [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 2), (3, 2)] {
        let mut on = config(d, k);
        on.common_out_rule = true;
        on.transposition_rule = true;
        let mut off = config(d, k);
        off.common_out_rule = false;
        off.transposition_rule = false;
        let a = search_excess_one(&on).unwrap();
        let b = search_excess_one(&off).unwrap();
        assert!(a.exhausted && b.exhausted);
        assert_eq!(a.found, b.found, "({d},{k})");
        assert!(a.nodes <= b.nodes);
    }
}

#[test]
fn no_excess_one_digraphs_of_degree_two_or_three() {
    for d in [2, 3] {
        let r = search_excess_one(&config(d, 2)).unwrap();
        assert!(r.exhausted);
        assert!(r.found.is_empty());
    }
}

#[test]
fn found_digraphs_satisfy_every_postcondition() {
    for k in 2..=6u64 {
        for g in search_excess_one(&config(1, k)).unwrap().found {
            assert!(excess_profile(&g, 1, k as usize).is_excess_one);
            for u in 0..g.order() {
                for v in 0..g.order() {
                    if u != v {
                        assert!(common_out_neighbours(&g, u, v).len() <= 1);
                    }
                }
            }
        }
    }
}

#[test]
fn general_order_counts_match_first_use_enumeration() {
    // counts from an independent first-use search with brute-force isomorphism rejection
    for (n, expected) in [(8, 0), (9, 2), (10, 7)] {
        let r = search_geodetic(&config(2, 2), n).unwrap();
        assert!(r.exhausted);
        assert_eq!(r.found.len(), expected, "order {n}");
        for g in &r.found {
            assert!(is_diregular(g, 2));
            assert!(is_k_geodetic(g, 2).ok);
        }
        for (i, a) in r.found.iter().enumerate() {
            for b in &r.found[i + 1..] {
                assert!(!brute_force_isomorphic(a, b));
            }
        }
    }
    for (d, n, expected) in [(2, 4, 2), (3, 5, 2), (4, 6, 4)] {
        assert_eq!(
            search_geodetic(&config(d, 1), n).unwrap().found.len(),
            expected
        );
    }
}

#[test]
fn worker_count_does_not_change_the_result() {
    for (d, k) in [(2, 2), (3, 2), (1, 5)] {
        let seq = search_excess_one(&config(d, k)).unwrap();
        let mut cfg = config(d, k);
        cfg.workers = Workers(4);
        assert_eq!(search_excess_one(&cfg).unwrap(), seq);
    }
    let seq = search_geodetic(&config(2, 2), 10).unwrap();
    let mut cfg = config(2, 2);
    cfg.workers = Workers(3);
    assert_eq!(search_geodetic(&cfg, 10).unwrap(), seq);
}

#[test]
fn interrupted_search_resumes_to_the_same_result() {
    let full = search_excess_one(&config(2, 2)).unwrap();
    assert!(full.tasks_total >= 2);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("search.ckpt");

    let mut first = config(2, 2);
    first.checkpoint = Some(path.clone());
    first.max_tasks = Some(full.tasks_total as usize / 2);
    let partial = search_excess_one(&first).unwrap();
    assert!(!partial.exhausted);
    assert_eq!(partial.tasks_completed, full.tasks_total / 2);

    let mut second = config(2, 2);
    second.checkpoint = Some(path.clone());
    second.resume = true;
    assert_eq!(search_excess_one(&second).unwrap(), full);
    // resuming a finished checkpoint is idempotent
    assert_eq!(search_excess_one(&second).unwrap(), full);
}

#[test]
fn budget_interruption_resumes_to_the_same_result() {
    let full = search_geodetic(&config(2, 2), 10).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("budget.ckpt");
    let mut cfg = config(2, 2);
    cfg.checkpoint = Some(path);
    cfg.node_budget = Some(full.nodes / 2);
    let partial = search_geodetic(&cfg, 10).unwrap();
    assert!(!partial.exhausted);
    cfg.node_budget = None;
    cfg.resume = true;
    assert_eq!(search_geodetic(&cfg, 10).unwrap(), full);
}

#[test]
fn mismatched_checkpoint_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.ckpt");
    let mut cfg = config(2, 2);
    cfg.checkpoint = Some(path.clone());
    cfg.max_tasks = Some(1);
    search_excess_one(&cfg).unwrap();

    let mut other = config(1, 2);
    other.checkpoint = Some(path);
    other.resume = true;
    assert!(matches!(
        search_excess_one(&other),
        Err(SearchError::CheckpointMismatch(_))
    ));
}

#[test]
fn empty_or_garbled_checkpoint_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.ckpt");
    std::fs::write(&path, b"").unwrap();
    let mut cfg = config(2, 2);
    cfg.checkpoint = Some(path.clone());
    cfg.resume = true;
    assert!(matches!(
        search_excess_one(&cfg),
        Err(SearchError::Checkpoint(CheckpointError::Corrupt(_)))
    ));
    std::fs::write(&path, b"GDXCKPT\0\x02\0\0\0").unwrap();
    assert!(matches!(
        search_excess_one(&cfg),
        Err(SearchError::Checkpoint(CheckpointError::Corrupt(_)))
    ));
    let missing = config(2, 2);
    let mut missing = SearchConfig {
        resume: true,
        ..missing
    };
    missing.checkpoint = Some(dir.path().join("absent.ckpt"));
    assert!(matches!(
        search_excess_one(&missing),
        Err(SearchError::Checkpoint(CheckpointError::Io(_)))
    ));
}
