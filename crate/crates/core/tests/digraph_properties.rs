mod common;

use common::*;
use geodex::digraph::*;
use geodex::par::Workers;
use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;

fn naive_counts(g: &Digraph, k: usize) -> Vec<Vec<u64>> {
    (0..g.order())
        .map(|u| {
            let mut row = vec![0u64; g.order()];
            for w in all_walks(g, k, u) {
                row[*w.last().unwrap()] += 1;
            }
            row
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn walk_counts_match_enumeration(g in digraph_strategy(6)) {
        let table = walk_counts(&g, 3);
        let naive = naive_counts(&g, 3);
        for u in 0..g.order() {
            for v in 0..g.order() {
                prop_assert_eq!(table.get(u, v), &BigUint::from(naive[u][v]));
            }
        }
        prop_assert_eq!(walk_counts_with(&g, 3, Workers::SEQUENTIAL), table);
    }

    #[test]
    fn geodecity_witness_is_genuine(g in digraph_strategy(7), k in 1usize..4) {
        let naive = naive_counts(&g, k);
        let repeated = naive.iter().flatten().any(|&c| c > 1);
        let report = is_k_geodetic(&g, k);
        prop_assert_eq!(report.ok, !repeated);
        if let Some(w) = report.witness {
            prop_assert!(naive[w.from][w.to] > 1);
            prop_assert_ne!(&w.first, &w.second);
            for walk in [&w.first, &w.second] {
                prop_assert_eq!(walk[0], w.from);
                prop_assert_eq!(*walk.last().unwrap(), w.to);
                prop_assert!(walk.len() <= k + 1);
                prop_assert!(walk.windows(2).all(|p| g.has_arc(p[0], p[1])));
            }
        }
    }

    #[test]
    fn store_then_load_is_identity(seed in any::<u64>()) {
        let g = random_diregular(&mut rng(seed), 8, 2);
        prop_assert!(is_diregular(&g, 2));
        let text = g.store();
        prop_assert_eq!(load_digraph(&text).unwrap(), g.clone());
        prop_assert_eq!(load_digraph(&text).unwrap().store(), text);
    }

    #[test]
    fn cycle_counts_match_brute_force(g in digraph_strategy(6), len in 2usize..6) {
        prop_assert_eq!(count_cycles_of_length(&g, len), brute_force_cycles(&g, len));
    }

    #[test]
    fn short_closed_walks_vanish_on_geodetic_digraphs(g in digraph_strategy(7), k in 1usize..4) {
        if is_k_geodetic(&g, k).ok {
            for r in 1..=k {
                prop_assert!(closed_walk_trace(&g, r).is_zero());
            }
        }
    }

    #[test]
    fn converse_is_an_involution(g in digraph_strategy(7)) {
        prop_assert_eq!(converse(&converse(&g)), g.clone());
        prop_assert_eq!(converse(&g).arc_count(), g.arc_count());
    }
}

#[test]
fn cycles_are_excess_one_with_all_identities() {
    for k in 2..=6 {
        let g = Digraph::directed_cycle(k + 2);
        let p = excess_profile(&g, 1, k);
        assert!(p.is_excess_one);
        let o = outlier_map(&g, k).unwrap();
        assert!(verify_path_identity(&g, k, &o));
        for r in 1..=k {
            assert!(closed_walk_trace(&g, r).is_zero());
        }
        assert_eq!(closed_walk_trace(&g, k + 2), BigUint::from(k as u64 + 2));
    }
}

#[test]
fn outlier_of_converse_is_inverse_outlier() {
    for k in 2..=6 {
        let g = Digraph::directed_cycle(k + 2);
        let o = outlier_map(&g, k).unwrap();
        let oc = outlier_map(&converse(&g), k).unwrap();
        assert_eq!(oc, o.inverse());
        for u in 0..g.order() {
            assert_eq!(oc.outlier(u), o.inverse_outlier(u));
        }
    }
}

#[test]
fn type_two_vertices_have_the_inverse_outlier_as_type_two_out_neighbour() {
    for k in 2..=6 {
        let g = Digraph::directed_cycle(k + 2);
        let o = outlier_map(&g, k).unwrap();
        for u in 0..g.order() {
            if vertex_type(&g, &o, u) == VertexType::TypeII {
                let type_two: Vec<usize> = g
                    .out_neighbours(u)
                    .iter()
                    .copied()
                    .filter(|&v| vertex_type(&g, &o, v) == VertexType::TypeII)
                    .collect();
                assert_eq!(type_two, vec![o.inverse_outlier(u)]);
            }
        }
    }
}

#[test]
fn perturbed_cycle_loses_the_identity() {
    let g: Digraph = "4\n0: 1\n1: 2\n2: 0\n3: 0".parse().unwrap();
    match outlier_map(&g, 2) {
        Err(_) => {}
        Ok(o) => assert!(!verify_path_identity(&g, 2, &o)),
    }
}

#[test]
fn diregular_non_geodetic_order_eight_is_rejected() {
    // 0 -> 1 -> 3 and 0 -> 2 -> 3 give two 2-walks from 0 to 3
    let g = Digraph::from_out_adj(vec![
        vec![1, 2],
        vec![3, 4],
        vec![3, 5],
        vec![6, 7],
        vec![6, 7],
        vec![0, 1],
        vec![0, 2],
        vec![4, 5],
    ])
    .unwrap();
    assert!(is_diregular(&g, 2));
    let p = excess_profile(&g, 2, 2);
    assert_eq!(p.excess, num_bigint::BigInt::from(1));
    assert!(!p.geodetic);
    assert!(!p.is_excess_one);
}

#[test]
fn random_diregular_digraphs_rarely_pass_but_never_lie() {
    let mut r = rng(7);
    for _ in 0..200 {
        let g = random_diregular(&mut r, 8, 2);
        let p = excess_profile(&g, 2, 2);
        assert!(!p.is_excess_one, "no (2,2;+1)-digraph exists:\n{g}");
        assert_eq!(p.geodetic, is_k_geodetic(&g, 2).ok);
    }
}
