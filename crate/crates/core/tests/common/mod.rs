#![allow(dead_code)]

use geodex::digraph::Digraph;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A simple digraph with each arc present independently.
pub fn random_digraph(rng: &mut impl Rng, n: usize, density: f64) -> Digraph {
    let adj = (0..n)
        .map(|u| {
            (0..n)
                .filter(|&v| v != u && rng.gen_bool(density))
                .collect()
        })
        .collect();
    Digraph::from_out_adj(adj).unwrap()
}

/// Union of `d` permutations that avoid fixed points and each other.
pub fn random_diregular(rng: &mut impl Rng, n: usize, d: usize) -> Digraph {
    assert!(d < n);
    'retry: loop {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for _ in 0..d {
            let mut perm: Vec<usize> = (0..n).collect();
            let mut attempts = 0;
            loop {
                perm.shuffle(rng);
                if (0..n).all(|u| perm[u] != u && !adj[u].contains(&perm[u])) {
                    break;
                }
                attempts += 1;
                if attempts > 10_000 {
                    continue 'retry;
                }
            }
            for u in 0..n {
                adj[u].push(perm[u]);
            }
        }
        return Digraph::from_out_adj(adj).unwrap();
    }
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Proptest strategy for simple digraphs on `2..=max_n` vertices.
pub fn digraph_strategy(max_n: usize) -> impl Strategy<Value = Digraph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), n).prop_map(
            move |m| {
                let adj = (0..n)
                    .map(|u| (0..n).filter(|&v| v != u && m[u][v]).collect())
                    .collect();
                Digraph::from_out_adj(adj).unwrap()
            },
        )
    })
}

/// Every walk of length `0..=k` from `u`, listed explicitly.
pub fn all_walks(g: &Digraph, k: usize, u: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![u]];
    let mut frontier = vec![vec![u]];
    for _ in 0..k {
        let mut next = Vec::new();
        for w in &frontier {
            for &v in g.out_neighbours(*w.last().unwrap()) {
                let mut ext = w.clone();
                ext.push(v);
                next.push(ext);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Directed cycles of length `len` found by trying every vertex sequence.
pub fn brute_force_cycles(g: &Digraph, len: usize) -> u64 {
    fn rec(g: &Digraph, len: usize, seq: &mut Vec<usize>, count: &mut u64) {
        if seq.len() == len {
            let is_cycle =
                seq.windows(2).all(|w| g.has_arc(w[0], w[1])) && g.has_arc(seq[len - 1], seq[0]);
            // rotation representative: first vertex is the smallest
            if is_cycle && seq[0] == *seq.iter().min().unwrap() {
                *count += 1;
            }
            return;
        }
        for v in 0..g.order() {
            if !seq.contains(&v) {
                seq.push(v);
                rec(g, len, seq, count);
                seq.pop();
            }
        }
    }
    let mut count = 0;
    rec(g, len, &mut Vec::new(), &mut count);
    count
}

/// Isomorphism by trying every bijection.
pub fn brute_force_isomorphic(a: &Digraph, b: &Digraph) -> bool {
    fn rec(a: &Digraph, b: &Digraph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let u = map.len();
        if u == a.order() {
            return true;
        }
        for v in 0..b.order() {
            if used[v] {
                continue;
            }
            let consistent = (0..u).all(|w| {
                a.has_arc(u, w) == b.has_arc(v, map[w]) && a.has_arc(w, u) == b.has_arc(map[w], v)
            });
            if consistent {
                used[v] = true;
                map.push(v);
                if rec(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[v] = false;
            }
        }
        false
    }
    a.order() == b.order()
        && a.arc_count() == b.arc_count()
        && rec(a, b, &mut Vec::new(), &mut vec![false; b.order()])
}
