use geodex::arithmetic::*;
use geodex::automorphism::PermutationVector;
use geodex::feasibility::charpoly_j_minus_p_for_order;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// All partitions of `n` as cycle-length censuses.
fn partitions(n: u64) -> Vec<PermutationVector> {
    fn rec(rest: u64, max: u64, parts: &mut Vec<(u64, u64)>, out: &mut Vec<PermutationVector>) {
        if rest == 0 {
            out.push(PermutationVector::from_pairs(parts));
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            for count in 1..=rest / part {
                parts.push((part, count));
                rec(rest - part * count, part - 1, parts, out);
                parts.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// `det(xI - M)` by dynamic programming over sets of used columns.
fn charpoly_by_determinant(m: &[Vec<i64>]) -> IntPolynomial {
    let n = m.len();
    let entry = |i: usize, j: usize| {
        let c = IntPolynomial::from_i64(&[-m[i][j]]);
        if i == j {
            &c + &IntPolynomial::x()
        } else {
            c
        }
    };
    let mut dp: Vec<IntPolynomial> = vec![IntPolynomial::zero(); 1 << n];
    dp[0] = IntPolynomial::one();
    for mask in 0usize..(1 << n) {
        if dp[mask].is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        for col in 0..n {
            if mask >> col & 1 == 1 {
                continue;
            }
            let inversions = (mask >> col).count_ones();
            let mut term = &dp[mask] * &entry(row, col);
            if inversions % 2 == 1 {
                term = -term;
            }
            let next = mask | 1 << col;
            dp[next] = &dp[next] + &term;
        }
    }
    dp[(1 << n) - 1].clone()
}

#[test]
fn partition_count_sanity() {
    let counts: Vec<usize> = (1..=8).map(|n| partitions(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
}

#[test]
fn j_minus_p_charpoly_matches_determinant_for_every_cycle_type() {
    for n in 1..=8u64 {
        for pv in partitions(n) {
            let perm = pv.realize();
            let size = n as usize;
            let m: Vec<Vec<i64>> = (0..size)
                .map(|i| {
                    (0..size)
                        .map(|j| 1 - i64::from(perm.image(i) == j))
                        .collect()
                })
                .collect();
            let expected = charpoly_by_determinant(&m);
            let spectrum = charpoly_j_minus_p_for_order(&pv).unwrap();
            assert_eq!(spectrum.expand(), expected, "cycle type {pv}");
            assert_eq!(spectrum.dimension(), n);
        }
    }
}

#[test]
fn four_cycle_determinant_by_hand() {
    let pv = PermutationVector::from_pairs(&[(4, 1)]);
    let expected = &(&IntPolynomial::from_i64(&[-3, 1]) * &IntPolynomial::from_i64(&[-1, 1]))
        * &IntPolynomial::from_i64(&[1, 0, 1]);
    assert_eq!(
        charpoly_j_minus_p_for_order(&pv).unwrap().expand(),
        expected
    );
}

fn companion_traces(p: &IntPolynomial, r_max: usize) -> Vec<BigInt> {
    let n = p.degree().unwrap();
    let mut c = vec![vec![BigInt::zero(); n]; n];
    for i in 1..n {
        c[i][i - 1] = BigInt::one();
    }
    for i in 0..n {
        c[i][n - 1] = -p.coeff(i);
    }
    let mut power = c.clone();
    let mut out = Vec::new();
    for _ in 0..r_max {
        out.push((0..n).map(|i| power[i][i].clone()).sum());
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                if power[i][l].is_zero() {
                    continue;
                }
                for j in 0..n {
                    next[i][j] += &power[i][l] * &c[l][j];
                }
            }
        }
        power = next;
    }
    out
}

fn factor_strategy() -> impl Strategy<Value = IntPolynomial> {
    prop_oneof![
        (1u64..30).prop_map(cyclotomic),
        (1u64..12, 1u64..4).prop_map(|(n, k)| f_poly(n, k)),
        (-5i64..6).prop_map(|r| IntPolynomial::linear_root(&BigInt::from(r))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn newton_sums_equal_companion_traces(f in factor_strategy()) {
        let sums = power_sums(&f, 6).unwrap();
        prop_assert_eq!(sums, companion_traces(&f, 6));
    }

    #[test]
    fn factored_traces_are_self_consistent(
        factors in proptest::collection::vec((factor_strategy(), 1u64..4), 1..5),
        r in 1usize..6,
    ) {
        let mut s = FactoredSpectrum::new();
        for (f, m) in &factors {
            s.push(f.clone(), *m);
        }
        let expanded = s.expand();
        let direct = power_sums(&expanded, r).unwrap().pop().unwrap();
        prop_assert_eq!(s.trace(r).unwrap(), direct.clone());
        prop_assert_eq!(spectrum_trace(&s, r).unwrap(), direct);
        let first: BigInt = s
            .factors()
            .iter()
            .map(|(f, m)| -f.coeff(f.degree().unwrap() - 1) * BigInt::from(*m))
            .sum();
        prop_assert_eq!(s.trace(1).unwrap(), first);
    }

    #[test]
    fn moore_residues_agree_with_bignum(d in 1u64..=12, k in 0u64..=200, m in 1u64..=50) {
        let exact = moore_bound(d, k) % BigUint::from(m);
        prop_assert_eq!(BigUint::from(moore_bound_mod(d, k, m)), exact);
    }
}

#[test]
fn cyclotomic_products_give_binomials() {
    for n in 1..=100u64 {
        let product = divisors(n)
            .into_iter()
            .fold(IntPolynomial::one(), |acc, e| &acc * &cyclotomic(e));
        assert_eq!(product, IntPolynomial::binomial(n as usize, -1), "n = {n}");
    }
}

#[test]
fn moore_residue_at_scale_is_fast() {
    let start = std::time::Instant::now();
    let mut r = 0;
    for _ in 0..100 {
        r = moore_bound_mod(12, 10_000, 10_001);
    }
    let per_call = start.elapsed() / 100;
    let exact = moore_bound(12, 10_000) % BigUint::from(10_001u32);
    assert_eq!(BigUint::from(r), exact);
    assert!(per_call.as_micros() < 1000, "took {per_call:?} per call");
}
