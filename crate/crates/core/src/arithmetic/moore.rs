//! Directed Moore bound `M(d, k) = 1 + d + ... + d^k`, exactly and modulo `m`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Exact directed Moore bound.
pub fn moore_bound(d: u64, k: u64) -> BigUint {
    let d = BigUint::from(d);
    let mut sum = BigUint::zero();
    let mut power = BigUint::one();
    for _ in 0..=k {
        sum += &power;
        power *= &d;
    }
    sum
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut b = base % m;
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    acc
}

/// `(1 + d + ... + d^(len-1)) mod m` together with `d^len mod m`, built by
/// binary splitting over the bits of `len`.
pub fn geometric_mod(d: u64, len: u64, m: u64) -> (u64, u64) {
    assert!(m >= 1, "modulus must be positive");
    let d = d % m;
    let (mut sum, mut power) = (0u64, 1 % m);
    if len == 0 {
        return (sum, power);
    }
    for bit in (0..64 - len.leading_zeros()).rev() {
        // double: S_2a = S_a (1 + d^a), P_2a = P_a^2
        sum = mul_mod(sum, (1 + power) % m, m);
        power = mul_mod(power, power, m);
        if (len >> bit) & 1 == 1 {
            // S_(a+1) = S_a + d^a, P_(a+1) = P_a d
            sum = ((sum as u128 + power as u128) % m as u128) as u64;
            power = mul_mod(power, d, m);
        }
    }
    (sum, power)
}

/// `M(d, k) mod m` in `O(log k)` modular multiplications.
pub fn moore_bound_mod(d: u64, k: u64, m: u64) -> u64 {
    geometric_mod(d, k + 1, m).0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(moore_bound(3, 2), BigUint::from(13u32));
        assert_eq!(moore_bound(7, 2) + 1u32, BigUint::from(58u32));
        assert_eq!(moore_bound(1, 5), BigUint::from(6u32));
        assert_eq!(moore_bound(5, 0), BigUint::one());
        assert_eq!(moore_bound_mod(3, 2, 3), 1);
    }

    #[test]
    fn binary_moore_bound_closed_form() {
        for k in 0..=64u64 {
            let expected = (BigUint::one() << (k + 1)) - 1u32;
            assert_eq!(moore_bound(2, k), expected, "k = {k}");
        }
    }

    #[test]
    fn modular_matches_bignum_oracle() {
        for d in 1..=12u64 {
            for k in 0..=200u64 {
                let exact = moore_bound(d, k);
                for m in 1..=100u64 {
                    let expected = (&exact % m).try_into().unwrap_or(0u64);
                    assert_eq!(moore_bound_mod(d, k, m), expected, "d={d} k={k} m={m}");
                }
            }
        }
    }

    #[test]
    fn large_horizon_is_fast() {
        let exact = moore_bound(12, 10_000) % 10_001u64;
        let start = std::time::Instant::now();
        let r = moore_bound_mod(12, 10_000, 10_001);
        let elapsed = start.elapsed();
        assert_eq!(BigUint::from(r), exact);
        assert!(elapsed.as_micros() < 1_000, "took {elapsed:?}");
    }

    #[test]
    fn pow_mod_basics() {
        assert_eq!(pow_mod(3, 4, 5), 1);
        assert_eq!(pow_mod(7, 0, 1), 0);
        assert_eq!(pow_mod(u64::MAX, 2, u64::MAX - 1), 1);
    }
}
