//! Primality testing for arbitrary-size integers.
//!
//! Values below 3.3·10^24 get a deterministic Miller–Rabin test with the
//! first thirteen prime bases. Larger values get Baillie–PSW (a strong
//! base-2 Miller–Rabin round plus a strong Lucas test with Selfridge
//! parameters). No Baillie–PSW pseudoprime is known, but none has been
//! ruled out either, so the verdict records which test produced it.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimalityMethod {
    TrialDivision,
    DeterministicMillerRabin,
    BailliePsw,
}

impl fmt::Display for PrimalityMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrimalityMethod::TrialDivision => "trial-division",
            PrimalityMethod::DeterministicMillerRabin => "deterministic-miller-rabin",
            PrimalityMethod::BailliePsw => "baillie-psw",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimalityVerdict {
    pub prime: bool,
    pub method: PrimalityMethod,
}

const SMALL_PRIMES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Bound below which the thirteen-base Miller–Rabin test is exact
/// (3317044064679887385961981).
fn deterministic_bound() -> BigUint {
    BigUint::parse_bytes(b"3317044064679887385961981", 10).expect("valid literal")
}

pub fn is_prime(n: &BigUint) -> PrimalityVerdict {
    if let Some(small) = n.to_u64() {
        if small < 1_000_000 {
            return PrimalityVerdict {
                prime: trial_division(small),
                method: PrimalityMethod::TrialDivision,
            };
        }
    }
    for &p in &SMALL_PRIMES {
        if (n % p).is_zero() {
            let method = if *n < deterministic_bound() {
                PrimalityMethod::DeterministicMillerRabin
            } else {
                PrimalityMethod::BailliePsw
            };
            return PrimalityVerdict {
                prime: false,
                method,
            };
        }
    }
    if *n < deterministic_bound() {
        let prime = SMALL_PRIMES
            .iter()
            .all(|&b| strong_probable_prime(n, &BigUint::from(b)));
        PrimalityVerdict {
            prime,
            method: PrimalityMethod::DeterministicMillerRabin,
        }
    } else {
        let prime =
            strong_probable_prime(n, &BigUint::from(2u32)) && strong_lucas_probable_prime(n);
        PrimalityVerdict {
            prime,
            method: PrimalityMethod::BailliePsw,
        }
    }
}

fn trial_division(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Strong probable-prime test to base `a` for odd `n > a`.
fn strong_probable_prime(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == n_minus_one {
        return true;
    }
    for _ in 1..s {
        x = x.modpow(&BigUint::from(2u32), n);
        if x == n_minus_one {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

/// Jacobi symbol `(a / n)` for odd positive `n`.
fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    let mut a = a
        .mod_floor(&BigInt::from_biguint(Sign::Plus, n.clone()))
        .to_biguint()
        .expect("non-negative after mod_floor");
    let mut n = n.clone();
    let mut result = 1;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().expect("small");
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == BigUint::from(3u32) && (&n % 4u32) == BigUint::from(3u32) {
            result = -result;
        }
        a %= &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

fn is_perfect_square(n: &BigUint) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

/// Strong Lucas probable-prime test with Selfridge's method A parameters.
fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    if is_perfect_square(n) {
        return false;
    }
    // D = 5, -7, 9, -11, ... with (D/n) = -1
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, n) {
            -1 => break,
            0 => {
                // gcd(D, n) > 1; n is composite unless n == |D|
                return d.abs().to_biguint().is_some_and(|a| a == *n);
            }
            _ => {}
        }
        d = if d.is_positive() {
            -(d + 2i32)
        } else {
            -(d - 2i32)
        };
    }
    let n_int = BigInt::from_biguint(Sign::Plus, n.clone());
    let p = BigInt::one();
    let q: BigInt = (BigInt::one() - &d) / 4u32;
    let modn = |x: BigInt| x.mod_floor(&n_int);
    let inv2 = modn((&n_int + 1u32) / 2u32);

    // n + 1 = delta = k * 2^s with k odd
    let delta: BigInt = &n_int + 1u32;
    let s = delta.trailing_zeros().unwrap_or(0);
    let k = &delta >> s;

    // binary ladder for U_k, V_k, Q^k
    let mut u = BigInt::zero();
    let mut v = BigInt::from(2);
    let mut qk = BigInt::one();
    let bits = k.bits();
    for i in (0..bits).rev() {
        // double
        u = modn(&u * &v);
        v = modn(&v * &v - &qk * 2u32);
        qk = modn(&qk * &qk);
        if k.bit(i) {
            // add one: U_{m+1} = (P U + V)/2, V_{m+1} = (D U + P V)/2
            let new_u = modn((&p * &u + &v) * &inv2);
            let new_v = modn((&d * &u + &p * &v) * &inv2);
            u = new_u;
            v = new_v;
            qk = modn(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = modn(&v * &v - &qk * 2u32);
        qk = modn(&qk * &qk);
        if v.is_zero() {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigUint {
        BigUint::parse_bytes(s.as_bytes(), 10).unwrap()
    }

    #[test]
    fn agrees_with_trial_division_on_a_window() {
        for n in 999_000u64..1_010_000 {
            let v = is_prime(&BigUint::from(n));
            assert_eq!(v.prime, trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn lucas_test_alone_matches_trial_division() {
        for n in (3u64..20_000).step_by(2) {
            let b = BigUint::from(n);
            if is_perfect_square(&b) {
                continue;
            }
            // strong Lucas pseudoprimes below 20000: 5459, 5777, 10877, 16109, 18971
            let pseudo = [5459u64, 5777, 10877, 16109, 18971].contains(&n);
            assert_eq!(
                strong_lucas_probable_prime(&b),
                trial_division(n) || pseudo,
                "n = {n}"
            );
        }
    }

    #[test]
    fn strong_pseudoprimes_are_rejected() {
        // strong pseudoprimes to base 2, and to several bases
        for s in [
            "2047",
            "3215031751",
            "2152302898747",
            "3474749660383",
            "341550071728321",
        ] {
            assert!(!is_prime(&big(s)).prime, "{s}");
        }
        // Carmichael numbers
        for s in ["561", "41041", "825265", "321197185"] {
            assert!(!is_prime(&big(s)).prime, "{s}");
        }
    }

    #[test]
    fn mersenne_primes_and_composites() {
        for e in [61u32, 89, 107, 127, 521] {
            let m = (BigUint::one() << e) - 1u32;
            let v = is_prime(&m);
            assert!(v.prime, "2^{e} - 1");
        }
        for e in [67u32, 101, 103, 128] {
            let m = (BigUint::one() << e) - 1u32;
            assert!(!is_prime(&m).prime, "2^{e} - 1");
        }
        let big_semiprime = (BigUint::one() << 89u32) - 1u32;
        let product = &big_semiprime * &((BigUint::one() << 107u32) - 1u32);
        let v = is_prime(&product);
        assert!(!v.prime);
        assert_eq!(v.method, PrimalityMethod::BailliePsw);
    }

    #[test]
    fn method_is_recorded() {
        assert_eq!(
            is_prime(&BigUint::from(41u32)).method,
            PrimalityMethod::TrialDivision
        );
        assert_eq!(
            is_prime(&big("1000000007")).method,
            PrimalityMethod::DeterministicMillerRabin
        );
        assert_eq!(
            is_prime(&big("3317044064679887385962123")).method,
            PrimalityMethod::BailliePsw
        );
    }

    #[test]
    fn jacobi_small_table() {
        // (a/7) for a = 0..7: 0 1 1 -1 1 -1 -1
        let expected = [0, 1, 1, -1, 1, -1, -1];
        for (a, e) in expected.iter().enumerate() {
            assert_eq!(jacobi(&BigInt::from(a), &BigUint::from(7u32)), *e);
        }
        assert_eq!(jacobi(&BigInt::from(-1), &BigUint::from(7u32)), -1);
    }
}
