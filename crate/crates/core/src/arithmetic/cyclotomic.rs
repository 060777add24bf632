//! Cyclotomic polynomials and the composed family `F_{n,k}(x) = Φ_n(1 + x + ... + x^k)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::poly::IntPolynomial;

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient by trial factorisation.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn cache() -> &'static Mutex<HashMap<u64, IntPolynomial>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, IntPolynomial>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial, obtained by dividing `x^n - 1` by
/// `Φ_e` for every proper divisor `e` of `n`. `n` must be positive.
pub fn cyclotomic(n: u64) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(p) = cache().lock().expect("cyclotomic cache poisoned").get(&n) {
        return p.clone();
    }
    let mut p = IntPolynomial::binomial(n as usize, -1);
    for e in divisors(n) {
        if e == n {
            continue;
        }
        p = p
            .div_exact(&cyclotomic(e))
            .expect("cyclotomic factors divide x^n - 1 exactly");
    }
    cache()
        .lock()
        .expect("cyclotomic cache poisoned")
        .insert(n, p.clone());
    p
}

/// `F_{n,k}(x) = Φ_n(1 + x + ... + x^k)`.
pub fn f_poly(n: u64, k: u64) -> IntPolynomial {
    assert!(k >= 1, "horizon must be positive");
    cyclotomic(n).compose(&IntPolynomial::geometric(k as usize))
}
