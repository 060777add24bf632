//! Closed-form arithmetic conditions on `(d, k)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Derived, FeasibilityError, FeasibilityReport, Reason, ReasonKind, Subject, Witness};
use crate::arithmetic::{is_prime, moore_bound, moore_bound_mod, mul_mod, pow_mod};

fn big(x: &BigUint) -> BigInt {
    BigInt::from(x.clone())
}

/// Divisibility conditions for an arc-transitive digraph of excess `ε`:
/// `(k+1) | d(M+ε)` and `(k+t) | (M+ε)(d^t - d^{t-1})` for `2 ≤ t ≤ k`.
/// Each failing modulus becomes one reason.
pub fn check_at_divisibility(
    d: u64,
    k: u64,
    epsilon: u64,
) -> Result<FeasibilityReport, FeasibilityError> {
    if epsilon == 0 || epsilon >= d {
        return Err(FeasibilityError::EpsilonOutOfRange { epsilon, d });
    }
    if k == 0 {
        return Err(FeasibilityError::InvalidParameters(
            "k must be positive".into(),
        ));
    }
    let order_mod = |m: u64| (moore_bound_mod(d, k, m) + epsilon % m) % m;
    let mut reasons = Vec::new();
    let m = k + 1;
    let rem = mul_mod(d % m, order_mod(m), m);
    if rem != 0 {
        reasons.push(Reason::new(
            ReasonKind::Divisibility,
            vec![
                Witness::new("t", 1),
                Witness::new("modulus", m),
                Witness::new("remainder", rem),
            ],
        ));
    }
    for t in 2..=k {
        let m = k + t;
        let diff = mul_mod(pow_mod(d, t - 1, m), (d + m - 1) % m, m);
        let rem = mul_mod(order_mod(m), diff, m);
        if rem != 0 {
            reasons.push(Reason::new(
                ReasonKind::Divisibility,
                vec![
                    Witness::new("t", t),
                    Witness::new("modulus", m),
                    Witness::new("remainder", rem),
                ],
            ));
        }
    }
    let subject = Subject {
        epsilon: Some(epsilon),
        case: Some("arc-transitive".into()),
        ..Subject::new(d, k)
    };
    Ok(FeasibilityReport::from_reasons(
        subject,
        reasons,
        Derived::default(),
    ))
}

/// Conditions under which every excess-one digraph has a Type II vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Type2Condition {
    /// `d` and `k` are both odd.
    I,
    /// `d ≡ ±1 (mod k+1)`.
    II,
    /// `d² | k+1`.
    III,
    /// An odd prime `p | k+1` has `d ≡ 2 (mod p)`; the smallest such `p`.
    IV { p: u64 },
}

impl fmt::Display for Type2Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type2Condition::I => f.write_str("i"),
            Type2Condition::II => f.write_str("ii"),
            Type2Condition::III => f.write_str("iii"),
            Type2Condition::IV { p } => write!(f, "iv(p={p})"),
        }
    }
}

fn odd_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n.is_multiple_of(2) && n > 0 {
        n /= 2;
    }
    let mut p = 3;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 2;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The triggered subset of conditions i to iv, in that order.
pub fn type2_forced(d: u64, k: u64) -> Vec<Type2Condition> {
    let m = k + 1;
    let mut out = Vec::new();
    if d % 2 == 1 && k % 2 == 1 {
        out.push(Type2Condition::I);
    }
    if d % m == 1 % m || (d + 1).is_multiple_of(m) {
        out.push(Type2Condition::II);
    }
    if d.checked_mul(d).is_some_and(|sq| m.is_multiple_of(sq)) {
        out.push(Type2Condition::III);
    }
    if let Some(&p) = odd_prime_factors(m).iter().find(|&&p| d % p == 2 % p) {
        out.push(Type2Condition::IV { p });
    }
    out
}

/// [`type2_forced`] as a report about the all-Type-I case: infeasible iff
/// some condition triggers.
pub fn type2_report(d: u64, k: u64) -> FeasibilityReport {
    let reasons = type2_forced(d, k)
        .into_iter()
        .map(|c| {
            let (id, p) = match c {
                Type2Condition::I => (1, None),
                Type2Condition::II => (2, None),
                Type2Condition::III => (3, None),
                Type2Condition::IV { p } => (4, Some(p)),
            };
            let mut ws = vec![Witness::new("condition", id)];
            ws.extend(p.map(|p| Witness::new("p", p)));
            Reason::new(ReasonKind::Divisibility, ws)
        })
        .collect();
    let subject = Subject {
        case: Some("all-type-i".into()),
        ..Subject::new(d, k)
    };
    FeasibilityReport::from_reasons(subject, reasons, Derived::default())
}

/// What is known about a Type B `(3,k;+1)`-digraph from `k mod 6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TypeBProfile {
    /// `k ≡ 3, 5 (mod 6)`: no Type B digraph.
    Excluded,
    /// `k ≡ 0, 2 (mod 6)`: two vertices of order 2, all others of order 6.
    TwoAndSixOnly,
    /// `k ≡ 1, 4 (mod 6)`: not constrained further.
    Unresolved,
}

impl TypeBProfile {
    pub fn for_k(k: u64) -> Self {
        match k % 6 {
            3 | 5 => TypeBProfile::Excluded,
            0 | 2 => TypeBProfile::TwoAndSixOnly,
            _ => TypeBProfile::Unresolved,
        }
    }
}

impl fmt::Display for TypeBProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeBProfile::Excluded => "excluded",
            TypeBProfile::TwoAndSixOnly => "orders-2-and-6",
            TypeBProfile::Unresolved => "unresolved",
        })
    }
}

/// Degree three: no `(3,k;+1)`-digraph exists when `k ≡ 3, 5 (mod 6)`,
/// `k+2 ∤ (M(3,k)-k-1)/2` and `M(3,k)+1` is prime. All three quantities are
/// recorded whatever the verdict; the reasons are listed only when all
/// three hold.
pub fn degree3_nonexistence(k: u64) -> FeasibilityReport {
    let residue = k % 6;
    let moore = moore_bound(3, k);
    let half = (&moore - (k + 1)) / 2u32;
    let remainder = &half % (k + 2);
    let order = &moore + 1u32;
    let primality = is_prime(&order);

    let residue_ok = residue == 3 || residue == 5;
    let type_a_ok = !remainder.is_zero();
    let mut derived = Derived {
        values: vec![
            Witness::new("k_mod_6", residue),
            Witness::new("type_a_remainder", big(&remainder)),
            Witness::new("order", big(&order)),
            Witness::new("order_is_prime", u8::from(primality.prime)),
        ],
        ..Derived::default()
    };
    derived.notes = vec![
        format!("primality-method={}", primality.method),
        format!("type-b-profile={}", TypeBProfile::for_k(k)),
    ];
    let reasons = if residue_ok && type_a_ok && primality.prime {
        vec![
            Reason::new(
                ReasonKind::ResidueMod6,
                vec![Witness::new("k_mod_6", residue)],
            ),
            Reason::new(
                ReasonKind::TypeADivisibility,
                vec![
                    Witness::new("modulus", k + 2),
                    Witness::new("remainder", big(&remainder)),
                ],
            ),
            Reason::new(
                ReasonKind::PrimeOrder,
                vec![Witness::new("order", big(&order))],
            ),
        ]
    } else {
        Vec::new()
    };
    FeasibilityReport::from_reasons(Subject::new(3, k), reasons, derived)
}

/// A 2-outlier-regular digraph would need `2k = 1 + d + ... + d^{k-1}`.
pub fn two_outlier_regular_feasible(d: u64, k: u64) -> FeasibilityReport {
    let lhs = BigInt::from(2 * k);
    let rhs = if k == 0 {
        BigInt::zero()
    } else {
        big(&moore_bound(d, k - 1))
    };
    let mut derived = Derived::default();
    let reasons = if lhs == rhs {
        derived.notes.push(
            "the reduced equation holds, so this test alone does not exclude the case".into(),
        );
        Vec::new()
    } else {
        vec![Reason::new(
            ReasonKind::TwoOutlierRegular,
            vec![
                Witness::new("two_k", lhs),
                Witness::new("moore_k_minus_1", rhs),
            ],
        )]
    };
    let subject = Subject {
        case: Some("outlier-regular-2".into()),
        ..Subject::new(d, k)
    };
    FeasibilityReport::from_reasons(subject, reasons, derived)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::Verdict;

    #[test]
    fn at_divisibility_examples() {
        assert!(check_at_divisibility(3, 2, 1).unwrap().is_feasible());
        let r = check_at_divisibility(3, 2, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Infeasible);
        let reason = r.reason(ReasonKind::Divisibility).unwrap();
        assert_eq!(reason.witness("modulus"), Some(&BigInt::from(4)));
        assert_eq!(reason.witness("remainder"), Some(&BigInt::from(2)));
        assert_eq!(
            check_at_divisibility(3, 2, 3),
            Err(FeasibilityError::EpsilonOutOfRange { epsilon: 3, d: 3 })
        );
        assert!(check_at_divisibility(3, 2, 0).is_err());
    }

    #[test]
    fn at_divisibility_with_one_matches_bignum() {
        for d in 2..=7u64 {
            for k in 1..=30u64 {
                let r = check_at_divisibility(d, k, 1).unwrap();
                let order = moore_bound(d, k) + 1u32;
                let mut ok = (BigUint::from(d) * &order % (k + 1)).is_zero();
                for t in 2..=k {
                    let diff = BigUint::from(d).pow(t as u32) - BigUint::from(d).pow(t as u32 - 1);
                    ok &= (&order * diff % (k + t)).is_zero();
                }
                assert_eq!(r.is_feasible(), ok, "d={d} k={k}");
            }
        }
    }

    #[test]
    fn type2_examples() {
        assert!(type2_forced(3, 3).contains(&Type2Condition::I));
        assert!(type2_forced(4, 4).contains(&Type2Condition::II));
        assert!(type2_forced(5, 2).contains(&Type2Condition::IV { p: 3 }));
        assert!(type2_forced(3, 8).contains(&Type2Condition::III));
        assert!(!type2_forced(4, 2).contains(&Type2Condition::I));
        assert_eq!(type2_report(5, 2).verdict, Verdict::Infeasible);
    }

    #[test]
    fn type2_conditions_exclude_all_type_i() {
        // each triggered condition forces (k+1) not to divide d(M+1)
        for d in 3..=20 {
            for k in 2..=60 {
                if !type2_forced(d, k).is_empty() {
                    let value = BigUint::from(d) * (moore_bound(d, k) + 1u32);
                    assert!(!(value % (k + 1)).is_zero(), "d={d} k={k}");
                }
            }
        }
    }

    #[test]
    fn degree3_examples() {
        let r3 = degree3_nonexistence(3);
        assert_eq!(r3.verdict, Verdict::Infeasible);
        assert_eq!(r3.value("order"), Some(&BigInt::from(41)));
        assert_eq!(r3.value("type_a_remainder"), Some(&BigInt::from(18 % 5)));
        let r2 = degree3_nonexistence(2);
        assert!(r2.is_feasible());
        assert_eq!(r2.value("k_mod_6"), Some(&BigInt::from(2)));
        let hits: Vec<u64> = (2..=100)
            .filter(|&k| !degree3_nonexistence(k).is_feasible())
            .collect();
        assert_eq!(hits, vec![3, 15, 63]);
    }

    #[test]
    fn type_b_profile() {
        assert_eq!(TypeBProfile::for_k(9), TypeBProfile::Excluded);
        assert_eq!(TypeBProfile::for_k(12), TypeBProfile::TwoAndSixOnly);
        assert_eq!(TypeBProfile::for_k(4), TypeBProfile::Unresolved);
    }

    #[test]
    fn two_outlier_regular() {
        let r = two_outlier_regular_feasible(2, 2);
        let reason = r.reason(ReasonKind::TwoOutlierRegular).unwrap();
        assert_eq!(reason.witness("two_k"), Some(&BigInt::from(4)));
        assert_eq!(reason.witness("moore_k_minus_1"), Some(&BigInt::from(3)));
        let r = two_outlier_regular_feasible(2, 3);
        assert_eq!(
            r.reason(ReasonKind::TwoOutlierRegular)
                .unwrap()
                .witness("moore_k_minus_1"),
            Some(&BigInt::from(7))
        );
        // 2·2 = 1 + 3
        let r = two_outlier_regular_feasible(3, 2);
        assert!(r.is_feasible());
        assert_eq!(r.derived.notes.len(), 1);
    }
}
