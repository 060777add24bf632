//! Characteristic polynomials of `J - P` and of the adjacency matrix of a
//! 2-geodetic digraph with excess one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{Derived, FeasibilityError, FeasibilityReport, Reason, ReasonKind, Subject, Witness};
use crate::arithmetic::{
    cyclotomic, divisors, f_poly, moore_bound, FactoredSpectrum, IntPolynomial,
};
use crate::automorphism::{m_stats, PermutationVector};

/// Characteristic polynomial of `J - P` for any permutation matrix `P` with
/// cycle type `pv`, on `n = Σ j·m_j` points:
/// `(x - (n-1)) (x+1)^{-1} Π_j (x^j - (-1)^j)^{m_j}`, split into cyclotomic
/// factors. Fixed points (`j = 1`) are allowed here.
pub fn charpoly_j_minus_p_for_order(
    pv: &PermutationVector,
) -> Result<FactoredSpectrum, FeasibilityError> {
    let n = pv.order();
    if n == 0 {
        return Err(FeasibilityError::NothingToCancel);
    }
    let mut s = FactoredSpectrum::new();
    s.push(IntPolynomial::linear_root(&BigInt::from(n - 1)), 1);
    for (j, m) in pv.iter() {
        if j % 2 == 0 {
            for e in divisors(j) {
                s.push(cyclotomic(e), m);
            }
        } else {
            for e in divisors(2 * j) {
                if j % e != 0 {
                    s.push(cyclotomic(e), m);
                }
            }
        }
    }
    if !s.cancel(&cyclotomic(2)) {
        return Err(FeasibilityError::NothingToCancel);
    }
    Ok(s.sorted())
}

/// [`charpoly_j_minus_p_for_order`] for an outlier permutation of a
/// `(d,k;+1)`-digraph: the order must be `M(d,k)+1` and there must be no
/// fixed points.
pub fn charpoly_j_minus_p(
    d: u64,
    k: u64,
    pv: &PermutationVector,
) -> Result<FactoredSpectrum, FeasibilityError> {
    check_order(d, k, pv)?;
    charpoly_j_minus_p_for_order(pv)
}

fn check_order(d: u64, k: u64, pv: &PermutationVector) -> Result<u64, FeasibilityError> {
    let expected = moore_bound(d, k) + 1u32;
    let expected: u64 = u64::try_from(&expected).map_err(|_| {
        FeasibilityError::InvalidParameters(format!("order M({d},{k})+1 does not fit in 64 bits"))
    })?;
    if pv.order() != expected {
        return Err(FeasibilityError::DimensionMismatch {
            expected,
            found: pv.order(),
        });
    }
    if pv.get(1) != 0 {
        return Err(FeasibilityError::FixedPoints(pv.get(1)));
    }
    Ok(expected)
}

/// Numbers of Type I (`alpha`) and Type II (`beta`) vertices forced by
/// `Tr(A³)`: a Type I vertex lies on `d` directed triangles, a Type II
/// vertex on `d-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCounts {
    pub alpha: BigInt,
    pub beta: BigInt,
    pub trace3: BigInt,
}

impl TypeCounts {
    pub fn is_valid(&self) -> bool {
        !self.alpha.is_negative() && !self.beta.is_negative()
    }
}

/// Solves `d·α + (d-1)·β = Tr(A³)`, `α + β = n` with `n` the dimension of
/// `s`.
pub fn k2_type_counts(d: u64, s: &FactoredSpectrum) -> Result<TypeCounts, FeasibilityError> {
    if d < 2 {
        return Err(FeasibilityError::InvalidParameters(
            "degree must be at least 2".into(),
        ));
    }
    let n = BigInt::from(s.dimension());
    let trace3 = s
        .trace(3)
        .map_err(|e| FeasibilityError::InvalidParameters(e.to_string()))?;
    let alpha = &trace3 - BigInt::from(d - 1) * &n;
    let beta = &n - &alpha;
    Ok(TypeCounts {
        alpha,
        beta,
        trace3,
    })
}

fn half(reasons: &mut Vec<Reason>, value: &BigInt, label: &str, index: u64) -> Option<u64> {
    if value.is_negative() {
        reasons.push(Reason::new(
            ReasonKind::NegativeMultiplicity,
            vec![
                Witness::new("factor_index", index),
                Witness::new(label, value.clone()),
            ],
        ));
        return None;
    }
    if value.is_odd() {
        reasons.push(Reason::new(
            ReasonKind::NonIntegralExponent,
            vec![
                Witness::new("factor_index", index),
                Witness::new(label, value.clone()),
            ],
        ));
        return None;
    }
    u64::try_from(value / 2).ok()
}

/// The spectral test for `(d,2;+1)`-digraphs with outlier cycle type `pv`.
///
/// The adjacency characteristic polynomial must be
/// `(x-d) x^{a₁} (x+1)^{a₂} (x²+x+2)^{(m(2)+m′(1)-1)/2} (x²+1)^{m(4)}
///  Π_{odd j≥3} F_{j,2}^{m″(j)/2} F_{2j,2}^{m′(j)/2} Π_{even j≥6} F_{j,2}^{m(j)/2}`
/// with `a₁ + a₂ = m″(1)` and `a₁ - a₂ = d² - d + 1 - 2m(4)`. The case is
/// infeasible when `m″(1)` is even, when an exponent is fractional or
/// negative, when the resulting spectrum has `Tr(A) ≠ 0` or `Tr(A²) ≠ 0`,
/// or when the Type I/II counts come out negative.
pub fn k2_charpoly(d: u64, pv: &PermutationVector) -> Result<FeasibilityReport, FeasibilityError> {
    let n = check_order(d, 2, pv)?;
    let s1 = m_stats(pv, 1);
    let m2 = m_stats(pv, 2).total;
    let m4 = m_stats(pv, 4).total;
    let mut reasons = Vec::new();
    let mut derived = Derived {
        values: vec![
            Witness::new("order", n),
            Witness::new("m_even_1", s1.even),
            Witness::new("m_odd_1", s1.odd),
            Witness::new("m_4", m4),
        ],
        ..Derived::default()
    };

    if s1.even.is_multiple_of(2) {
        reasons.push(Reason::new(
            ReasonKind::Parity,
            vec![Witness::new("m_even_1", s1.even)],
        ));
    }

    let sum = BigInt::from(s1.even);
    let diff = BigInt::from(d * d - d + 1) - BigInt::from(2 * m4);
    let mut a = None;
    if (&sum + &diff).is_odd() {
        reasons.push(Reason::new(
            ReasonKind::NonIntegralExponent,
            vec![
                Witness::new("a1_plus_a2", sum.clone()),
                Witness::new("a1_minus_a2", diff.clone()),
            ],
        ));
    } else {
        let a1: BigInt = (&sum + &diff) / 2;
        let a2: BigInt = (&sum - &diff) / 2;
        if a1.is_negative() || a2.is_negative() {
            reasons.push(Reason::new(
                ReasonKind::NegativeMultiplicity,
                vec![
                    Witness::new("a1", a1.clone()),
                    Witness::new("a2", a2.clone()),
                ],
            ));
        } else {
            a = Some((a1, a2));
        }
    }

    let mut factors: Vec<(IntPolynomial, u64)> = Vec::new();
    let e0 = BigInt::from(m2) + BigInt::from(s1.odd) - 1;
    if let Some(e) = half(&mut reasons, &e0, "exponent_numerator", 2) {
        factors.push((f_poly(2, 2), e));
    }
    factors.push((IntPolynomial::from_i64(&[1, 0, 1]), m4));
    let max_len = pv.iter().map(|(j, _)| j).max().unwrap_or(0);
    for j in 3..=max_len {
        let st = m_stats(pv, j);
        if j % 2 == 1 {
            if let Some(e) = half(
                &mut reasons,
                &BigInt::from(st.even),
                "exponent_numerator",
                j,
            ) {
                factors.push((f_poly(j, 2), e));
            }
            if let Some(e) = half(
                &mut reasons,
                &BigInt::from(st.odd),
                "exponent_numerator",
                2 * j,
            ) {
                factors.push((f_poly(2 * j, 2), e));
            }
        } else if j >= 6 {
            if let Some(e) = half(
                &mut reasons,
                &BigInt::from(st.total),
                "exponent_numerator",
                j,
            ) {
                factors.push((f_poly(j, 2), e));
            }
        }
    }

    let subject = Subject {
        pv: Some(pv.clone()),
        ..Subject::new(d, 2)
    };
    let Some((a1, a2)) = a.filter(|_| reasons.is_empty()) else {
        return Ok(FeasibilityReport::from_reasons(subject, reasons, derived));
    };

    let mut s = FactoredSpectrum::new();
    s.push(IntPolynomial::linear_root(&BigInt::from(d)), 1);
    s.push(
        IntPolynomial::x(),
        u64::try_from(&a1).expect("bounded by n"),
    );
    s.push(
        IntPolynomial::from_i64(&[1, 1]),
        u64::try_from(&a2).expect("bounded by n"),
    );
    for (f, e) in factors {
        s.push(f, e);
    }
    let trace = |r| s.trace(r).expect("all factors are monic");
    let (t1, t2) = (trace(1), trace(2));
    if t1 != BigInt::from(0) || t2 != BigInt::from(0) {
        reasons.push(Reason::new(
            ReasonKind::TraceMismatch,
            vec![
                Witness::new("trace1", t1.clone()),
                Witness::new("trace2", t2.clone()),
            ],
        ));
    }
    let counts = k2_type_counts(d, &s)?;
    derived
        .values
        .push(Witness::new("trace3", counts.trace3.clone()));
    if !counts.is_valid() {
        reasons.push(Reason::new(
            ReasonKind::NegativeMultiplicity,
            vec![
                Witness::new("alpha", counts.alpha.clone()),
                Witness::new("beta", counts.beta.clone()),
            ],
        ));
    }
    derived.a = Some((a1, a2));
    derived.type_counts = Some((counts.alpha, counts.beta));
    derived.spectrum = Some(s);
    Ok(FeasibilityReport::from_reasons(subject, reasons, derived))
}
