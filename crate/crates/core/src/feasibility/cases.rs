//! Case enumeration for `(d,2;+1)`-digraphs.
//!
//! A minimal `(d,2;+1)`-digraph has an outlier permutation that is either
//! outlier-regular, or has exactly two distinct cycle lengths, both even,
//! with the shorter one occurring once: length 4 (Type A) or length 2
//! (Type B). Each candidate cycle type goes through the spectral test; the
//! survivors face a counting argument on the Type I vertices.

use num_bigint::BigInt;
use num_traits::Signed;

use super::{
    k2_charpoly, two_outlier_regular_feasible, Derived, FeasibilityReport, Reason, ReasonKind,
    Subject, Witness,
};
use crate::arithmetic::divisors;
use crate::automorphism::PermutationVector;

/// Divisors greater than one of the order `d² + d + 2`.
pub fn k2_table1_divisors(d: u64) -> Vec<u64> {
    divisors(d * d + d + 2)
        .into_iter()
        .filter(|&x| x > 1)
        .collect()
}

/// Counting argument on a spectrally feasible case with `alpha` Type I and
/// `beta` Type II vertices.
///
/// Type II vertices induce disjoint directed cycles (each has exactly one
/// Type II out-neighbour), so `beta·(d-1)` arcs leave them and as many
/// enter them; the Type I vertices therefore induce `alpha·d - beta·(d-1)`
/// arcs. A Type I vertex reaches every Type II vertex within two steps, and
/// with `s` Type I out-neighbours it reaches at most `2(d-s) + d·s` of them,
/// so it needs `s ≥ s_min`. The case dies when the induced arc count is
/// below `s_min·alpha`.
pub fn counting_closure(d: u64, alpha: &BigInt, beta: &BigInt) -> (Option<Reason>, Vec<Witness>) {
    let d_big = BigInt::from(d);
    let crossing: BigInt = beta * (&d_big - 1);
    let internal: BigInt = alpha * &d_big - &crossing;
    let reach = |s: u64| BigInt::from(2 * (d - s) + d * s);
    let s_min = (0..=d).find(|&s| reach(s) >= *beta);
    let mut values = vec![
        Witness::new("type_ii_crossing_arcs", crossing.clone()),
        Witness::new("type_i_internal_arcs", internal.clone()),
        Witness::new("reach_with_no_internal", reach(0)),
    ];
    let Some(s_min) = s_min else {
        // no out-degree suffices: every Type I vertex fails outright
        let reason = Reason::new(
            ReasonKind::CountingClosure,
            vec![
                Witness::new("max_reach", reach(d)),
                Witness::new("beta", beta.clone()),
            ],
        );
        return (Some(reason), values);
    };
    let required = BigInt::from(s_min) * alpha;
    values.push(Witness::new("min_internal_out_degree", s_min));
    if s_min > 0 {
        values.push(Witness::new("reach_below_threshold", reach(s_min - 1)));
    }
    values.push(Witness::new("required_internal_arcs", required.clone()));
    let reason = (internal < required || internal.is_negative()).then(|| {
        Reason::new(
            ReasonKind::CountingClosure,
            vec![
                Witness::new("type_i_internal_arcs", internal.clone()),
                Witness::new("required_internal_arcs", required.clone()),
                Witness::new("min_internal_out_degree", s_min),
            ],
        )
    });
    (reason, values)
}

fn run_case(d: u64, pv: PermutationVector, case: String, extra: Vec<Reason>) -> FeasibilityReport {
    let spectral = k2_charpoly(d, &pv).expect("enumerated vectors have the right order");
    let mut reasons = extra;
    let spectral_ok = spectral.is_feasible();
    let mut derived: Derived = spectral.derived;
    reasons.extend(spectral.reasons);
    derived.spectrally_feasible = Some(spectral_ok);
    if spectral_ok {
        let (alpha, beta) = derived
            .type_counts
            .clone()
            .expect("feasible spectra carry counts");
        let (reason, values) = counting_closure(d, &alpha, &beta);
        derived.values.extend(values);
        reasons.extend(reason);
    }
    let subject = Subject {
        pv: Some(pv),
        case: Some(case),
        ..Subject::new(d, 2)
    };
    FeasibilityReport::from_reasons(subject, reasons, derived)
}

/// Every candidate outlier cycle type of a minimal `(d,2;+1)`-digraph, with
/// its report:
///
/// * outlier-regular with index `ω` any divisor `> 1` of `n = d² + d + 2`
///   (`ω = 2` also meets the 2-outlier-regular equation, `ω = n` the
///   vertex-transitive divisibility `3 | d·n`);
/// * Type A: one 4-cycle plus cycles of a single even length `L > 4`;
/// * Type B: one 2-cycle plus cycles of a single even length `L > 2`.
///
/// Reports are ordered as listed, then by increasing length.
pub fn k2_enumerate_cases(d: u64) -> Vec<FeasibilityReport> {
    let n = d * d + d + 2;
    let mut out = Vec::new();
    for omega in k2_table1_divisors(d) {
        let mut extra = Vec::new();
        if omega == 2 {
            extra.extend(two_outlier_regular_feasible(d, 2).reasons);
        }
        if omega == n && !(d * n).is_multiple_of(3) {
            extra.push(Reason::new(
                ReasonKind::Divisibility,
                vec![
                    Witness::new("modulus", 3),
                    Witness::new("size", d * n),
                    Witness::new("remainder", (d * n) % 3),
                ],
            ));
        }
        let pv = PermutationVector::from_pairs(&[(omega, n / omega)]);
        out.push(run_case(d, pv, format!("outlier-regular-{omega}"), extra));
    }
    for (short, label) in [(4u64, "type-a"), (2u64, "type-b")] {
        let rest = n - short;
        for len in (short + 2..=rest).step_by(2) {
            if rest.is_multiple_of(len) {
                let pv = PermutationVector::from_pairs(&[(short, 1), (len, rest / len)]);
                out.push(run_case(d, pv, format!("{label}-{len}"), Vec::new()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::Verdict;

    #[test]
    fn table_one() {
        assert_eq!(k2_table1_divisors(4), vec![2, 11, 22]);
        assert_eq!(k2_table1_divisors(5), vec![2, 4, 8, 16, 32]);
        assert_eq!(k2_table1_divisors(6), vec![2, 4, 11, 22, 44]);
        assert_eq!(k2_table1_divisors(7), vec![2, 29, 58]);
    }

    #[test]
    fn closure_numbers() {
        let (reason, values) = counting_closure(6, &BigInt::from(20), &BigInt::from(24));
        let reason = reason.unwrap();
        assert_eq!(
            reason.witness("type_i_internal_arcs"),
            Some(&BigInt::from(0))
        );
        assert_eq!(
            reason.witness("required_internal_arcs"),
            Some(&BigInt::from(60))
        );
        let get = |name: &str| {
            values
                .iter()
                .find(|w| w.name == name)
                .unwrap()
                .value
                .clone()
        };
        assert_eq!(get("type_ii_crossing_arcs"), BigInt::from(120));
        assert_eq!(get("reach_with_no_internal"), BigInt::from(12));

        let (reason, values) = counting_closure(7, &BigInt::from(30), &BigInt::from(28));
        let reason = reason.unwrap();
        assert_eq!(
            reason.witness("type_i_internal_arcs"),
            Some(&BigInt::from(42))
        );
        assert_eq!(
            reason.witness("required_internal_arcs"),
            Some(&BigInt::from(90))
        );
        let get = |name: &str| {
            values
                .iter()
                .find(|w| w.name == name)
                .unwrap()
                .value
                .clone()
        };
        assert_eq!(get("type_ii_crossing_arcs"), BigInt::from(168));
        assert_eq!(get("reach_below_threshold"), BigInt::from(24));
    }

    #[test]
    fn closure_allows_when_counts_permit() {
        // no Type II vertices: nothing to reach
        let (reason, _) = counting_closure(5, &BigInt::from(32), &BigInt::from(0));
        assert!(reason.is_none());
    }

    #[test]
    fn all_cases_die_for_four_to_seven() {
        for d in 4..=7 {
            let reports = k2_enumerate_cases(d);
            assert!(!reports.is_empty());
            for r in &reports {
                assert_eq!(r.verdict, Verdict::Infeasible, "d={d} {}", r.to_plain());
            }
            let survivors: Vec<String> = reports
                .iter()
                .filter(|r| r.derived.spectrally_feasible == Some(true))
                .map(|r| r.subject.pv.as_ref().unwrap().to_string())
                .collect();
            let expected: Vec<&str> = match d {
                6 => vec!["4:11"],
                7 => vec!["2:1 4:14"],
                _ => vec![],
            };
            assert_eq!(survivors, expected, "d = {d}");
        }
    }

    #[test]
    fn four_type_b_dies_on_parity() {
        let r = k2_enumerate_cases(4)
            .into_iter()
            .find(|r| r.subject.case.as_deref() == Some("type-b-4"))
            .unwrap();
        let reason = r.reason(ReasonKind::Parity).unwrap();
        assert_eq!(reason.witness("m_even_1"), Some(&BigInt::from(6)));
    }
}
