//! Divisibility scanners, arithmetic non-existence conditions and the
//! spectral case engine for 2-geodetic digraphs with excess one.
//!
//! Every check produces a [`FeasibilityReport`]: a verdict, the violated
//! conditions with the integers that witness them, and any derived
//! quantities (factored spectrum, the exponents `a₁, a₂`, the Type I/II
//! vertex counts `α, β`).

mod cases;
mod conditions;
mod scan;
mod spectral;

pub use cases::{counting_closure, k2_enumerate_cases, k2_table1_divisors};
pub use conditions::{
    check_at_divisibility, degree3_nonexistence, two_outlier_regular_feasible, type2_forced,
    type2_report, Type2Condition, TypeBProfile,
};
pub use scan::{
    is_type1_divisible, is_vt_feasible, scan_type1_divisibility, scan_type1_divisibility_with,
    scan_vt_feasible, scan_vt_feasible_with,
};
pub use spectral::{
    charpoly_j_minus_p, charpoly_j_minus_p_for_order, k2_charpoly, k2_type_counts, TypeCounts,
};

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arithmetic::FactoredSpectrum;
use crate::automorphism::PermutationVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FeasibilityError {
    #[error("excess {epsilon} must lie in 1..{d}")]
    EpsilonOutOfRange { epsilon: u64, d: u64 },
    #[error("permutation vector has order {found}, expected {expected}")]
    DimensionMismatch { expected: u64, found: u64 },
    #[error("an outlier permutation has no fixed points, but m_1 = {0}")]
    FixedPoints(u64),
    #[error("no factor x + 1 available to cancel (empty permutation vector)")]
    NothingToCancel,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Feasible,
    Infeasible,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Feasible => "feasible",
            Verdict::Infeasible => "infeasible",
        })
    }
}

/// The closed vocabulary of obstructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReasonKind {
    /// `m″(1)` must be odd.
    Parity,
    /// A factor exponent or the pair `a₁, a₂` is not an integer.
    NonIntegralExponent,
    /// A multiplicity or vertex count would be negative.
    NegativeMultiplicity,
    /// A required divisibility fails.
    Divisibility,
    /// `Tr(A)` or `Tr(A²)` of the predicted spectrum is not zero.
    TraceMismatch,
    /// The arc count inside the Type I vertices is too small.
    CountingClosure,
    /// `2k = 1 + d + ... + d^{k-1}` fails.
    TwoOutlierRegular,
    /// `k mod 6` lies in `{3, 5}`.
    #[serde(rename = "residue-mod-6")]
    ResidueMod6,
    /// `k + 2` does not divide `(M(3,k) - k - 1)/2`.
    TypeADivisibility,
    /// `M(3,k) + 1` is prime.
    PrimeOrder,
}

impl fmt::Display for ReasonKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReasonKind::Parity => "parity",
            ReasonKind::NonIntegralExponent => "non-integral-exponent",
            ReasonKind::NegativeMultiplicity => "negative-multiplicity",
            ReasonKind::Divisibility => "divisibility",
            ReasonKind::TraceMismatch => "trace-mismatch",
            ReasonKind::CountingClosure => "counting-closure",
            ReasonKind::TwoOutlierRegular => "two-outlier-regular",
            ReasonKind::ResidueMod6 => "residue-mod-6",
            ReasonKind::TypeADivisibility => "type-a-divisibility",
            ReasonKind::PrimeOrder => "prime-order",
        })
    }
}

/// A named integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    #[serde(with = "bigint_string")]
    pub value: BigInt,
}

impl Witness {
    pub fn new(name: &str, value: impl Into<BigInt>) -> Self {
        Witness {
            name: name.to_string(),
            value: value.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reason {
    pub kind: ReasonKind,
    pub witnesses: Vec<Witness>,
}

impl Reason {
    pub fn new(kind: ReasonKind, witnesses: Vec<Witness>) -> Self {
        Reason { kind, witnesses }
    }

    pub fn witness(&self, name: &str) -> Option<&BigInt> {
        self.witnesses
            .iter()
            .find(|w| w.name == name)
            .map(|w| &w.value)
    }
}

/// What a report is about.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Subject {
    pub d: u64,
    pub k: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub epsilon: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pv: Option<PermutationVector>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub case: Option<String>,
}

impl Subject {
    pub fn new(d: u64, k: u64) -> Self {
        Subject {
            d,
            k,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Derived {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub spectrum: Option<FactoredSpectrum>,
    #[serde(skip_serializing_if = "Option::is_none", default, with = "opt_pair")]
    pub a: Option<(BigInt, BigInt)>,
    #[serde(skip_serializing_if = "Option::is_none", default, with = "opt_pair")]
    pub type_counts: Option<(BigInt, BigInt)>,
    /// Set by the k = 2 engine: every spectral check passed, so only the
    /// counting closure can rule the case out.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub spectrally_feasible: Option<bool>,
    /// Further named quantities (residues, remainders, traces, ...).
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub values: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub subject: Subject,
    pub verdict: Verdict,
    pub reasons: Vec<Reason>,
    pub derived: Derived,
}

impl FeasibilityReport {
    /// A report whose verdict follows its reasons: infeasible iff any.
    pub fn from_reasons(subject: Subject, reasons: Vec<Reason>, derived: Derived) -> Self {
        let verdict = if reasons.is_empty() {
            Verdict::Feasible
        } else {
            Verdict::Infeasible
        };
        FeasibilityReport {
            subject,
            verdict,
            reasons,
            derived,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.verdict == Verdict::Feasible
    }

    pub fn has_reason(&self, kind: ReasonKind) -> bool {
        self.reasons.iter().any(|r| r.kind == kind)
    }

    pub fn reason(&self, kind: ReasonKind) -> Option<&Reason> {
        self.reasons.iter().find(|r| r.kind == kind)
    }

    pub fn value(&self, name: &str) -> Option<&BigInt> {
        self.derived
            .values
            .iter()
            .find(|w| w.name == name)
            .map(|w| &w.value)
    }

    /// One JSON object on a single line.
    pub fn to_machine(&self) -> String {
        serde_json::to_string(self).expect("reports serialise")
    }

    /// Line-oriented text: a header line, then one indented line per
    /// reason and derived quantity.
    pub fn to_plain(&self) -> String {
        self.to_string()
    }
}

fn write_witnesses(f: &mut fmt::Formatter<'_>, ws: &[Witness]) -> fmt::Result {
    for w in ws {
        write!(f, " {}={}", w.name, w.value)?;
    }
    Ok(())
}

impl fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.subject;
        write!(f, "d={} k={}", s.d, s.k)?;
        if let Some(e) = s.epsilon {
            write!(f, " epsilon={e}")?;
        }
        if let Some(pv) = &s.pv {
            write!(f, " pv={}", pv.to_string().replace(' ', ","))?;
        }
        if let Some(c) = &s.case {
            write!(f, " case={c}")?;
        }
        writeln!(f, " verdict={}", self.verdict)?;
        for r in &self.reasons {
            write!(f, "  reason {}", r.kind)?;
            write_witnesses(f, &r.witnesses)?;
            writeln!(f)?;
        }
        let d = &self.derived;
        if let Some(sp) = &d.spectrum {
            writeln!(f, "  spectrum {sp}")?;
        }
        if let Some((a1, a2)) = &d.a {
            writeln!(f, "  exponents a1={a1} a2={a2}")?;
        }
        if let Some((alpha, beta)) = &d.type_counts {
            writeln!(f, "  type-counts alpha={alpha} beta={beta}")?;
        }
        if let Some(sf) = d.spectrally_feasible {
            writeln!(f, "  spectrally-feasible {sf}")?;
        }
        if !d.values.is_empty() {
            write!(f, "  values")?;
            write_witnesses(f, &d.values)?;
            writeln!(f)?;
        }
        for n in &d.notes {
            writeln!(f, "  note {n}")?;
        }
        Ok(())
    }
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

mod opt_pair {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<(BigInt, BigInt)>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|(a, b)| [a.to_string(), b.to_string()])
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Option<(BigInt, BigInt)>, D::Error> {
        let raw = Option::<[String; 2]>::deserialize(d)?;
        raw.map(|[a, b]| {
            Ok((
                a.parse().map_err(serde::de::Error::custom)?,
                b.parse().map_err(serde::de::Error::custom)?,
            ))
        })
        .transpose()
    }
}
