//! Symbolic spectra: multisets of integer polynomial factors, and exact power
//! sums of their roots via Newton's identities.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::IntPolynomial;
use super::ArithmeticError;

/// Power sums `p_1, ..., p_{r_max}` of the roots of `p`, counted with
/// multiplicity.
///
/// A leading coefficient of `-1` is normalised away; any other non-unit
/// leading coefficient is rejected because the power sums need not be
/// integers then.
pub fn power_sums(p: &IntPolynomial, r_max: usize) -> Result<Vec<BigInt>, ArithmeticError> {
    let p = p.normalized_sign();
    let n = match p.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(ArithmeticError::ConstantPolynomial),
    };
    if !p.is_monic() {
        return Err(ArithmeticError::NonMonic(p.to_string()));
    }
    // a[i] is the coefficient of x^(n-i)
    let a: Vec<BigInt> = (0..=n).map(|i| p.coeff(n - i)).collect();
    let mut sums: Vec<BigInt> = Vec::with_capacity(r_max + 1);
    sums.push(BigInt::from(n)); // p_0
    for r in 1..=r_max {
        let mut acc = BigInt::zero();
        let upper = if r <= n { r - 1 } else { n };
        for i in 1..=upper {
            acc += &a[i] * &sums[r - i];
        }
        if r <= n {
            acc += BigInt::from(r) * &a[r];
        }
        sums.push(-acc);
    }
    sums.remove(0);
    Ok(sums)
}

/// A characteristic polynomial kept as a list of `(factor, multiplicity)`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FactoredSpectrum {
    #[serde(with = "factor_list")]
    factors: Vec<(IntPolynomial, u64)>,
}

impl FactoredSpectrum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `factor^mult`, merging with an equal factor already present.
    /// Zero multiplicities are dropped.
    pub fn push(&mut self, factor: IntPolynomial, mult: u64) {
        if mult == 0 {
            return;
        }
        if let Some(entry) = self.factors.iter_mut().find(|(f, _)| *f == factor) {
            entry.1 += mult;
        } else {
            self.factors.push((factor, mult));
        }
    }

    /// Removes one copy of `factor`. Returns `false` if it is absent.
    pub fn cancel(&mut self, factor: &IntPolynomial) -> bool {
        let Some(pos) = self.factors.iter().position(|(f, _)| f == factor) else {
            return false;
        };
        self.factors[pos].1 -= 1;
        if self.factors[pos].1 == 0 {
            self.factors.remove(pos);
        }
        true
    }

    pub fn factors(&self) -> &[(IntPolynomial, u64)] {
        &self.factors
    }

    pub fn multiplicity(&self, factor: &IntPolynomial) -> u64 {
        self.factors
            .iter()
            .find(|(f, _)| f == factor)
            .map_or(0, |(_, m)| *m)
    }

    /// Total degree `Σ multiplicity · deg(factor)`.
    pub fn dimension(&self) -> u64 {
        self.factors
            .iter()
            .map(|(f, m)| m * f.degree().unwrap_or(0) as u64)
            .sum()
    }

    pub fn expand(&self) -> IntPolynomial {
        self.factors
            .iter()
            .fold(IntPolynomial::one(), |acc, (f, m)| {
                &acc * &f.pow(u32::try_from(*m).expect("multiplicity fits in u32"))
            })
    }

    /// Sum of the `r`-th powers of all roots, i.e. `Tr(A^r)` for a matrix
    /// with this characteristic polynomial.
    pub fn trace(&self, r: usize) -> Result<BigInt, ArithmeticError> {
        assert!(r >= 1, "trace power must be positive");
        let mut total = BigInt::zero();
        for (f, m) in &self.factors {
            let sums = power_sums(f, r)?;
            total += &sums[r - 1] * BigInt::from(*m);
        }
        Ok(total)
    }

    /// Sorts factors by degree, then coefficients, for stable output.
    pub fn sorted(mut self) -> Self {
        self.factors.sort_by(|(a, _), (b, _)| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| a.coeffs().cmp(b.coeffs()))
        });
        self
    }
}

/// Free-function form of [`FactoredSpectrum::trace`].
pub fn spectrum_trace(s: &FactoredSpectrum, r: usize) -> Result<BigInt, ArithmeticError> {
    s.trace(r)
}

/// Renders as `(c0 c1 ...)^m` terms separated by spaces.
impl fmt::Display for FactoredSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, m)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({p})^{m}")?;
        }
        Ok(())
    }
}

mod factor_list {
    use super::IntPolynomial;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        factor: String,
        multiplicity: u64,
    }

    pub fn serialize<S: Serializer>(v: &[(IntPolynomial, u64)], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|(p, m)| Entry {
                factor: p.to_string(),
                multiplicity: *m,
            })
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<(IntPolynomial, u64)>, D::Error> {
        let entries = Vec::<Entry>::deserialize(d)?;
        entries
            .into_iter()
            .map(|e| {
                e.factor
                    .parse()
                    .map(|p| (p, e.multiplicity))
                    .map_err(serde::de::Error::custom)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    /// Independent oracle: traces of powers of the companion matrix.
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
                for k in 0..n {
                    if power[i][k].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        next[i][j] += &power[i][k] * &c[k][j];
                    }
                }
            }
            power = next;
        }
        out
    }

    #[test]
    fn newton_examples() {
        assert_eq!(
            power_sums(&poly(&[2, 1, 1]), 3).unwrap()[2],
            BigInt::from(5)
        );
        assert_eq!(
            power_sums(&poly(&[-6, 1]), 3).unwrap()[2],
            BigInt::from(216)
        );
        assert_eq!(power_sums(&poly(&[1, 0, 1]), 3).unwrap()[2], BigInt::zero());
    }

    #[test]
    fn sign_normalisation_and_errors() {
        let neg = -poly(&[2, 1, 1]);
        assert_eq!(
            power_sums(&neg, 3).unwrap(),
            power_sums(&poly(&[2, 1, 1]), 3).unwrap()
        );
        assert!(matches!(
            power_sums(&poly(&[1, 2]), 2),
            Err(ArithmeticError::NonMonic(_))
        ));
        assert_eq!(
            power_sums(&poly(&[5]), 2),
            Err(ArithmeticError::ConstantPolynomial)
        );
    }

    #[test]
    fn roots_of_unity_power_sums() {
        for d in 1..=8usize {
            let p = IntPolynomial::binomial(d, -1);
            let sums = power_sums(&p, 30).unwrap();
            for r in 1..=30 {
                let expected = if r % d == 0 { d as i64 } else { 0 };
                assert_eq!(sums[r - 1], BigInt::from(expected), "d={d} r={r}");
            }
        }
    }

    #[test]
    fn newton_agrees_with_companion_matrix() {
        let samples = [
            poly(&[2, 1, 1]),
            poly(&[3, -1, 4, 1]),
            poly(&[0, 0, 7, -2, 1]),
            poly(&[-5, 1]),
            crate::arithmetic::f_poly(6, 2),
            crate::arithmetic::f_poly(5, 3),
        ];
        for p in &samples {
            assert_eq!(power_sums(p, 12).unwrap(), companion_traces(p, 12), "{p}");
        }
    }

    #[test]
    fn known_traces() {
        let mut s6 = FactoredSpectrum::new();
        s6.push(poly(&[-6, 1]), 1);
        s6.push(poly(&[0, 1]), 10);
        s6.push(poly(&[1, 1]), 1);
        s6.push(poly(&[2, 1, 1]), 5);
        s6.push(poly(&[1, 0, 1]), 11);
        assert_eq!(s6.dimension(), 44);
        assert_eq!(spectrum_trace(&s6, 3).unwrap(), BigInt::from(240));

        let mut s7 = FactoredSpectrum::new();
        s7.push(poly(&[-7, 1]), 1);
        s7.push(poly(&[0, 1]), 15);
        s7.push(poly(&[2, 1, 1]), 7);
        s7.push(poly(&[1, 0, 1]), 14);
        assert_eq!(s7.dimension(), 58);
        assert_eq!(spectrum_trace(&s7, 3).unwrap(), BigInt::from(378));
    }

    #[test]
    fn first_trace_is_minus_weighted_subleading() {
        let mut s = FactoredSpectrum::new();
        s.push(poly(&[-7, 1]), 1);
        s.push(poly(&[2, 1, 1]), 7);
        s.push(poly(&[3, -4, 0, 1]), 2);
        let expected: BigInt = s
            .factors()
            .iter()
            .map(|(f, m)| -f.coeff(f.degree().unwrap() - 1) * BigInt::from(*m))
            .sum();
        assert_eq!(s.trace(1).unwrap(), expected);
    }

    #[test]
    fn push_merges_and_cancel_removes() {
        let mut s = FactoredSpectrum::new();
        s.push(poly(&[1, 1]), 2);
        s.push(poly(&[1, 1]), 1);
        s.push(poly(&[0, 1]), 0);
        assert_eq!(s.factors().len(), 1);
        assert_eq!(s.multiplicity(&poly(&[1, 1])), 3);
        assert!(s.cancel(&poly(&[1, 1])));
        assert_eq!(s.multiplicity(&poly(&[1, 1])), 2);
        assert!(!s.cancel(&poly(&[0, 1])));
        assert_eq!(s.expand(), poly(&[1, 2, 1]));
    }

    #[test]
    fn serde_round_trip() {
        let mut s = FactoredSpectrum::new();
        s.push(poly(&[-6, 1]), 1);
        s.push(poly(&[2, 1, 1]), 5);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"factors":[{"factor":"-6 1","multiplicity":1},{"factor":"2 1 1","multiplicity":5}]}"#
        );
        assert_eq!(serde_json::from_str::<FactoredSpectrum>(&json).unwrap(), s);
    }
}
