//! Exact integer arithmetic: Moore bounds, integer polynomials, cyclotomic
//! polynomials, power sums and primality.

mod cyclotomic;
mod moore;
mod poly;
mod primality;
mod spectrum;

pub use cyclotomic::{cyclotomic, divisors, euler_phi, f_poly};
pub use moore::{geometric_mod, moore_bound, moore_bound_mod, mul_mod, pow_mod};
pub use poly::IntPolynomial;
pub use primality::{is_prime, PrimalityMethod, PrimalityVerdict};
pub use spectrum::{power_sums, spectrum_trace, FactoredSpectrum};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("polynomial {0} is not monic")]
    NonMonic(String),
    #[error("power sums need a polynomial of degree at least one")]
    ConstantPolynomial,
    #[error("cannot parse polynomial coefficient {0:?}")]
    ParsePolynomial(String),
}
