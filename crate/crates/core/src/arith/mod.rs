//! Exact number and polynomial kernels.

pub mod cyclo;
pub mod int_poly;
pub mod laurent;
pub mod linalg;
pub mod multi_poly;
pub mod numtheory;
pub mod snf;

pub use cyclo::{CycloField, CycloNumber};
pub use int_poly::{cyclotomic_polynomial, IntPolynomial};
pub use laurent::{birational_eq, BiLaurent, BiRational, Exponent};
pub use multi_poly::{Monomial, MultiPolynomial};

pub type Rational = num_rational::BigRational;

/// Exact division `p / q` over the integers; `None` when `q` does not divide `p`.
pub fn poly_exact_div(p: &IntPolynomial, q: &IntPolynomial) -> Option<IntPolynomial> {
    p.exact_div(q)
}

/// `ȳ ↦ ȳ^{-1}` on a quotient.
pub fn substitute_ybar_inverse(f: &BiRational) -> BiRational {
    f.substitute_ybar_inverse()
}
