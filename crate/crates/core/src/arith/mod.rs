//! Exact arithmetic: rationals, Laurent polynomials in `q` and `(q, t)`, and
//! fractions with binomial denominators.

mod fraction;
pub(crate) mod qpoly;
mod qtpoly;

pub(crate) use fraction::leading_sign_negative;
pub use fraction::QTFraction;
pub use qpoly::QPoly;
pub use qtpoly::{QTPoly, QtExp};

/// Arbitrary-precision rational numbers, always stored in lowest terms.
pub type Rat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ArithError {
    #[error("division by the zero polynomial")]
    ZeroDenominator,
    #[error("denominator {0} is not a monomial times a product of binomials q^a t^b - 1")]
    NonBinomialDenominator(QTPoly),
    #[error("leading t-behaviour of the zero fraction is undefined")]
    ZeroLeading,
    #[error("top t-slices do not divide exactly: ({num_slice}) / ({den_slice})")]
    InexactLeading { num_slice: QPoly, den_slice: QPoly },
    #[error("negative power of t prevents setting t = 0")]
    NegativeTPower,
    #[error("specialisation t = 0 is not a Laurent polynomial in q")]
    InexactSpecialization,
}

/// Parses a decimal rational such as `3`, `-2`, or `7/4`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    s.trim().parse::<Rat>().ok()
}
