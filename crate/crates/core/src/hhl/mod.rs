//! Nonsymmetric Macdonald polynomials from the Haglund–Haiman–Loehr filling
//! formula, their `t = 0` and `t -> infinity` specialisations, and the
//! coefficient families that describe the `t -> infinity` limit.

mod coeff;
mod enumerate;
mod filling;
mod polynomial;

pub use coeff::{
    bottom_strings, check_recurrence, check_scroll, check_sl3_c31, check_sl3_recurrences,
    check_specialisation_zero, check_transposition, coefficient_c, raise_nonzero, scrolled_bottom,
    CoeffTable, IdentityCheck,
};
pub use enumerate::{arrange_by_rule, AppropriateFillings, NonAttacking};
pub use filling::{Filling, FillingStats, Shape};
pub use polynomial::{
    e_limit_combinatorial, hhl_polynomial, knop_sahi_psi, limit_t_infinity_symbolic, specialize_t0,
};

use crate::arith::ArithError;
use crate::diagram::Composition;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HhlError {
    #[error("({0}) is not pi^r of an antidominant composition with r < N")]
    NotScrolledAntidominant(Composition),
    #[error("({0}) is not antidominant")]
    NotAntidominant(Composition),
    #[error("term of filling {filling} of ({mu}) has positive t-degree {degree}")]
    PositiveTDegree {
        mu: Composition,
        filling: String,
        degree: i64,
    },
    #[error("filling {filling} of ({mu}) has negative coinv")]
    NegativeCoinv { mu: Composition, filling: String },
    #[error("bottom string {a:?} must hold {expected_len} distinct values in 1..={n}")]
    BadBottomString {
        a: Vec<u8>,
        expected_len: usize,
        n: usize,
    },
    #[error("set of size {set} does not fit under a reference row of length {reference}")]
    SetTooLarge { set: usize, reference: usize },
    #[error("exponent vector has length {got}, expected {expected}")]
    ExponentLength { got: usize, expected: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
}
