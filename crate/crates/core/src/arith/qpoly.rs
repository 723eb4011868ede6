//! Sparse Laurent polynomials in a single variable `q` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::Rat;

/// A Laurent polynomial `sum_e c_e q^e`.
///
/// Only nonzero coefficients are stored, so two equal polynomials have
/// identical term maps and structural equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    terms: BTreeMap<i64, Rat>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: Rat, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `q^e` with unit coefficient.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(Rat::one(), e)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    /// Builds a polynomial from integer coefficients indexed from `q^0` upward.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(e, &c)| (e as i64, Rat::from_integer(c.into()))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rat)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, e: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k + e, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// The substitution `q -> q^{-1}`.
    pub fn substitute_q_inverse(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, c)| (-k, c.clone())).collect(),
        }
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |acc, c| acc + c)
    }

    /// Value at `q = 0`; `None` when a negative power is present.
    pub fn eval_zero(&self) -> Option<Rat> {
        if self.min_degree().is_some_and(|e| e < 0) {
            return None;
        }
        Some(self.coeff(0))
    }

    /// True when every coefficient is a nonnegative integer and no negative
    /// power of `q` occurs.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.terms
            .iter()
            .all(|(&e, c)| e >= 0 && c.is_integer() && !c.is_negative())
    }

    /// Exact Laurent division. Returns `None` when `divisor` is zero or does
    /// not divide `self`.
    pub fn div_exact(&self, divisor: &QPoly) -> Option<QPoly> {
        let (&dlead_e, dlead_c) = divisor.terms.iter().next_back()?;
        let dlow = divisor.min_degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let low = self.min_degree().unwrap();
        let mut rem = self.clone();
        let mut quot = QPoly::zero();
        // Quotient degrees lie in [low - dlow, lead - dlead]; anything below
        // that window means the division cannot be exact.
        let floor = low - dlow;
        while let Some((&e, c)) = rem.terms.iter().next_back() {
            let qe = e - dlead_e;
            if qe < floor {
                return None;
            }
            let qc = c / dlead_c;
            let step = divisor.shift(qe).scale(&qc);
            quot.add_term(qe, qc);
            rem -= &step;
        }
        Some(quot)
    }

    pub fn pow(&self, n: u32) -> QPoly {
        let mut acc = QPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: &QPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c.clone());
        }
    }
}

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: &QPoly) -> QPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

/// Writes `c*v^e` style monomials; shared with the bivariate display.
pub(crate) fn write_monomial(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Rat,
    vars: &[(&str, i64)],
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if neg {
        f.write_str("-")?;
    } else if !first {
        f.write_str("+")?;
    }
    let vars: Vec<_> = vars.iter().filter(|(_, e)| *e != 0).collect();
    let mut wrote = false;
    if !abs.is_one() || vars.is_empty() {
        write!(f, "{abs}")?;
        wrote = true;
    }
    for (name, e) in vars {
        if wrote {
            f.write_str("*")?;
        }
        if *e == 1 {
            f.write_str(name)?;
        } else {
            write!(f, "{name}^{e}")?;
        }
        wrote = true;
    }
    Ok(())
}

/// Compact form, ascending powers: `1+q+2*q^2`, `q^-1`, `0`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            write_monomial(f, i == 0, c, &[("q", e)])?;
        }
        Ok(())
    }
}
