//! Sparse Laurent polynomials in `q` and `t` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::qpoly::write_monomial;
use super::{ArithError, QPoly, Rat};

/// Exponent pair of a monomial `q^q t^t`.
///
/// Field order makes the derived ordering lexicographic in `(t, q)`, which is
/// the canonical term order: the top `t`-slice sits at the end of the map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QtExp {
    pub t: i64,
    pub q: i64,
}

impl QtExp {
    pub const ZERO: QtExp = QtExp { t: 0, q: 0 };

    pub fn new(q: i64, t: i64) -> Self {
        Self { t, q }
    }
}

impl Add for QtExp {
    type Output = QtExp;
    fn add(self, rhs: QtExp) -> QtExp {
        QtExp {
            t: self.t + rhs.t,
            q: self.q + rhs.q,
        }
    }
}

impl Sub for QtExp {
    type Output = QtExp;
    fn sub(self, rhs: QtExp) -> QtExp {
        QtExp {
            t: self.t - rhs.t,
            q: self.q - rhs.q,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QTPoly {
    terms: BTreeMap<QtExp, Rat>,
}

impl QTPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rat::one(), 0, 0)
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c * q^eq * t^et`.
    pub fn monomial(c: Rat, eq: i64, et: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(QtExp::new(eq, et), c);
        p
    }

    /// `q^eq * t^et`.
    pub fn qt(eq: i64, et: i64) -> Self {
        Self::monomial(Rat::one(), eq, et)
    }

    /// `1 - q^eq t^et`.
    pub fn one_minus(eq: i64, et: i64) -> Self {
        &Self::one() - &Self::qt(eq, et)
    }

    /// Builds from `(q_exp, t_exp, integer coefficient)` triples.
    pub fn from_int_terms(terms: &[(i64, i64, i64)]) -> Self {
        let mut p = Self::zero();
        for &(eq, et, c) in terms {
            p.add_term(QtExp::new(eq, et), Rat::from_integer(c.into()));
        }
        p
    }

    pub fn from_qpoly(p: &QPoly) -> Self {
        let mut out = Self::zero();
        for (e, c) in p.terms() {
            out.add_term(QtExp::new(e, 0), c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&QtExp::ZERO).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (QtExp, &Rat)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, eq: i64, et: i64) -> Rat {
        self.terms
            .get(&QtExp::new(eq, et))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, e: QtExp, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Leading term under the `(t, q)` lexicographic order.
    pub fn leading_term(&self) -> Option<(QtExp, &Rat)> {
        self.terms.iter().next_back().map(|(&e, c)| (e, c))
    }

    pub fn lowest_term(&self) -> Option<(QtExp, &Rat)> {
        self.terms.iter().next().map(|(&e, c)| (e, c))
    }

    pub fn max_t_degree(&self) -> Option<i64> {
        self.leading_term().map(|(e, _)| e.t)
    }

    pub fn min_t_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.t).min()
    }

    /// Coefficient of `t^d` as a polynomial in `q`.
    pub fn t_slice(&self, d: i64) -> QPoly {
        let lo = QtExp { t: d, q: i64::MIN };
        let hi = QtExp { t: d, q: i64::MAX };
        QPoly::from_terms(self.terms.range(lo..=hi).map(|(e, c)| (e.q, c.clone())))
    }

    /// Top `t`-slice and its degree; `None` for the zero polynomial.
    pub fn top_t_slice(&self) -> Option<(i64, QPoly)> {
        let d = self.max_t_degree()?;
        Some((d, self.t_slice(d)))
    }

    /// The substitution `t = 0`; fails if a negative power of `t` occurs.
    pub fn at_t_zero(&self) -> Result<QPoly, ArithError> {
        if self.min_t_degree().is_some_and(|d| d < 0) {
            return Err(ArithError::NegativeTPower);
        }
        Ok(self.t_slice(0))
    }

    /// The substitution `t = 1`.
    pub fn at_t_one(&self) -> QPoly {
        QPoly::from_terms(self.terms.iter().map(|(e, c)| (e.q, c.clone())))
    }

    /// Multiplies by `q^eq t^et`.
    pub fn shift(&self, eq: i64, et: i64) -> Self {
        let d = QtExp::new(eq, et);
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + d, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division by the binomial `q^a t^b - 1`, with `(b, a)` positive
    /// in the term order. Returns `None` if the division leaves a remainder.
    pub fn div_binomial(&self, a: i64, b: i64) -> Option<Self> {
        let step = QtExp::new(a, b);
        debug_assert!(step > QtExp::ZERO);
        let low = match self.lowest_term() {
            None => return Some(Self::zero()),
            Some((e, _)) => e,
        };
        let (qmin, qmax) = bounds(self.terms.keys().map(|e| e.q));
        let (tmin, tmax) = bounds(self.terms.keys().map(|e| e.t));
        let mut rem = self.clone();
        let mut quot = Self::zero();
        // f = g (m - 1): lowest(f) = -lowest(g), and the Newton polygon of g
        // sits inside the bounding box of f, so the loop runs over a finite set.
        while let Some((e, c)) = rem.leading_term() {
            let qe = e - step;
            if qe < low || qe.q < qmin || qe.q > qmax || qe.t < tmin || qe.t > tmax {
                return None;
            }
            let c = c.clone();
            rem.add_term(e, -c.clone());
            rem.add_term(qe, c.clone());
            quot.add_term(qe, c);
        }
        Some(quot)
    }
}

fn bounds(it: impl Iterator<Item = i64>) -> (i64, i64) {
    it.fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

impl AddAssign<&QTPoly> for QTPoly {
    fn add_assign(&mut self, rhs: &QTPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&QTPoly> for QTPoly {
    fn sub_assign(&mut self, rhs: &QTPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c.clone());
        }
    }
}

impl Add<&QTPoly> for &QTPoly {
    type Output = QTPoly;
    fn add(self, rhs: &QTPoly) -> QTPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&QTPoly> for &QTPoly {
    type Output = QTPoly;
    fn sub(self, rhs: &QTPoly) -> QTPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&QTPoly> for &QTPoly {
    type Output = QTPoly;
    fn mul(self, rhs: &QTPoly) -> QTPoly {
        let mut out = QTPoly::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Neg for &QTPoly {
    type Output = QTPoly;
    fn neg(self) -> QTPoly {
        QTPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl Add for QTPoly {
    type Output = QTPoly;
    fn add(self, rhs: QTPoly) -> QTPoly {
        &self + &rhs
    }
}

impl Sub for QTPoly {
    type Output = QTPoly;
    fn sub(self, rhs: QTPoly) -> QTPoly {
        &self - &rhs
    }
}

impl Mul for QTPoly {
    type Output = QTPoly;
    fn mul(self, rhs: QTPoly) -> QTPoly {
        &self * &rhs
    }
}

impl Neg for QTPoly {
    type Output = QTPoly;
    fn neg(self) -> QTPoly {
        -&self
    }
}

/// Ascending term order, compact: `1-t`, `1-q*t`, `q^2*t^-1`.
impl fmt::Display for QTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // ascending in (t, q) reads naturally for the binomial factors
        for (i, (e, c)) in self.terms.iter().enumerate() {
            write_monomial(f, i == 0, c, &[("q", e.q), ("t", e.t)])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_examples() {
        let a = QTPoly::one_minus(0, 1);
        let b = &QTPoly::one() + &QTPoly::qt(0, 1);
        assert_eq!(&a * &b, QTPoly::one_minus(0, 2));
        assert_eq!(&a + &QTPoly::zero(), a);
        let c = QTPoly::one_minus(1, 1);
        assert!((&(&c * &QTPoly::one()) - &c).is_zero());
    }

    #[test]
    fn slices() {
        // 3 + q t - 2 q^2 t
        let p = QTPoly::from_int_terms(&[(0, 0, 3), (1, 1, 1), (2, 1, -2)]);
        let (d, s) = p.top_t_slice().unwrap();
        assert_eq!(d, 1);
        assert_eq!(s, QPoly::from_coeffs(&[0, 1, -2]));
        assert_eq!(p.at_t_zero().unwrap(), QPoly::from_coeffs(&[3]));
        assert!(QTPoly::qt(0, -1).at_t_zero().is_err());
    }

    #[test]
    fn binomial_division() {
        // (q t - 1)(1 + q t) = q^2 t^2 - 1
        let p = &QTPoly::qt(2, 2) - &QTPoly::one();
        let g = p.div_binomial(1, 1).unwrap();
        assert_eq!(g, &QTPoly::one() + &QTPoly::qt(1, 1));
        assert!(QTPoly::one_minus(0, 1).div_binomial(1, 1).is_none());
        assert_eq!(QTPoly::zero().div_binomial(0, 1), Some(QTPoly::zero()));
    }

    #[test]
    fn display() {
        assert_eq!(QTPoly::one_minus(0, 1).to_string(), "1-t");
        assert_eq!(QTPoly::one_minus(1, 1).to_string(), "1-q*t");
        assert_eq!(
            QTPoly::from_int_terms(&[(2, -1, 3)]).to_string(),
            "3*q^2*t^-1"
        );
    }
}
