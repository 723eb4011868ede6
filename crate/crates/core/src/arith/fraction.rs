//! Fractions whose denominators factor into binomials `q^a t^b - 1`.
//!
//! Every coefficient of an HHL expansion has this shape, so no multivariate
//! gcd is ever needed: denominators are kept factored, sums use the lcm of
//! the factor multisets, and equality is decided by cross-multiplication.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use super::{ArithError, QPoly, QTPoly, QtExp, Rat};

/// `num / prod (q^a t^b - 1)^m` over the factor multiset `den`.
///
/// Each key `(a, b)` is stored as a [`QtExp`] strictly greater than zero in
/// the `(t, q)` order, so every factor has a positive leading coefficient and
/// no monomial content; the product is therefore normalised by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTFraction {
    num: QTPoly,
    den: BTreeMap<QtExp, u32>,
}

impl Default for QTFraction {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<QTPoly> for QTFraction {
    fn from(num: QTPoly) -> Self {
        Self {
            num,
            den: BTreeMap::new(),
        }
    }
}

impl From<&QPoly> for QTFraction {
    fn from(p: &QPoly) -> Self {
        QTPoly::from_qpoly(p).into()
    }
}

impl QTFraction {
    pub fn zero() -> Self {
        QTPoly::zero().into()
    }

    pub fn one() -> Self {
        QTPoly::one().into()
    }

    /// `num / den` for an arbitrary nonzero `den`; the denominator is factored
    /// into a monomial and binomials, and rejected if that is impossible.
    pub fn new(num: QTPoly, den: QTPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        let (low, low_c) = den.lowest_term().map(|(e, c)| (e, c.clone())).unwrap();
        let mut rest = den.shift(-low.q, -low.t).scale(&low_c.recip());
        let mut factors = BTreeMap::new();
        // rest = prod (m_i - 1) * (+-1) with monomials m_i > 0; its second-lowest
        // term always sits at the smallest m_i, which cannot cancel.
        while rest.len() > 1 {
            let step = rest.terms().nth(1).map(|(e, _)| e).unwrap();
            match rest.div_binomial(step.q, step.t) {
                Some(g) => {
                    rest = g;
                    *factors.entry(step).or_insert(0) += 1;
                }
                None => return Err(ArithError::NonBinomialDenominator(den)),
            }
        }
        let (_, c) = rest.lowest_term().unwrap();
        let num = num.shift(-low.q, -low.t).scale(&(low_c * c).recip());
        Ok(Self::reduced(num, factors))
    }

    /// `num / prod (q^a t^b - 1)` for the listed `(a, b)` pairs.
    pub fn with_binomials(num: QTPoly, binomials: &[(i64, i64)]) -> Result<Self, ArithError> {
        let mut den = BTreeMap::new();
        let mut num = num;
        for &(a, b) in binomials {
            let e = QtExp::new(a, b);
            if e == QtExp::ZERO {
                return Err(ArithError::ZeroDenominator);
            }
            if e > QtExp::ZERO {
                *den.entry(e).or_insert(0) += 1;
            } else {
                // q^a t^b - 1 = -(q^a t^b) (q^-a t^-b - 1)
                num = -&num.shift(-a, -b);
                *den.entry(QtExp::new(-a, -b)).or_insert(0) += 1;
            }
        }
        Ok(Self::reduced(num, den))
    }

    /// The HHL cell weight `(1 - t) / (1 - q^{leg+1} t^{arm+1})`.
    pub fn hhl_factor(leg: u32, arm: u32) -> Self {
        let num = &QTPoly::qt(0, 1) - &QTPoly::one();
        let mut den = BTreeMap::new();
        den.insert(QtExp::new(leg as i64 + 1, arm as i64 + 1), 1);
        Self::reduced(num, den)
    }

    /// Cancels every denominator factor that divides the numerator.
    fn reduced(mut num: QTPoly, mut den: BTreeMap<QtExp, u32>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let keys: Vec<QtExp> = den.keys().copied().collect();
        for e in keys {
            while den.get(&e).copied().unwrap_or(0) > 0 {
                match num.div_binomial(e.q, e.t) {
                    Some(g) => {
                        num = g;
                        let m = den.get_mut(&e).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            den.remove(&e);
                        }
                    }
                    None => break,
                }
            }
        }
        Self { num, den }
    }

    pub fn numerator(&self) -> &QTPoly {
        &self.num
    }

    /// Denominator factors `(a, b, multiplicity)` of `prod (q^a t^b - 1)^m`.
    pub fn denominator_factors(&self) -> impl Iterator<Item = (i64, i64, u32)> + '_ {
        self.den.iter().map(|(e, &m)| (e.q, e.t, m))
    }

    pub fn den_poly(&self) -> QTPoly {
        den_product(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is 1, i.e. the value is a Laurent polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&QTPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lcm = lcm(&self.den, &other.den);
        let a = &self.num * &den_product(&quotient(&lcm, &self.den));
        let b = &other.num * &den_product(&quotient(&lcm, &other.den));
        Self::reduced(&a + &b, lcm)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (&e, &m) in &other.den {
            *den.entry(e).or_insert(0) += m;
        }
        Self::reduced(&self.num * &other.num, den)
    }

    /// Multiplies by `q^eq t^et`.
    pub fn shift(&self, eq: i64, et: i64) -> Self {
        Self {
            num: self.num.shift(eq, et),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Exact equality by cross-multiplication over the common denominator.
    pub fn frac_equal(&self, other: &Self) -> bool {
        let lcm = lcm(&self.den, &other.den);
        let a = &self.num * &den_product(&quotient(&lcm, &self.den));
        let b = &other.num * &den_product(&quotient(&lcm, &other.den));
        a == b
    }

    /// Behaviour as `t -> infinity`: returns `(deg, lead)` with
    /// `self ~ lead(q) * t^deg`.
    pub fn t_leading(&self) -> Result<(i64, QPoly), ArithError> {
        let (num_deg, num_slice) = self.num.top_t_slice().ok_or(ArithError::ZeroLeading)?;
        let mut den_deg = 0;
        let mut den_slice = QPoly::one();
        for (e, &m) in &self.den {
            let top = if e.t > 0 {
                QPoly::q_pow(e.q)
            } else {
                &QPoly::q_pow(e.q) - &QPoly::one()
            };
            for _ in 0..m {
                den_deg += e.t;
                den_slice = &den_slice * &top;
            }
        }
        match num_slice.div_exact(&den_slice) {
            Some(lead) => Ok((num_deg - den_deg, lead)),
            None => Err(ArithError::InexactLeading {
                num_slice,
                den_slice,
            }),
        }
    }

    /// The substitution `t = 0`.
    pub fn at_t_zero(&self) -> Result<QPoly, ArithError> {
        let num = self.num.at_t_zero()?;
        let den = self.den_poly().at_t_zero()?;
        num.div_exact(&den).ok_or(ArithError::InexactSpecialization)
    }
}

fn den_product(den: &BTreeMap<QtExp, u32>) -> QTPoly {
    let mut out = QTPoly::one();
    for (e, &m) in den {
        let b = &QTPoly::qt(e.q, e.t) - &QTPoly::one();
        for _ in 0..m {
            out = &out * &b;
        }
    }
    out
}

fn lcm(a: &BTreeMap<QtExp, u32>, b: &BTreeMap<QtExp, u32>) -> BTreeMap<QtExp, u32> {
    let mut out = a.clone();
    for (&e, &m) in b {
        let slot = out.entry(e).or_insert(0);
        *slot = (*slot).max(m);
    }
    out
}

fn quotient(big: &BTreeMap<QtExp, u32>, small: &BTreeMap<QtExp, u32>) -> BTreeMap<QtExp, u32> {
    big.iter()
        .filter_map(|(&e, &m)| {
            let r = m - small.get(&e).copied().unwrap_or(0);
            (r > 0).then_some((e, r))
        })
        .collect()
}

impl fmt::Display for QTFraction {
    /// Denominators print as `(1-q^a*t^b)` factors, the numerator sign
    /// adjusted to match: `(1-t)/(1-q*t)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let flips: u32 = self.den.values().sum();
        let num = if flips % 2 == 1 {
            -&self.num
        } else {
            self.num.clone()
        };
        if num.len() == 1 {
            write!(f, "{num}")?;
        } else {
            write!(f, "({num})")?;
        }
        f.write_str("/")?;
        let multi = self.den.len() > 1;
        if multi {
            f.write_str("(")?;
        }
        for (i, (e, &m)) in self.den.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "({})", QTPoly::one_minus(e.q, e.t))?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        if multi {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Coefficient sign helper used by the series printers.
pub(crate) fn leading_sign_negative(f: &QTFraction) -> bool {
    let flips: u32 = f.den.values().sum();
    let neg = f
        .num
        .lowest_term()
        .map(|(_, c)| c.is_negative())
        .unwrap_or(false);
    neg ^ (flips % 2 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn one_minus(a: i64, b: i64) -> QTPoly {
        QTPoly::one_minus(a, b)
    }

    fn frac(num: QTPoly, den: QTPoly) -> QTFraction {
        QTFraction::new(num, den).unwrap()
    }

    #[test]
    fn reciprocal_product_is_one() {
        let a = frac(one_minus(0, 1), one_minus(1, 1));
        let b = frac(one_minus(1, 1), one_minus(0, 1));
        let p = a.mul(&b);
        assert!(p.frac_equal(&QTFraction::one()));
        assert!(p.is_one());
    }

    #[test]
    fn additive_identities() {
        let f = frac(one_minus(0, 1), one_minus(1, 1));
        assert_eq!(f.add(&QTFraction::zero()), f);
        let g = frac(QTPoly::one(), one_minus(1, 1));
        assert!(g.add(&g.neg()).is_zero());
    }

    #[test]
    fn equality_examples() {
        let a = frac(one_minus(0, 2), one_minus(0, 1));
        let b: QTFraction = (&QTPoly::one() + &QTPoly::qt(0, 1)).into();
        assert!(a.frac_equal(&b));
        let c = frac(QTPoly::one(), one_minus(1, 1));
        let d = frac(QTPoly::one(), &QTPoly::one() - &QTPoly::qt(1, 1));
        assert!(c.frac_equal(&d));
        let e = frac(one_minus(0, 1), one_minus(1, 1));
        assert!(!e.frac_equal(&QTFraction::one()));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            QTFraction::new(QTPoly::one(), QTPoly::zero()),
            Err(ArithError::ZeroDenominator)
        );
        assert!(QTFraction::with_binomials(QTPoly::one(), &[(0, 0)]).is_err());
    }

    #[test]
    fn non_binomial_denominator_rejected() {
        // 1 + q + t does not factor into binomials
        let den = QTPoly::from_int_terms(&[(0, 0, 1), (1, 0, 1), (0, 1, 1)]);
        assert!(matches!(
            QTFraction::new(QTPoly::one(), den),
            Err(ArithError::NonBinomialDenominator(_))
        ));
    }

    #[test]
    fn leading_behaviour() {
        let f = frac(one_minus(0, 1), one_minus(2, 1));
        assert_eq!(f.t_leading().unwrap(), (0, QPoly::q_pow(-2)));
        let g: QTFraction = one_minus(0, 1).into();
        assert_eq!(g.t_leading().unwrap(), (1, QPoly::from_coeffs(&[-1])));
        let h = frac(one_minus(0, 1), one_minus(1, 3));
        assert_eq!(h.t_leading().unwrap(), (-2, QPoly::q_pow(-1)));
        assert_eq!(QTFraction::zero().t_leading(), Err(ArithError::ZeroLeading));
    }

    #[test]
    fn inexact_leading_reports_slices() {
        // (q t + 1) / (q^2 - 1): top slices q and q^2 - 1 do not divide
        let num = QTPoly::from_int_terms(&[(1, 1, 1), (0, 0, 1)]);
        let f = QTFraction::with_binomials(num, &[(2, 0)]).unwrap();
        assert!(matches!(
            f.t_leading(),
            Err(ArithError::InexactLeading { .. })
        ));
    }

    #[test]
    fn hhl_factor_shape() {
        let f = QTFraction::hhl_factor(0, 0);
        assert!(f.frac_equal(&frac(one_minus(0, 1), one_minus(1, 1))));
        assert_eq!(f.to_string(), "(1-t)/(1-q*t)");
        assert_eq!(f.at_t_zero().unwrap(), QPoly::one());
        let sq = f.mul(&f);
        assert_eq!(sq.to_string(), "(1-2*t+t^2)/(1-q*t)^2");
    }

    #[test]
    fn monomial_denominator_folds_into_numerator() {
        let f = frac(QTPoly::one(), QTPoly::from_int_terms(&[(2, 1, 3)]));
        assert!(f.is_polynomial());
        assert_eq!(
            f.numerator(),
            &QTPoly::monomial(Rat::new(1.into(), 3.into()), -2, -1)
        );
    }

    fn small_poly() -> impl Strategy<Value = QTPoly> {
        prop::collection::vec((-2i64..3, -2i64..3, -3i64..4), 0..4)
            .prop_map(|v| QTPoly::from_int_terms(&v))
    }

    fn small_frac() -> impl Strategy<Value = QTFraction> {
        (
            small_poly(),
            prop::collection::vec((0i64..3, 0i64..3), 0..3),
        )
            .prop_map(|(n, bs)| {
                let bs: Vec<_> = bs.into_iter().filter(|&(a, b)| (a, b) != (0, 0)).collect();
                QTFraction::with_binomials(n, &bs).unwrap()
            })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&(&a - &b) + &b - a.clone()).is_zero());
        }

        #[test]
        fn frac_equal_is_compatible(a in small_frac(), b in small_frac(), c in small_frac()) {
            prop_assert!(a.frac_equal(&a));
            prop_assert_eq!(a.frac_equal(&b), b.frac_equal(&a));
            let ab = a.add(&b);
            prop_assert!(ab.frac_equal(&b.add(&a)));
            prop_assert!(ab.sub(&b).frac_equal(&a));
            prop_assert!(a.mul(&b.add(&c)).frac_equal(&a.mul(&b).add(&a.mul(&c))));
            if a.frac_equal(&b) && b.frac_equal(&c) {
                prop_assert!(a.frac_equal(&c));
            }
        }

        #[test]
        fn factored_denominators_round_trip(f in small_frac()) {
            let rebuilt = QTFraction::new(f.numerator().clone(), f.den_poly()).unwrap();
            prop_assert!(rebuilt.frac_equal(&f));
        }

        #[test]
        fn t_leading_of_hhl_products(
            c in -2i64..3,
            factors in prop::collection::vec((0i64..4, 1i64..4), 0..4),
        ) {
            let mut f = QTFraction::from(QTPoly::qt(0, c));
            let mut deg = c;
            let mut qexp = 0;
            for &(a, b) in &factors {
                let num = QTPoly::one_minus(0, 1);
                let g = QTFraction::new(num, QTPoly::one_minus(a, b)).unwrap();
                f = f.mul(&g);
                deg += 1 - b;
                qexp -= a;
            }
            let (d, lead) = f.t_leading().unwrap();
            prop_assert_eq!(d, deg);
            prop_assert_eq!(lead, QPoly::q_pow(qexp));
        }
    }
}
