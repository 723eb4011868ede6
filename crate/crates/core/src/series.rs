//! Polynomials in `x_1..x_N` with coefficients in a coefficient ring, and
//! tri-graded characters in `(x, q, p)`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arith::{QPoly, QTFraction, Rat};

/// Operations an [`XSeries`] needs from its coefficients.
pub trait Coefficient: Clone + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_to(&mut self, other: &Self);
    fn neg(&self) -> Self;
    /// Mathematical equality, which may be coarser than structural equality.
    fn same_value(&self, other: &Self) -> bool;
}

impl Coefficient for QPoly {
    fn zero() -> Self {
        QPoly::zero()
    }
    fn is_zero(&self) -> bool {
        QPoly::is_zero(self)
    }
    fn add_to(&mut self, other: &Self) {
        *self += other;
    }
    fn neg(&self) -> Self {
        -self
    }
    fn same_value(&self, other: &Self) -> bool {
        self == other
    }
}

impl Coefficient for QTFraction {
    fn zero() -> Self {
        QTFraction::zero()
    }
    fn is_zero(&self) -> bool {
        QTFraction::is_zero(self)
    }
    fn add_to(&mut self, other: &Self) {
        *self = QTFraction::add(self, other);
    }
    fn neg(&self) -> Self {
        QTFraction::neg(self)
    }
    fn same_value(&self, other: &Self) -> bool {
        self.frac_equal(other)
    }
}

/// `sum_k c_k x^k` over exponent vectors `k` of length `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct XSeries<C> {
    n: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Coefficient> XSeries<C> {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The constant series `c`.
    pub fn constant(n: usize, c: C) -> Self {
        let mut s = Self::zero(n);
        s.add_term(vec![0; n], &c);
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, k: &[u32]) -> Option<&C> {
        self.terms.get(k)
    }

    pub fn coeff(&self, k: &[u32]) -> C {
        self.terms.get(k).cloned().unwrap_or_else(C::zero)
    }

    /// Terms in increasing lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> + '_ {
        self.terms.iter()
    }

    /// Adds `c x^k`; panics if `k` has the wrong length.
    pub fn add_term(&mut self, k: Vec<u32>, c: &C) {
        assert_eq!(k.len(), self.n, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(slot) => {
                slot.add_to(c);
                if slot.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    pub fn add_series(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c);
        }
    }

    pub fn sub_series(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), &c.neg());
        }
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> XSeries<D> {
        let mut out = XSeries::zero(self.n);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &f(c));
        }
        out
    }

    /// Rewrites every exponent vector; colliding images are summed.
    pub fn map_exponents(&self, f: impl Fn(&[u32]) -> Vec<u32>) -> Self {
        let mut out = Self::zero(self.n);
        for (k, c) in &self.terms {
            out.add_term(f(k), c);
        }
        out
    }

    /// Coefficientwise mathematical equality.
    pub fn same_value(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }

    /// Smallest exponent vector where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<Vec<u32>> {
        if self.n != other.n {
            return Some(Vec::new());
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .find(|k| !self.coeff(k).same_value(&other.coeff(k)))
            .cloned()
    }

    /// True when invariant under every permutation of the variables.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n.saturating_sub(1)).all(|i| {
            let swapped = self.map_exponents(|k| {
                let mut k = k.to_vec();
                k.swap(i, i + 1);
                k
            });
            self.same_value(&swapped)
        })
    }
}

impl XSeries<QPoly> {
    /// Applies `q -> q^{-1}` to every coefficient.
    pub fn substitute_q_inverse(&self) -> Self {
        self.map_coeffs(QPoly::substitute_q_inverse)
    }

    /// Value at `q = 1` and all `x_i = 1`.
    pub fn eval_at_one(&self) -> Rat {
        self.terms
            .values()
            .map(QPoly::eval_one)
            .fold(Rat::zero(), |a, b| a + b)
    }

    /// Specialisation `q = 0`, kept as a series with constant coefficients.
    pub fn at_q_zero(&self) -> Option<Self> {
        let mut out = Self::zero(self.n);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &QPoly::constant(c.eval_zero()?));
        }
        Some(out)
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.terms.values().all(QPoly::is_nonnegative_integral)
    }

    /// Multiplies every coefficient by `q^e`.
    pub fn shift_q(&self, e: i64) -> Self {
        self.map_coeffs(|c| c.shift(e))
    }
}

impl XSeries<QTFraction> {
    /// Termwise substitution `t = 0`.
    pub fn at_t_zero(&self) -> Result<XSeries<QPoly>, crate::arith::ArithError> {
        let mut out = XSeries::zero(self.n);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &c.at_t_zero()?);
        }
        Ok(out)
    }
}

/// Key of a tri-graded character term: `x^x q^q p^p`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriKey {
    pub x: Vec<u32>,
    pub q: u32,
    pub p: u32,
}

/// `sum c x^k q^r p^s` with nonnegative integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TriGradedChar {
    n: usize,
    terms: BTreeMap<TriKey, u64>,
}

impl TriGradedChar {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add(&mut self, x: Vec<u32>, q: u32, p: u32, c: u64) {
        assert_eq!(x.len(), self.n, "exponent vector length");
        if c == 0 {
            return;
        }
        *self.terms.entry(TriKey { x, q, p }).or_insert(0) += c;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TriKey, u64)> + '_ {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total dimension: value at `x = q = p = 1`.
    pub fn dimension(&self) -> u64 {
        self.terms.values().sum()
    }

    fn collapse(&self, f: impl Fn(&TriKey) -> Option<i64>) -> XSeries<QPoly> {
        let mut out = XSeries::zero(self.n);
        for (k, &c) in &self.terms {
            if let Some(e) = f(k) {
                let c = QPoly::monomial(Rat::from_integer(c.into()), e);
                out.add_term(k.x.clone(), &c);
            }
        }
        out
    }

    /// The specialisation `p = q`.
    pub fn at_p_equals_q(&self) -> XSeries<QPoly> {
        self.collapse(|k| Some(k.q as i64 + k.p as i64))
    }

    /// The specialisation `p = 1`, leaving the `q`-graded character.
    pub fn at_p_one(&self) -> XSeries<QPoly> {
        self.collapse(|k| Some(k.q as i64))
    }

    /// The specialisation `p = q = 0`.
    pub fn at_pq_zero(&self) -> XSeries<QPoly> {
        self.collapse(|k| (k.q == 0 && k.p == 0).then_some(0))
    }
}
