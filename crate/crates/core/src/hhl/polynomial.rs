use std::collections::BTreeMap;

use super::{AppropriateFillings, HhlError, NonAttacking, Shape};
use crate::arith::{QPoly, QTFraction, QTPoly, Rat};
use crate::diagram::Composition;
use crate::series::XSeries;

/// `E_mu(x; q, t)` from the HHL sum over non-attacking fillings.
pub fn hhl_polynomial(mu: &Composition) -> XSeries<QTFraction> {
    let shape = Shape::new(mu);
    // Terms sharing a monomial and a denominator are summed as plain
    // polynomials first; only the distinct groups go through fraction sums.
    type Key = (Vec<u32>, Vec<(u32, u32)>);
    let mut groups: BTreeMap<Key, QTPoly> = BTreeMap::new();
    for f in NonAttacking::new(mu) {
        let st = shape.stats(&f);
        let mut factors = st.factors;
        factors.sort_unstable();
        let slot = groups.entry((st.content, factors)).or_default();
        slot.add_term(
            crate::arith::QtExp::new(st.maj, st.coinv),
            Rat::from_integer(1.into()),
        );
    }
    let t_minus_one = &QTPoly::qt(0, 1) - &QTPoly::one();
    let mut out = XSeries::zero(mu.n());
    for ((x, factors), num) in groups {
        let num = &num * &t_minus_one.pow(factors.len() as u32);
        let dens: Vec<(i64, i64)> = factors
            .iter()
            .map(|&(l, a)| (l as i64 + 1, a as i64 + 1))
            .collect();
        let c = QTFraction::with_binomials(num, &dens).expect("HHL denominators are nonzero");
        out.add_term(x, &c);
    }
    out
}

/// `E_mu(x; q, 0)`: the fillings with `coinv = 0`, weighted by `q^maj`.
pub fn specialize_t0(mu: &Composition) -> Result<XSeries<QPoly>, HhlError> {
    let shape = Shape::new(mu);
    let mut out = XSeries::zero(mu.n());
    for f in NonAttacking::new(mu) {
        let st = shape.stats(&f);
        if st.coinv < 0 {
            return Err(HhlError::NegativeCoinv {
                mu: mu.clone(),
                filling: f.to_string(),
            });
        }
        if st.coinv == 0 {
            out.add_term(st.content, &QPoly::q_pow(st.maj));
        }
    }
    Ok(out)
}

/// `lim_{t -> infinity} E_mu(x; q, t)`, a polynomial in `x` and `q^{-1}`.
///
/// Each filling's term `q^maj t^coinv prod (1-t)/(1-q^{l+1} t^{a+1})` is
/// reduced to its leading behaviour `lead(q) t^deg` factor by factor; terms
/// with `deg < 0` vanish in the limit and `deg > 0` is reported as an error.
pub fn limit_t_infinity_symbolic(mu: &Composition) -> Result<XSeries<QPoly>, HhlError> {
    let shape = Shape::new(mu);
    let mut cache: BTreeMap<(u32, u32), (i64, QPoly)> = BTreeMap::new();
    let mut out = XSeries::zero(mu.n());
    for f in NonAttacking::new(mu) {
        let st = shape.stats(&f);
        let mono = QTFraction::from(QTPoly::qt(st.maj, st.coinv));
        let (mut deg, mut lead) = mono.t_leading()?;
        for &(l, a) in &st.factors {
            let (d, c) = match cache.get(&(l, a)) {
                Some(v) => v.clone(),
                None => {
                    let v = QTFraction::hhl_factor(l, a).t_leading()?;
                    cache.insert((l, a), v.clone());
                    v
                }
            };
            deg += d;
            lead = &lead * &c;
        }
        if deg > 0 {
            return Err(HhlError::PositiveTDegree {
                mu: mu.clone(),
                filling: f.to_string(),
                degree: deg,
            });
        }
        if deg == 0 {
            out.add_term(st.content, &lead);
        }
    }
    Ok(out)
}

/// `E_mu(x; q^{-1}, infinity)` as `sum q^W x^k` over the fillings that
/// survive the limit, for `mu = pi^r(lambda)` with `lambda` antidominant.
pub fn e_limit_combinatorial(mu: &Composition) -> Result<XSeries<QPoly>, HhlError> {
    let shape = Shape::new(mu);
    let mut out = XSeries::zero(mu.n());
    for f in AppropriateFillings::new(mu)? {
        let st = shape.stats(&f);
        out.add_term(st.content, &QPoly::q_pow(st.w));
    }
    Ok(out)
}

/// Knop–Sahi operator: `x^e -> q^{-e_N} x_1^{e_N + 1} x_2^{e_1} ... x_N^{e_{N-1}}`.
pub fn knop_sahi_psi(f: &XSeries<QTFraction>) -> XSeries<QTFraction> {
    let n = f.n();
    let mut out = XSeries::zero(n);
    for (e, c) in f.terms() {
        let last = e[n - 1];
        let mut k = Vec::with_capacity(n);
        k.push(last + 1);
        k.extend_from_slice(&e[..n - 1]);
        out.add_term(k, &c.shift(-(last as i64), 0));
    }
    out
}
