//! Text and JSON rendering of series and characters.
//!
//! Text terms are ordered by total `x`-degree, then by the coefficient's
//! complexity (lowest `q`-power for polynomials, number of denominator
//! factors for fractions), then by `x` in decreasing lexicographic order.
//! JSON terms list one coefficient monomial each:
//! `{"vars": N, "terms": [{"x": [..], "q": e, "t": e?, "p": e?, "coeff": "a/b", "den": [[a, b, m]]?}]}`
//! where `den` stands for `prod (1 - q^a t^b)^m`.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{parse_rat, QPoly, QTFraction, QTPoly, QtExp, Rat};
use crate::series::{Coefficient, TriGradedChar, XSeries};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("coefficient {0:?} is not a rational number")]
    BadRational(String),
    #[error("exponent vector of length {got}, expected {expected}")]
    ExponentLength { got: usize, expected: usize },
    #[error("field {field} is {problem}")]
    Field {
        field: &'static str,
        problem: &'static str,
    },
    #[error("bad denominator factor {0:?}")]
    Denominator([i64; 3]),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct Doc {
    vars: usize,
    terms: Vec<JsonTerm>,
}

/// One JSON term; see the module documentation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonTerm {
    x: Vec<u32>,
    q: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<u32>,
    coeff: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    den: Option<Vec<[i64; 3]>>,
}

/// Coefficient types that can be rendered as text and JSON.
pub trait Render: Coefficient {
    /// Secondary sort key after the total `x`-degree.
    fn order_key(&self) -> (i64, i64);
    /// Whether the first printed term is negative.
    fn leads_negative(&self) -> bool;
    fn negated(&self) -> Self;
    /// The single-monomial text if the coefficient is one.
    fn as_monomial_text(&self) -> Option<String>;
    /// Full text, parenthesised when it has to be multiplied on the right.
    fn factor_text(&self) -> String;
    fn bare_text(&self) -> String;
    fn json_terms(&self, x: &[u32], out: &mut Vec<JsonTerm>);
}

fn monomial_text(c: &Rat, vars: &[(&str, i64)]) -> String {
    let mut parts = Vec::new();
    if !c.is_one() {
        parts.push(c.to_string());
    }
    for &(name, e) in vars {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn x_text(x: &[u32]) -> String {
    let vars: Vec<(String, i64)> = x
        .iter()
        .enumerate()
        .map(|(i, &e)| (format!("x{}", i + 1), e as i64))
        .collect();
    let refs: Vec<(&str, i64)> = vars.iter().map(|(s, e)| (s.as_str(), *e)).collect();
    let s = monomial_text(&Rat::one(), &refs);
    if s == "1" {
        String::new()
    } else {
        s
    }
}

impl Render for QPoly {
    fn order_key(&self) -> (i64, i64) {
        (self.min_degree().unwrap_or(0), 0)
    }
    fn leads_negative(&self) -> bool {
        self.terms().next().is_some_and(|(_, c)| c.is_negative())
    }
    fn negated(&self) -> Self {
        -self
    }
    fn as_monomial_text(&self) -> Option<String> {
        let mut it = self.terms();
        match (it.next(), it.next()) {
            (Some((e, c)), None) => Some(monomial_text(c, &[("q", e)])),
            _ => None,
        }
    }
    fn factor_text(&self) -> String {
        format!("({self})")
    }
    fn bare_text(&self) -> String {
        self.to_string()
    }
    fn json_terms(&self, x: &[u32], out: &mut Vec<JsonTerm>) {
        for (e, c) in self.terms() {
            out.push(JsonTerm {
                x: x.to_vec(),
                q: e,
                t: None,
                p: None,
                coeff: c.to_string(),
                den: None,
            });
        }
    }
}

fn qt_sorted(p: &QTPoly) -> Vec<(QtExp, Rat)> {
    let mut v: Vec<(QtExp, Rat)> = p.terms().map(|(e, c)| (e, c.clone())).collect();
    v.sort_by_key(|(e, _)| (e.q, e.t));
    v
}

impl Render for QTFraction {
    fn order_key(&self) -> (i64, i64) {
        let factors: u32 = self.denominator_factors().map(|(_, _, m)| m).sum();
        let low = qt_sorted(self.numerator())
            .first()
            .map(|(e, _)| e.q)
            .unwrap_or(0);
        (factors as i64, low)
    }
    fn leads_negative(&self) -> bool {
        crate::arith::leading_sign_negative(self)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn as_monomial_text(&self) -> Option<String> {
        let p = self.as_polynomial()?;
        match &qt_sorted(p)[..] {
            [(e, c)] => Some(monomial_text(c, &[("q", e.q), ("t", e.t)])),
            _ => None,
        }
    }
    fn factor_text(&self) -> String {
        match self.as_polynomial() {
            Some(p) => format!("({p})"),
            None => self.to_string(),
        }
    }
    fn bare_text(&self) -> String {
        self.to_string()
    }
    fn json_terms(&self, x: &[u32], out: &mut Vec<JsonTerm>) {
        let den: Vec<[i64; 3]> = self
            .denominator_factors()
            .map(|(a, b, m)| [a, b, m as i64])
            .collect();
        let flips: i64 = den.iter().map(|d| d[2]).sum();
        for (e, c) in qt_sorted(self.numerator()) {
            let c = if flips % 2 == 1 { -c } else { c };
            out.push(JsonTerm {
                x: x.to_vec(),
                q: e.q,
                t: Some(e.t),
                p: None,
                coeff: c.to_string(),
                den: (!den.is_empty()).then(|| den.clone()),
            });
        }
    }
}

fn ordered<C: Render>(s: &XSeries<C>) -> Vec<(&Vec<u32>, &C)> {
    let mut v: Vec<_> = s.terms().collect();
    v.sort_by_key(|(x, c)| {
        let deg: u32 = x.iter().sum();
        (deg, c.order_key(), Reverse((*x).clone()))
    });
    v
}

fn join_signed(pieces: Vec<(bool, String)>) -> String {
    if pieces.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, s)) in pieces.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&s);
    }
    out
}

/// One-line text form, e.g. `x2 + x1*(1-t)/(1-q*t)` or `x2 + q*x1`.
pub fn series_text<C: Render>(s: &XSeries<C>) -> String {
    let terms = ordered(s);
    let single = terms.len() == 1;
    let pieces = terms
        .into_iter()
        .map(|(x, c)| {
            let neg = c.leads_negative();
            let owned;
            let c = if neg {
                owned = c.negated();
                &owned
            } else {
                c
            };
            let m = x_text(x);
            let text = match (c.as_monomial_text(), m.is_empty()) {
                (Some(ct), true) => ct,
                (Some(ct), false) if ct == "1" => m,
                (Some(ct), false) => format!("{ct}*{m}"),
                (None, true) if single => c.bare_text(),
                (None, true) => c.factor_text(),
                (None, false) => format!("{m}*{}", c.factor_text()),
            };
            (neg, text)
        })
        .collect();
    join_signed(pieces)
}

fn tri_ordered(c: &TriGradedChar) -> Vec<(&crate::series::TriKey, u64)> {
    let mut v: Vec<_> = c.terms().collect();
    v.sort_by_key(|(k, _)| (k.x.iter().sum::<u32>(), k.q, k.p, Reverse(k.x.clone())));
    v
}

/// One-line text form of a tri-graded character, e.g. `x2 + p*x1`.
pub fn tri_text(c: &TriGradedChar) -> String {
    let pieces = tri_ordered(c)
        .into_iter()
        .map(|(k, v)| {
            let coeff = monomial_text(
                &Rat::from_integer(v.into()),
                &[("q", k.q as i64), ("p", k.p as i64)],
            );
            let m = x_text(&k.x);
            let text = match (coeff.as_str(), m.is_empty()) {
                (_, true) => coeff,
                ("1", false) => m,
                (_, false) => format!("{coeff}*{m}"),
            };
            (false, text)
        })
        .collect();
    join_signed(pieces)
}

fn to_json(doc: &Doc) -> String {
    serde_json::to_string(doc).expect("plain data serialises")
}

/// JSON form of a series; coefficients are exact rational strings.
pub fn series_json<C: Render>(s: &XSeries<C>) -> String {
    let mut terms = Vec::new();
    for (x, c) in ordered(s) {
        c.json_terms(x, &mut terms);
    }
    to_json(&Doc { vars: s.n(), terms })
}

pub fn tri_json(c: &TriGradedChar) -> String {
    let terms = tri_ordered(c)
        .into_iter()
        .map(|(k, v)| JsonTerm {
            x: k.x.clone(),
            q: k.q as i64,
            t: None,
            p: Some(k.p),
            coeff: v.to_string(),
            den: None,
        })
        .collect();
    to_json(&Doc { vars: c.n(), terms })
}

fn parse_doc(s: &str) -> Result<Doc, FormatError> {
    let doc: Doc = serde_json::from_str(s)?;
    if doc.vars < 2 {
        return Err(FormatError::Field {
            field: "vars",
            problem: "below 2",
        });
    }
    for t in &doc.terms {
        if t.x.len() != doc.vars {
            return Err(FormatError::ExponentLength {
                got: t.x.len(),
                expected: doc.vars,
            });
        }
    }
    Ok(doc)
}

fn rat(s: &str) -> Result<Rat, FormatError> {
    parse_rat(s).ok_or_else(|| FormatError::BadRational(s.to_string()))
}

/// Inverse of [`series_json`] for `q`-polynomial coefficients.
pub fn parse_qpoly_series(s: &str) -> Result<XSeries<QPoly>, FormatError> {
    let doc = parse_doc(s)?;
    let mut out = XSeries::zero(doc.vars);
    for t in doc.terms {
        if t.t.is_some() || t.p.is_some() || t.den.is_some() {
            return Err(FormatError::Field {
                field: "t/p/den",
                problem: "not allowed here",
            });
        }
        out.add_term(t.x, &QPoly::monomial(rat(&t.coeff)?, t.q));
    }
    Ok(out)
}

/// Inverse of [`series_json`] for fraction coefficients.
pub fn parse_fraction_series(s: &str) -> Result<XSeries<QTFraction>, FormatError> {
    let doc = parse_doc(s)?;
    let mut groups: BTreeMap<(Vec<u32>, Vec<[i64; 3]>), QTPoly> = BTreeMap::new();
    for t in doc.terms {
        if t.p.is_some() {
            return Err(FormatError::Field {
                field: "p",
                problem: "not allowed here",
            });
        }
        let den = t.den.unwrap_or_default();
        let mut num = QTPoly::zero();
        num.add_term(QtExp::new(t.q, t.t.unwrap_or(0)), rat(&t.coeff)?);
        let slot = groups.entry((t.x, den)).or_default();
        *slot += &num;
    }
    let mut out = XSeries::zero(doc.vars);
    for ((x, den), num) in groups {
        let mut binomials = Vec::new();
        let mut flips = 0;
        for d in &den {
            if d[2] <= 0 || (d[0] == 0 && d[1] == 0) {
                return Err(FormatError::Denominator(*d));
            }
            flips += d[2];
            binomials.extend(std::iter::repeat_n((d[0], d[1]), d[2] as usize));
        }
        let num = if flips % 2 == 1 { -&num } else { num };
        let c = QTFraction::with_binomials(num, &binomials)
            .map_err(|_| FormatError::Denominator(den[0]))?;
        out.add_term(x, &c);
    }
    Ok(out)
}

/// Inverse of [`tri_json`].
pub fn parse_tri(s: &str) -> Result<TriGradedChar, FormatError> {
    let doc = parse_doc(s)?;
    let mut out = TriGradedChar::new(doc.vars);
    for t in doc.terms {
        let p = t.p.ok_or(FormatError::Field {
            field: "p",
            problem: "missing",
        })?;
        let q = u32::try_from(t.q).map_err(|_| FormatError::Field {
            field: "q",
            problem: "negative",
        })?;
        let c = rat(&t.coeff)?;
        if !c.is_integer() || c.is_negative() || c.is_zero() {
            return Err(FormatError::BadRational(t.coeff));
        }
        let c = c
            .to_integer()
            .try_into()
            .map_err(|_| FormatError::BadRational(t.coeff.clone()))?;
        out.add(t.x, q, p, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demazure::{pbw_character_rectangular, pbw_character_two_row};
    use crate::diagram::Composition;
    use crate::hhl::{e_limit_combinatorial, hhl_polynomial, specialize_t0};
    use proptest::prelude::*;

    fn comp(p: &[u32]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn text_examples() {
        assert_eq!(
            series_text(&hhl_polynomial(&comp(&[0, 1]))),
            "x2 + x1*(1-t)/(1-q*t)"
        );
        assert_eq!(series_text(&hhl_polynomial(&comp(&[0, 0]))), "1");
        assert_eq!(
            series_text(&e_limit_combinatorial(&comp(&[0, 1])).unwrap()),
            "x2 + q*x1"
        );
        assert_eq!(
            series_text(&specialize_t0(&comp(&[0, 1])).unwrap()),
            "x1 + x2"
        );
        assert_eq!(series_text(&XSeries::<QPoly>::zero(2)), "0");
        let mut s = XSeries::zero(2);
        s.add_term(vec![1, 0], &QPoly::from_coeffs(&[-1, 0, 2]));
        s.add_term(vec![0, 0], &QPoly::from_coeffs(&[0, -3]));
        assert_eq!(series_text(&s), "-3*q - x1*(1-2*q^2)");
        assert_eq!(
            tri_text(&pbw_character_rectangular(2, 1, 1).unwrap()),
            "x2 + p*x1"
        );
    }

    #[test]
    fn json_examples() {
        let e = hhl_polynomial(&comp(&[0, 1]));
        assert_eq!(
            series_json(&e),
            r#"{"vars":2,"terms":[{"x":[0,1],"q":0,"t":0,"coeff":"1"},{"x":[1,0],"q":0,"t":0,"coeff":"1","den":[[1,1,1]]},{"x":[1,0],"q":0,"t":1,"coeff":"-1","den":[[1,1,1]]}]}"#
        );
        let l = e_limit_combinatorial(&comp(&[0, 1])).unwrap();
        assert_eq!(
            series_json(&l),
            r#"{"vars":2,"terms":[{"x":[0,1],"q":0,"coeff":"1"},{"x":[1,0],"q":1,"coeff":"1"}]}"#
        );
    }

    #[test]
    fn parse_errors() {
        assert!(parse_qpoly_series("{").is_err());
        assert!(parse_qpoly_series(r#"{"vars":2,"terms":[{"x":[1],"q":0,"coeff":"1"}]}"#).is_err());
        assert!(
            parse_qpoly_series(r#"{"vars":2,"terms":[{"x":[1,0],"q":0,"coeff":"z"}]}"#).is_err()
        );
        assert!(
            parse_tri(r#"{"vars":2,"terms":[{"x":[1,0],"q":0,"p":0,"coeff":"1/2"}]}"#).is_err()
        );
        assert!(parse_fraction_series(
            r#"{"vars":2,"terms":[{"x":[1,0],"q":0,"t":0,"coeff":"1","den":[[0,0,1]]}]}"#
        )
        .is_err());
    }

    #[test]
    fn round_trips_on_computed_data() {
        for p in [[0, 1, 2], [2, 0, 1], [1, 1, 0], [0, 0, 0]] {
            let e = hhl_polynomial(&comp(&p));
            assert!(parse_fraction_series(&series_json(&e))
                .unwrap()
                .same_value(&e));
            let l = specialize_t0(&comp(&p)).unwrap();
            assert_eq!(parse_qpoly_series(&series_json(&l)).unwrap(), l);
        }
        let c = pbw_character_two_row(3, 1, 2);
        assert_eq!(parse_tri(&tri_json(&c)).unwrap(), c);
    }

    fn qpoly_series() -> impl Strategy<Value = XSeries<QPoly>> {
        proptest::collection::vec(
            ((0u32..3, 0u32..3, 0u32..3), -3i64..4, -5i64..6, 1i64..4),
            0..8,
        )
        .prop_map(|terms| {
            let mut s = XSeries::zero(3);
            for ((a, b, c), e, n, d) in terms {
                s.add_term(
                    vec![a, b, c],
                    &QPoly::monomial(Rat::new(n.into(), d.into()), e),
                );
            }
            s
        })
    }

    fn tri_char() -> impl Strategy<Value = TriGradedChar> {
        proptest::collection::vec(((0u32..3, 0u32..3), 0u32..4, 0u32..4, 1u64..5), 0..8).prop_map(
            |terms| {
                let mut c = TriGradedChar::new(2);
                for ((a, b), q, p, v) in terms {
                    c.add(vec![a, b], q, p, v);
                }
                c
            },
        )
    }

    fn fraction_series() -> impl Strategy<Value = XSeries<QTFraction>> {
        proptest::collection::vec(
            (
                (0u32..2, 0u32..2),
                -2i64..3,
                0i64..3,
                -3i64..4,
                proptest::collection::vec((0i64..3, 1i64..3), 0..3),
            ),
            0..6,
        )
        .prop_map(|terms| {
            let mut s = XSeries::zero(2);
            for ((a, b), eq, et, n, dens) in terms {
                let num = QTPoly::monomial(Rat::from_integer(n.into()), eq, et);
                let c = QTFraction::with_binomials(num, &dens).unwrap();
                s.add_term(vec![a, b], &c);
            }
            s
        })
    }

    proptest! {
        #[test]
        fn qpoly_json_round_trip(s in qpoly_series()) {
            prop_assert_eq!(parse_qpoly_series(&series_json(&s)).unwrap(), s);
        }

        #[test]
        fn tri_json_round_trip(c in tri_char()) {
            prop_assert_eq!(parse_tri(&tri_json(&c)).unwrap(), c);
        }

        #[test]
        fn fraction_json_round_trip(s in fraction_series()) {
            let back = parse_fraction_series(&series_json(&s)).unwrap();
            prop_assert!(back.same_value(&s));
        }
    }
}
