//! The coefficients `c_a^mu(k)` and the identities relating them.
//!
//! For an antidominant `mu` with `s` nonzero columns and a string `a` of `s`
//! distinct values, `c_a^mu(k)` sums `q^W` over the fillings of `dg'(mu)`
//! whose first row reads `a` (in columns `N-s+1..N`) and whose higher rows
//! are built by [`arrange_by_rule`] from a value set per row. `W` adds
//! `l(u)+1` over cells `u` above row 1 with `sigma(u) < sigma(d(u))`, and
//! `k` counts the values over all of `dg'(mu)`.

use std::collections::BTreeSet;

use super::enumerate::{first_subset, next_subset, row_len};
use super::{arrange_by_rule, e_limit_combinatorial, specialize_t0, HhlError};
use crate::arith::QPoly;
use crate::diagram::Composition;
use crate::series::XSeries;

/// All coefficients `c_a^mu(k)` for one bottom string `a`, keyed by `k`.
#[derive(Clone, Debug)]
pub struct CoeffTable {
    mu: Composition,
    a: Vec<u8>,
    entries: XSeries<QPoly>,
}

impl CoeffTable {
    pub fn new(mu: &Composition, a: &[u8]) -> Result<Self, HhlError> {
        if !mu.is_antidominant() {
            return Err(HhlError::NotAntidominant(mu.clone()));
        }
        let n = mu.n();
        let s = mu.nonzero_parts();
        let distinct: BTreeSet<u8> = a.iter().copied().collect();
        if a.len() != s || distinct.len() != s || a.iter().any(|&v| v == 0 || v as usize > n) {
            return Err(HhlError::BadBottomString {
                a: a.to_vec(),
                expected_len: s,
                n,
            });
        }
        let mut k = vec![0u32; n];
        for &v in a {
            k[v as usize - 1] += 1;
        }
        let mut entries = XSeries::zero(n);
        fill_rows(mu, 2, a, &mut k, 0, &mut entries);
        Ok(Self {
            mu: mu.clone(),
            a: a.to_vec(),
            entries,
        })
    }

    pub fn composition(&self) -> &Composition {
        &self.mu
    }

    pub fn bottom(&self) -> &[u8] {
        &self.a
    }

    pub fn get(&self, k: &[u32]) -> QPoly {
        self.entries.coeff(k)
    }

    pub fn as_series(&self) -> &XSeries<QPoly> {
        &self.entries
    }

    /// Entries re-keyed by `k - delta_a`, i.e. the family `k -> c_a(k + delta_a)`.
    pub fn shifted_by_bottom(&self) -> XSeries<QPoly> {
        let a = self.a.clone();
        self.entries.map_exponents(move |k| {
            let mut k = k.to_vec();
            for &v in &a {
                k[v as usize - 1] -= 1;
            }
            k
        })
    }
}

fn fill_rows(
    mu: &Composition,
    j: u32,
    prev: &[u8],
    k: &mut [u32],
    w: i64,
    out: &mut XSeries<QPoly>,
) {
    if j > mu.height() {
        out.add_term(k.to_vec(), &QPoly::q_pow(w));
        return;
    }
    let n = mu.n();
    let len = row_len(mu, j);
    let offset = prev.len() - len;
    let mut set = first_subset(len);
    loop {
        let b: BTreeSet<u8> = set.iter().copied().collect();
        let row = arrange_by_rule(prev, &b).expect("rows shrink upwards");
        let mut w2 = w;
        for (i, &v) in row.iter().enumerate() {
            k[v as usize - 1] += 1;
            if v < prev[offset + i] {
                let col = n - len + 1 + i;
                w2 += (mu.part(col) - j + 1) as i64;
            }
        }
        fill_rows(mu, j + 1, &row, k, w2, out);
        for &v in &row {
            k[v as usize - 1] -= 1;
        }
        if !next_subset(&mut set, n as u8) {
            break;
        }
    }
}

/// `c_a^mu(k)`.
pub fn coefficient_c(mu: &Composition, a: &[u8], k: &[u32]) -> Result<QPoly, HhlError> {
    if k.len() != mu.n() {
        return Err(HhlError::ExponentLength {
            got: k.len(),
            expected: mu.n(),
        });
    }
    Ok(CoeffTable::new(mu, a)?.get(k))
}

/// One instance of an identity: both sides as series in the free index `k`.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub label: String,
    pub lhs: XSeries<QPoly>,
    pub rhs: XSeries<QPoly>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// All strings of `s` distinct values from `1..=n`.
pub fn bottom_strings(n: usize, s: usize) -> Vec<Vec<u8>> {
    fn go(n: u8, s: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n {
            if !cur.contains(&v) {
                cur.push(v);
                go(n, s, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n as u8, s, &mut Vec::new(), &mut out);
    out
}

/// `lambda` with every nonzero part raised by one: the diagram whose
/// coefficients expand `E_lambda`.
pub fn raise_nonzero(lambda: &Composition) -> Composition {
    let parts = lambda
        .parts()
        .iter()
        .map(|&p| if p > 0 { p + 1 } else { 0 })
        .collect();
    Composition::new(parts).expect("same length")
}

fn strip_bottom(mu: &Composition) -> Composition {
    let parts = mu.parts().iter().map(|&p| p.saturating_sub(1)).collect();
    Composition::new(parts).expect("same length")
}

fn fmt_str(a: &[u8]) -> String {
    let v: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("({})", v.join(","))
}

/// Removing the bottom row: `c_a^mu(k + delta_a) = sum_B c_{a(B)}^lambda(k)
/// q^{sum_{b_j < a_j} lambda_j}`, where `lambda` is `mu` without its first
/// row and `B` runs over the value sets of the next row.
pub fn check_recurrence(mu: &Composition) -> Result<Vec<IdentityCheck>, HhlError> {
    if !mu.is_antidominant() {
        return Err(HhlError::NotAntidominant(mu.clone()));
    }
    let n = mu.n();
    let s = mu.nonzero_parts();
    if s == 0 {
        return Ok(Vec::new());
    }
    let lambda = strip_bottom(mu);
    let s2 = lambda.nonzero_parts();
    let mut out = Vec::new();
    for a in bottom_strings(n, s) {
        let lhs = CoeffTable::new(mu, &a)?.shifted_by_bottom();
        let mut rhs = XSeries::zero(n);
        let mut set = first_subset(s2);
        loop {
            let b: BTreeSet<u8> = set.iter().copied().collect();
            let ab = arrange_by_rule(&a, &b)?;
            let mut e = 0i64;
            for (i, &bv) in ab.iter().enumerate() {
                let col = n - s2 + 1 + i;
                if bv < a[s - s2 + i] {
                    e += lambda.part(col) as i64;
                }
            }
            let table = CoeffTable::new(&lambda, &ab)?;
            rhs.add_series(&table.as_series().shift_q(e));
            if !next_subset(&mut set, n as u8) {
                break;
            }
        }
        out.push(IdentityCheck {
            label: format!("recurrence mu=({mu}) a={}", fmt_str(&a)),
            lhs,
            rhs,
        });
    }
    Ok(out)
}

/// Swapping the bottom values of two equal-height adjacent columns leaves
/// the coefficients unchanged.
pub fn check_transposition(mu: &Composition) -> Result<Vec<IdentityCheck>, HhlError> {
    if !mu.is_antidominant() {
        return Err(HhlError::NotAntidominant(mu.clone()));
    }
    let n = mu.n();
    let s = mu.nonzero_parts();
    let mut out = Vec::new();
    for c in n - s + 1..n {
        if mu.part(c) != mu.part(c + 1) {
            continue;
        }
        let i = c - (n - s + 1);
        for a in bottom_strings(n, s) {
            let mut b = a.clone();
            b.swap(i, i + 1);
            out.push(IdentityCheck {
                label: format!(
                    "transposition mu=({mu}) a={} columns {c},{}",
                    fmt_str(&a),
                    c + 1
                ),
                lhs: CoeffTable::new(mu, &a)?.shifted_by_bottom(),
                rhs: CoeffTable::new(mu, &b)?.shifted_by_bottom(),
            });
        }
    }
    Ok(out)
}

/// Bottom string `(N-s+r+1, ..., N, 1, ..., r)` used for `pi^r(lambda)`.
pub fn scrolled_bottom(n: usize, s: usize, r: usize) -> Vec<u8> {
    (n - s + r + 1..=n).chain(1..=r).map(|v| v as u8).collect()
}

/// For antidominant `lambda` with `s` nonzero parts:
///
/// * expansion of the scrolled limits, `0 <= r <= s`:
///   `E_{pi^r lambda}(x; q^{-1}, infinity) = sum_K C_r(K) x^{K + 1_{[1..r]}}`
///   with `C_r(K) = c_{a_r}^{lambda+}(K + delta_{a_r})`;
/// * the rotation law, `1 <= r <= s`:
///   `C_0(k) = q^{L_r - k_{N-r+1} - ... - k_N} C_r(k_{N-r+1}, ..., k_N, k_1, ..., k_{N-r})`
///   with `L_r = lambda_{N-r+1} + ... + lambda_N`.
pub fn check_scroll(lambda: &Composition) -> Result<Vec<IdentityCheck>, HhlError> {
    if !lambda.is_antidominant() {
        return Err(HhlError::NotAntidominant(lambda.clone()));
    }
    let n = lambda.n();
    let s = lambda.nonzero_parts();
    let plus = raise_nonzero(lambda);
    let tables: Vec<XSeries<QPoly>> = (0..=s)
        .map(|r| CoeffTable::new(&plus, &scrolled_bottom(n, s, r)).map(|t| t.shifted_by_bottom()))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for (r, c_r) in tables.iter().enumerate() {
        let lhs = e_limit_combinatorial(&lambda.pi_pow(r))?;
        let rhs = c_r.map_exponents(|k| {
            let mut k = k.to_vec();
            for v in k.iter_mut().take(r) {
                *v += 1;
            }
            k
        });
        out.push(IdentityCheck {
            label: format!("scrolled expansion lambda=({lambda}) r={r}"),
            lhs,
            rhs,
        });
    }
    for r in 1..=s {
        let big_l: i64 = lambda.parts()[n - r..].iter().map(|&p| p as i64).sum();
        let mut rhs = XSeries::zero(n);
        for (kk, c) in tables[r].terms() {
            // kk = (k_{N-r+1..N}, k_{1..N-r})
            let mut k = kk[r..].to_vec();
            k.extend_from_slice(&kk[..r]);
            let tail: i64 = kk[..r].iter().map(|&v| v as i64).sum();
            rhs.add_term(k, &c.shift(big_l - tail));
        }
        out.push(IdentityCheck {
            label: format!("rotation law lambda=({lambda}) r={r}"),
            lhs: tables[0].clone(),
            rhs,
        });
    }
    Ok(out)
}

/// `E_lambda(x; q, 0) = sum_k c_{(s, ..., 1)}^{lambda+}(k_1+1, ..., k_s+1, k_{s+1}, ..., k_N) x^k`.
pub fn check_specialisation_zero(lambda: &Composition) -> Result<IdentityCheck, HhlError> {
    if !lambda.is_antidominant() {
        return Err(HhlError::NotAntidominant(lambda.clone()));
    }
    let s = lambda.nonzero_parts();
    let a: Vec<u8> = (1..=s as u8).rev().collect();
    let rhs = CoeffTable::new(&raise_nonzero(lambda), &a)?.shifted_by_bottom();
    Ok(IdentityCheck {
        label: format!("t=0 expansion lambda=({lambda})"),
        lhs: specialize_t0(lambda)?,
        rhs,
    })
}

fn sl3(m1: u32, m2: u32) -> (Composition, Composition) {
    let base = Composition::new(vec![0, m2, m1 + m2]).expect("three parts");
    let plus = Composition::new(vec![0, m2 + 1, m1 + m2 + 1]).expect("three parts");
    (base, plus)
}

/// The two `sl_3` recurrences for `lambda = (0, m2, m1+m2)` with `m2 >= 1`:
///
/// `c_{(2,1)}^{lambda+1}(k + e_1 + e_2) = c_{(2,1)}^lambda(k) + c_{(3,1)}^lambda(k) + c_{(3,2)}^lambda(k)`,
/// `c_{(3,1)}^{lambda+1}(k + e_1 + e_3) = q^{m2} c_{(2,1)}^lambda(k) + c_{(3,1)}^lambda(k) + c_{(3,2)}^lambda(k)`.
pub fn check_sl3_recurrences(m1: u32, m2: u32) -> Result<Vec<IdentityCheck>, HhlError> {
    if m2 == 0 {
        return Ok(Vec::new());
    }
    let (base, plus) = sl3(m1, m2);
    let t = |mu: &Composition, a: &[u8]| CoeffTable::new(mu, a).map(|t| t.shifted_by_bottom());
    let lower: Vec<XSeries<QPoly>> = [[2, 1], [3, 1], [3, 2]]
        .iter()
        .map(|a| Ok(CoeffTable::new(&base, a)?.as_series().clone()))
        .collect::<Result<_, HhlError>>()?;
    let mut rhs1 = XSeries::zero(3);
    let mut rhs2 = XSeries::zero(3);
    for (i, s) in lower.iter().enumerate() {
        rhs1.add_series(s);
        rhs2.add_series(&if i == 0 {
            s.shift_q(m2 as i64)
        } else {
            s.clone()
        });
    }
    Ok(vec![
        IdentityCheck {
            label: format!("sl3 recurrence a=(2,1) m1={m1} m2={m2}"),
            lhs: t(&plus, &[2, 1])?,
            rhs: rhs1,
        },
        IdentityCheck {
            label: format!("sl3 recurrence a=(3,1) m1={m1} m2={m2}"),
            lhs: t(&plus, &[3, 1])?,
            rhs: rhs2,
        },
    ])
}

/// `c_{(3,1)}^{lambda+1}(k + e_1 + e_3) = c_{(2,1)}^{lambda+1}(k + e_1 + e_2)
/// - (1 - q^{m2}) c_{(2,1)}^lambda(k)` for `lambda = (0, m2, m1+m2)`.
///
/// When `m2 = 0` the correction term carries the factor `1 - q^0 = 0`.
pub fn check_sl3_c31(m1: u32, m2: u32) -> Result<IdentityCheck, HhlError> {
    let (base, plus) = sl3(m1, m2);
    let lhs = CoeffTable::new(&plus, &[3, 1])?.shifted_by_bottom();
    let mut rhs = CoeffTable::new(&plus, &[2, 1])?.shifted_by_bottom();
    if m2 > 0 {
        let factor = &QPoly::one() - &QPoly::q_pow(m2 as i64);
        let low = CoeffTable::new(&base, &[2, 1])?;
        rhs.sub_series(&low.as_series().map_coeffs(|c| c * &factor));
    }
    Ok(IdentityCheck {
        label: format!("sl3 c31 m1={m1} m2={m2}"),
        lhs,
        rhs,
    })
}
