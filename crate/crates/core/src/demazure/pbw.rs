use std::fmt;

use super::q_multinomial;
use crate::arith::QPoly;
use crate::series::{TriGradedChar, XSeries};

/// Positive root `e_{i,j}` of `sl_N`, `1 <= i <= j <= N-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Self {
        debug_assert!(1 <= i && i <= j);
        Root { i, j }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e_{},{}", self.i, self.j)
    }
}

/// A PBW monomial `prod e_{i,j} t^s` applied to the highest weight vector,
/// stored as sorted exponent lists per root.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PBWMonomial {
    factors: Vec<(Root, Vec<u32>)>,
}

impl PBWMonomial {
    pub fn new(factors: impl IntoIterator<Item = (Root, Vec<u32>)>) -> Self {
        let mut merged: Vec<(Root, Vec<u32>)> = Vec::new();
        for (r, ts) in factors {
            if ts.is_empty() {
                continue;
            }
            match merged.iter_mut().find(|(s, _)| *s == r) {
                Some((_, v)) => v.extend(ts),
                None => merged.push((r, ts)),
            }
        }
        for (_, v) in &mut merged {
            v.sort_unstable();
        }
        merged.sort();
        PBWMonomial { factors: merged }
    }

    pub fn factors(&self) -> &[(Root, Vec<u32>)] {
        &self.factors
    }

    /// Sum of all `t`-exponents.
    pub fn energy(&self) -> u32 {
        self.factors.iter().flat_map(|(_, v)| v).sum()
    }

    /// Number of root vectors.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, v)| v.len() as u32).sum()
    }

    /// Weight of the vector obtained from the highest weight `base`.
    pub fn weight(&self, base: &[u32]) -> Option<Vec<u32>> {
        let mut w: Vec<i64> = base.iter().map(|&x| x as i64).collect();
        for (r, v) in &self.factors {
            let c = v.len() as i64;
            w[r.i - 1] += c;
            w[r.j] -= c;
        }
        w.into_iter().map(|x| u32::try_from(x).ok()).collect()
    }
}

impl fmt::Display for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (r, v) in &self.factors {
            for s in v {
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write!(f, "{r}t^{s}")?;
            }
        }
        Ok(())
    }
}

/// Highest weight `(0, m2^{N-2}, m1+m2)` of `W_{m1 w_1 + m2 w_{N-1}}`.
pub(crate) fn two_row_base(n: usize, m1: u32, m2: u32) -> Vec<u32> {
    let mut w = vec![m2; n];
    w[0] = 0;
    w[n - 1] = m1 + m2;
    w
}

/// Multisets of size `l` with entries in `0..=cap`, as sorted vectors.
fn multisets(l: u32, cap: i64, out: &mut Vec<Vec<u32>>) {
    fn go(l: u32, lo: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() as u32 == l {
            out.push(cur.clone());
            return;
        }
        for s in lo..=cap {
            cur.push(s);
            go(l, s, cap, cur, out);
            cur.pop();
        }
    }
    if l == 0 {
        out.push(Vec::new());
    } else if cap >= 0 {
        go(l, 0, cap as u32, &mut Vec::new(), out);
    }
}

/// All choices for a chain of roots sharing the budget `total`: each root
/// takes `l` vectors with exponents at most `total - cum - l`, where `cum`
/// is the number taken by the roots before it.
type Choice = Vec<(Root, Vec<u32>)>;

fn family(roots: &[Root], total: u32) -> Vec<(Choice, u32)> {
    fn go(roots: &[Root], total: u32, cum: u32, acc: &mut Choice, out: &mut Vec<(Choice, u32)>) {
        let Some((&root, rest)) = roots.split_first() else {
            out.push((acc.clone(), cum));
            return;
        };
        for l in 0..=total - cum {
            let mut sets = Vec::new();
            multisets(l, total as i64 - (cum + l) as i64, &mut sets);
            for ms in sets {
                acc.push((root, ms));
                go(rest, total, cum + l, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(roots, total, 0, &mut Vec::new(), &mut out);
    out
}

/// Monomial basis of `W_{m1 w_1 + m2 w_{N-1}}` for `sl_N[t]`.
///
/// Roots split into `e_{1,k}` (`k < N-1`, budget `m2`), `e_{k,N-1}`
/// (`k > 1`, budget `m1`), and `e_{1,N-1}` with whatever budget is left.
pub fn pbw_basis_two_row(n: usize, m1: u32, m2: u32) -> Vec<PBWMonomial> {
    assert!(n >= 2, "need at least two variables");
    let rank = n - 1;
    let first: Vec<Root> = (1..rank).map(|k| Root::new(1, k)).collect();
    let last: Vec<Root> = (2..=rank).rev().map(|k| Root::new(k, rank)).collect();
    let theta = Root::new(1, rank);
    let mut out = Vec::new();
    for (a, c1) in family(&first, m2) {
        for (b, c2) in family(&last, m1) {
            let rem = m1 + m2 - c1 - c2;
            for (t, _) in family(&[theta], rem) {
                out.push(PBWMonomial::new(a.iter().chain(&b).chain(&t).cloned()));
            }
        }
    }
    out
}

/// Tri-graded character `sum x^weight q^energy p^degree` over the basis.
pub fn pbw_character_two_row(n: usize, m1: u32, m2: u32) -> TriGradedChar {
    let base = two_row_base(n, m1, m2);
    let mut ch = TriGradedChar::new(n);
    for b in pbw_basis_two_row(n, m1, m2) {
        let w = b.weight(&base).expect("basis weights are nonnegative");
        ch.add(w, b.energy(), b.degree(), 1);
    }
    ch
}

/// Which grading [`pbw_character_closed`] produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    /// Energy grading only (`p = 1`).
    Km,
    /// Energy and PBW degree combined (`p = q`).
    Pbw,
}

fn compositions(total: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() + 1 == parts {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for x in 0..=total {
        cur.push(x);
        compositions(total - x, parts, cur, out);
        cur.pop();
    }
}

/// Closed product formula for the two-row character:
/// `sum_{l, p} q^{l_1 p_1} [m2; l]_q [m1; p]_q x^k`, `k_i = p_i + m2 - l_i`,
/// with the extra factor `q^{(m2 - l_1) + (m1 - p_N)}` for the PBW grading at `p = q`.
pub fn pbw_character_closed(n: usize, m1: u32, m2: u32, form: ClosedForm) -> XSeries<QPoly> {
    let mut ls = Vec::new();
    compositions(m2, n, &mut Vec::new(), &mut ls);
    let mut ps = Vec::new();
    compositions(m1, n, &mut Vec::new(), &mut ps);
    let mut out = XSeries::zero(n);
    for l in &ls {
        let ml = q_multinomial(m2, l).expect("parts sum to m2");
        for p in &ps {
            let mp = q_multinomial(m1, p).expect("parts sum to m1");
            let k: Vec<u32> = (0..n).map(|i| p[i] + m2 - l[i]).collect();
            let mut e = (l[0] * p[0]) as i64;
            if form == ClosedForm::Pbw {
                e += ((m2 - l[0]) + (m1 - p[n - 1])) as i64;
            }
            out.add_term(k, &(&ml * &mp).shift(e));
        }
    }
    out
}
