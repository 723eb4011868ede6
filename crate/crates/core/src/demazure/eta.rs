//! Energy-preserving bijection from pairs of strings to the two-row PBW
//! basis.

use std::fmt;

use super::pbw::{PBWMonomial, Root};
use super::DemazureError;

/// Strings `a` of length `m2` and `b` of length `m1` over `1..=N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StringPair {
    n: usize,
    a: Vec<u8>,
    b: Vec<u8>,
}

impl StringPair {
    pub fn new(n: usize, a: Vec<u8>, b: Vec<u8>) -> Result<Self, DemazureError> {
        if n < 2 {
            return Err(DemazureError::TooFewVariables(n));
        }
        if let Some(&value) = a.iter().chain(&b).find(|&&v| v == 0 || v as usize > n) {
            return Err(DemazureError::StringRange { value, n });
        }
        Ok(StringPair { n, a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[u8] {
        &self.a
    }

    pub fn b(&self) -> &[u8] {
        &self.b
    }
}

impl fmt::Display for StringPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &[u8]| {
            s.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "({};{})", join(&self.a), join(&self.b))
    }
}

/// Every pair with `|a| = m2`, `|b| = m1`, in lexicographic order.
pub fn all_string_pairs(n: usize, m1: u32, m2: u32) -> Vec<StringPair> {
    fn words(n: usize, len: u32) -> Vec<Vec<u8>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (1..=n as u8).map(move |v| {
                        let mut w = w.clone();
                        w.push(v);
                        w
                    })
                })
                .collect();
        }
        out
    }
    let bs = words(n, m1);
    words(n, m2)
        .into_iter()
        .flat_map(|a| {
            bs.iter().map(move |b| StringPair {
                n,
                a: a.clone(),
                b: b.clone(),
            })
        })
        .collect()
}

fn count_before(s: &[u8], i: usize, pred: impl Fn(u8) -> bool) -> u32 {
    s[..i].iter().filter(|&&v| pred(v)).count() as u32
}

/// The image of `(a, b)` in the basis of `W_{m1 w_1 + m2 w_{N-1}}`.
///
/// Letters `1` of `a` and `N` of `b` contribute nothing; every other letter
/// becomes one root vector whose `t`-exponent counts certain earlier letters.
pub fn eta_bijection(pair: &StringPair) -> PBWMonomial {
    let n = pair.n as u8;
    let rank = pair.n - 1;
    let (a, b) = (&pair.a, &pair.b);
    let ones_in_a = a.iter().filter(|&&v| v == 1).count() as u32;
    let mut factors = Vec::with_capacity(a.len() + b.len());
    for (i, &x) in a.iter().enumerate() {
        if x == n {
            factors.push((Root::new(1, rank), vec![count_before(a, i, |y| y == 1)]));
        } else if x != 1 {
            let e = count_before(a, i, |y| y > x || y == 1);
            factors.push((Root::new(1, x as usize - 1), vec![e]));
        }
    }
    for (i, &x) in b.iter().enumerate() {
        if x == 1 {
            let e = count_before(b, i, |y| y == n) + ones_in_a;
            factors.push((Root::new(1, rank), vec![e]));
        } else if x != n {
            let e = count_before(b, i, |y| y < x || y == n);
            factors.push((Root::new(x as usize, rank), vec![e]));
        }
    }
    PBWMonomial::new(factors)
}

/// Statistic on string pairs carried to the energy by [`eta_bijection`].
pub fn d_statistic(pair: &StringPair) -> u32 {
    let n = pair.n as u8;
    // order 1 < N < N-1 < ... < 2 on the letters of a
    let rank = |v: u8| match v {
        1 => 0,
        v if v == n => 1,
        v => n - v + 1,
    };
    let pairs = |s: &[u8], less: &dyn Fn(u8, u8) -> bool| {
        let mut c = 0;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if less(s[i], s[j]) {
                    c += 1;
                }
            }
        }
        c
    };
    let da = pairs(&pair.a, &|x, y| rank(x) < rank(y));
    let db = pairs(&pair.b, &|x, y| (x < y && y < n) || (x == n && y < n));
    let a1 = pair.a.iter().filter(|&&v| v == 1).count() as u32;
    let b1 = pair.b.iter().filter(|&&v| v == 1).count() as u32;
    da + db + a1 * b1
}
