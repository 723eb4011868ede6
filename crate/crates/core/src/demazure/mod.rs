//! Characters of level-one Demazure (Weyl) modules of `sl_N[t]`.
//!
//! Conventions: `N` variables `x_1..x_N`, fundamental weights `w_1..w_{N-1}`,
//! positive roots `e_{i,j}` with `1 <= i <= j <= N-1` acting on weights by
//! `x_i / x_{j+1}`. A weight `lambda` is represented by the antidominant
//! composition of its dual, e.g. `m w_r -> (0^{N-r}, m^r)`.

mod eta;
mod pbw;

pub use eta::{all_string_pairs, d_statistic, eta_bijection, StringPair};
pub use pbw::{
    pbw_basis_two_row, pbw_character_closed, pbw_character_two_row, ClosedForm, PBWMonomial, Root,
};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::arith::QPoly;
use crate::diagram::{Composition, DiagramError, DominantWeight};
use crate::hhl::{specialize_t0, HhlError};
use crate::series::{TriGradedChar, XSeries};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DemazureError {
    #[error("parts {parts:?} do not sum to {m}")]
    PartsSum { m: u32, parts: Vec<u32> },
    #[error("({0}) is not antidominant")]
    NotAntidominant(Composition),
    #[error("rank index r = {r} outside 1..={max}")]
    RankRange { r: usize, max: usize },
    #[error("need at least two variables, got {0}")]
    TooFewVariables(usize),
    #[error("PBW character of {0} is only known for m*w_r and m1*w_1 + m2*w_(N-1)")]
    UnsupportedShape(String),
    #[error("string entry {value} outside 1..={n}")]
    StringRange { value: u8, n: usize },
    #[error("character coefficient is not a nonnegative integer")]
    NonIntegralCharacter,
    #[error(transparent)]
    Hhl(#[from] HhlError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Gaussian binomial `[n choose k]_q`.
pub fn q_binomial(n: u32, k: u32) -> QPoly {
    if k > n {
        return QPoly::zero();
    }
    // Pascal: [n,k] = [n-1,k-1] + q^k [n-1,k]
    let mut row = vec![QPoly::one()];
    for i in 1..=n {
        let mut next = Vec::with_capacity(i as usize + 1);
        for j in 0..=i {
            let left = if j > 0 {
                row[j as usize - 1].clone()
            } else {
                QPoly::zero()
            };
            let up = if j < i {
                row[j as usize].shift(j as i64)
            } else {
                QPoly::zero()
            };
            next.push(&left + &up);
        }
        row = next;
    }
    row[k as usize].clone()
}

/// Gaussian multinomial `[m; p_1, ..., p_k]_q` as a product of binomials.
pub fn q_multinomial(m: u32, parts: &[u32]) -> Result<QPoly, DemazureError> {
    if parts.iter().sum::<u32>() != m {
        return Err(DemazureError::PartsSum {
            m,
            parts: parts.to_vec(),
        });
    }
    let mut acc = QPoly::one();
    let mut total = 0;
    for &p in parts {
        total += p;
        acc = &acc * &q_binomial(total, p);
    }
    Ok(acc)
}

/// Gaussian multinomial as the inversion generating function over words
/// with `p_i` letters `i`.
pub fn q_multinomial_by_statistic(m: u32, parts: &[u32]) -> Result<QPoly, DemazureError> {
    if parts.iter().sum::<u32>() != m {
        return Err(DemazureError::PartsSum {
            m,
            parts: parts.to_vec(),
        });
    }
    fn go(left: &mut [u32], word: &mut Vec<usize>, out: &mut QPoly) {
        if left.iter().all(|&p| p == 0) {
            let mut inv = 0;
            for i in 0..word.len() {
                for j in i + 1..word.len() {
                    if word[i] > word[j] {
                        inv += 1;
                    }
                }
            }
            *out += &QPoly::q_pow(inv);
            return;
        }
        for letter in 0..left.len() {
            if left[letter] > 0 {
                left[letter] -= 1;
                word.push(letter);
                go(left, word, out);
                word.pop();
                left[letter] += 1;
            }
        }
    }
    let mut out = QPoly::zero();
    go(&mut parts.to_vec(), &mut Vec::new(), &mut out);
    Ok(out)
}

/// `dim W_lambda = prod_i C(N, i)^{m_i}`.
pub fn weyl_module_dim(w: &DominantWeight) -> BigUint {
    let n = w.n() as u64;
    let mut acc = BigUint::one();
    for (i, &m) in w.mults().iter().enumerate() {
        let k = i as u64 + 1;
        let c = (0..k).fold(BigUint::one(), |a, j| a * (n - j) / (j + 1));
        acc *= c.pow(m);
    }
    acc
}

/// Kac–Moody (energy-graded) character of `W_lambda`, `lambda` antidominant:
/// `E_lambda(x; q, 0)`.
pub fn km_character(lambda: &Composition) -> Result<XSeries<QPoly>, DemazureError> {
    if !lambda.is_antidominant() {
        return Err(DemazureError::NotAntidominant(lambda.clone()));
    }
    Ok(specialize_t0(lambda)?)
}

/// PBW character of `W_lambda` for `lambda^* = m w_r`: the Kac–Moody
/// character with `x_i -> p x_i` for `i <= N - r`.
pub fn pbw_character_rectangular(
    n: usize,
    r: usize,
    m: u32,
) -> Result<TriGradedChar, DemazureError> {
    if n < 2 {
        return Err(DemazureError::TooFewVariables(n));
    }
    if r == 0 || r >= n {
        return Err(DemazureError::RankRange { r, max: n - 1 });
    }
    let lambda = DominantWeight::fundamental_multiple(n, r, m)?.to_composition(true);
    let km = km_character(&lambda)?;
    let mut out = TriGradedChar::new(n);
    for (k, c) in km.terms() {
        let p: u32 = k[..n - r].iter().sum();
        for (e, coeff) in c.terms() {
            let coeff = coeff
                .to_integer()
                .to_u64()
                .filter(|_| coeff.is_integer() && e >= 0)
                .ok_or(DemazureError::NonIntegralCharacter)?;
            out.add(k.clone(), e as u32, p, coeff);
        }
    }
    Ok(out)
}

/// The tri-graded PBW character for the two families where it is known;
/// `m w_r` is served by the rectangular rule, `m1 w_1 + m2 w_{N-1}` by the
/// explicit basis.
pub fn pbw_character(w: &DominantWeight) -> Result<TriGradedChar, DemazureError> {
    let n = w.n();
    if w.is_zero() {
        return pbw_character_rectangular(n, 1, 0);
    }
    if let Some((r, m)) = w.as_fundamental_multiple() {
        return pbw_character_rectangular(n, r, m);
    }
    if let Some((m1, m2)) = w.as_first_last() {
        return Ok(pbw_character_two_row(n, m1, m2));
    }
    Err(DemazureError::UnsupportedShape(w.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rat;

    fn comp(p: &[u32]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(
            q_multinomial(2, &[1, 1]).unwrap(),
            QPoly::from_coeffs(&[1, 1])
        );
        assert_eq!(q_multinomial(3, &[3, 0, 0]).unwrap(), QPoly::one());
        assert_eq!(
            q_multinomial(3, &[2, 1]).unwrap(),
            QPoly::from_coeffs(&[1, 1, 1])
        );
        assert!(q_multinomial(3, &[1, 1]).is_err());
    }

    #[test]
    fn multinomial_methods_agree() {
        for parts in [
            vec![1, 2, 1],
            vec![2, 2],
            vec![0, 3, 1],
            vec![1, 1, 1, 1],
            vec![],
        ] {
            let m = parts.iter().sum();
            assert_eq!(
                q_multinomial(m, &parts).unwrap(),
                q_multinomial_by_statistic(m, &parts).unwrap()
            );
        }
    }

    #[test]
    fn dimensions() {
        let w = DominantWeight::parse(3, "1w1+1w2").unwrap();
        assert_eq!(weyl_module_dim(&w), BigUint::from(9u32));
        let w = DominantWeight::parse(4, "2w2").unwrap();
        assert_eq!(weyl_module_dim(&w), BigUint::from(36u32));
        assert_eq!(
            weyl_module_dim(&DominantWeight::zero(5).unwrap()),
            BigUint::one()
        );
    }

    #[test]
    fn km_examples() {
        let c = km_character(&comp(&[0, 1])).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.coeff(&[1, 0]), QPoly::one());
        assert_eq!(c.coeff(&[0, 1]), QPoly::one());
        let z = km_character(&comp(&[0, 0, 0])).unwrap();
        assert_eq!(z.coeff(&[0, 0, 0]), QPoly::one());
        assert!(km_character(&comp(&[1, 0])).is_err());
        let w = DominantWeight::parse(3, "1w1+1w2").unwrap();
        let c = km_character(&w.to_composition(true)).unwrap();
        assert_eq!(c.eval_at_one(), Rat::from_integer(9.into()));
    }

    #[test]
    fn rectangular_examples() {
        let c = pbw_character_rectangular(3, 2, 0).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.dimension(), 1);
        let c = pbw_character_rectangular(2, 1, 1).unwrap();
        let terms: Vec<_> = c.terms().map(|(k, v)| (k.x.clone(), k.q, k.p, v)).collect();
        assert_eq!(terms, vec![(vec![0, 1], 0, 0, 1), (vec![1, 0], 0, 1, 1)]);
        assert_eq!(pbw_character_rectangular(4, 2, 2).unwrap().dimension(), 36);
        assert!(pbw_character_rectangular(3, 3, 1).is_err());
        assert!(pbw_character_rectangular(3, 0, 1).is_err());
    }

    #[test]
    fn dispatch() {
        let w = DominantWeight::parse(4, "1w2+1w3").unwrap();
        assert!(matches!(
            pbw_character(&w),
            Err(DemazureError::UnsupportedShape(_))
        ));
        let w = DominantWeight::parse(3, "1w1+1w2").unwrap();
        assert_eq!(pbw_character(&w).unwrap().dimension(), 9);
        let w = DominantWeight::parse(3, "0").unwrap();
        assert_eq!(pbw_character(&w).unwrap().dimension(), 1);
    }

    #[test]
    fn families_agree_on_their_overlap() {
        // m w_1 and m w_{N-1} belong to both families
        for n in 2..=4 {
            for m in 0..=3 {
                let rect_first = pbw_character_rectangular(n, 1, m).unwrap();
                assert_eq!(
                    rect_first,
                    pbw_character_two_row(n, m, 0),
                    "N={n} m={m} w_1"
                );
                if n > 2 {
                    let rect_last = pbw_character_rectangular(n, n - 1, m).unwrap();
                    assert_eq!(
                        rect_last,
                        pbw_character_two_row(n, 0, m),
                        "N={n} m={m} w_(N-1)"
                    );
                }
            }
        }
    }
}
