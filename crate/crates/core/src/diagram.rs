//! Compositions, their column diagrams and the combinatorics on cells.
//!
//! Columns are numbered `1..=N` from the left and rows `0, 1, ...` from the
//! bottom. Row 0 is the augmented row: every column owns a cell `(i, 0)`
//! whose filling value is fixed to `i`.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("a composition needs at least two parts, got {0}")]
    TooShort(usize),
    #[error("cell {0} is not in the diagram")]
    CellOutside(Cell),
    #[error("cannot parse composition {0:?}")]
    BadComposition(String),
    #[error("cannot parse weight {0:?}")]
    BadWeight(String),
    #[error("fundamental weight index {index} out of range 1..={max}")]
    WeightIndex { index: usize, max: usize },
    #[error("{0} is not the diagram of a dominant weight")]
    NotAWeightDiagram(Composition),
}

/// A cell `(col, row)` of the augmented diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub col: usize,
    pub row: u32,
}

impl Cell {
    pub const fn new(col: usize, row: u32) -> Self {
        Self { col, row }
    }

    /// The cell directly below; defined for every cell above row 0.
    pub fn below(self) -> Cell {
        Cell::new(self.col, self.row - 1)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

/// Attacking relation on cells: same row, or consecutive rows with the
/// lower cell strictly to the right.
pub fn attacks(u: Cell, v: Cell) -> bool {
    if u.row == v.row {
        u.col != v.col
    } else if u.row == v.row + 1 {
        u.col < v.col
    } else if v.row == u.row + 1 {
        v.col < u.col
    } else {
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self, DiagramError> {
        if parts.len() < 2 {
            return Err(DiagramError::TooShort(parts.len()));
        }
        Ok(Self { parts })
    }

    pub fn zero(n: usize) -> Result<Self, DiagramError> {
        Self::new(vec![0; n])
    }

    /// Number of columns, i.e. the number of `x` variables.
    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Height of column `i` (1-based).
    pub fn part(&self, i: usize) -> u32 {
        self.parts[i - 1]
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn height(&self) -> u32 {
        self.parts.iter().copied().max().unwrap_or(0)
    }

    /// Weakly increasing parts.
    pub fn is_antidominant(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] <= w[1])
    }

    /// Number of nonzero parts.
    pub fn nonzero_parts(&self) -> usize {
        self.parts.iter().filter(|&&p| p > 0).count()
    }

    /// Membership in `dg'`, the diagram without row 0.
    pub fn contains(&self, u: Cell) -> bool {
        (1..=self.n()).contains(&u.col) && u.row >= 1 && u.row <= self.part(u.col)
    }

    /// Membership in the augmented diagram.
    pub fn contains_augmented(&self, u: Cell) -> bool {
        (1..=self.n()).contains(&u.col) && u.row <= self.part(u.col)
    }

    /// Cells of `dg'`, rows bottom-up and columns left to right.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.size() as usize);
        for row in 1..=self.height() {
            for col in 1..=self.n() {
                if self.part(col) >= row {
                    out.push(Cell::new(col, row));
                }
            }
        }
        out
    }

    /// Row 0 followed by [`Self::cells`].
    pub fn augmented_cells(&self) -> Vec<Cell> {
        let mut out: Vec<Cell> = (1..=self.n()).map(|c| Cell::new(c, 0)).collect();
        out.extend(self.cells());
        out
    }

    fn check(&self, u: Cell) -> Result<(), DiagramError> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(DiagramError::CellOutside(u))
        }
    }

    pub fn leg_length(&self, u: Cell) -> Result<u32, DiagramError> {
        self.check(u)?;
        Ok(self.part(u.col) - u.row)
    }

    /// `arm(u)`: cells `(i', j)` of `dg'` left of `u` in columns no taller,
    /// together with cells `(i', j-1)` of the augmented diagram right of `u`
    /// in strictly shorter columns.
    pub fn arm(&self, u: Cell) -> Result<Vec<Cell>, DiagramError> {
        self.check(u)?;
        let h = self.part(u.col);
        let mut out = Vec::new();
        for c in 1..u.col {
            if self.part(c) <= h && self.part(c) >= u.row {
                out.push(Cell::new(c, u.row));
            }
        }
        for c in u.col + 1..=self.n() {
            if self.part(c) < h && self.part(c) + 1 >= u.row {
                out.push(Cell::new(c, u.row - 1));
            }
        }
        Ok(out)
    }

    /// `|arm(u)|` for a cell known to be in `dg'`.
    pub(crate) fn arm_size(&self, u: Cell) -> u32 {
        let h = self.part(u.col);
        let left = (1..u.col)
            .filter(|&c| self.part(c) <= h && self.part(c) >= u.row)
            .count();
        let right = (u.col + 1..=self.n())
            .filter(|&c| self.part(c) < h && self.part(c) + 1 >= u.row)
            .count();
        (left + right) as u32
    }

    /// All unordered attacking pairs of augmented-diagram cells.
    pub fn attacking_pairs(&self) -> Vec<(Cell, Cell)> {
        let cells = self.augmented_cells();
        let mut out = Vec::new();
        for (i, &u) in cells.iter().enumerate() {
            for &v in &cells[i + 1..] {
                if attacks(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// `pi(l_1, ..., l_N) = (l_N + 1, l_1, ..., l_{N-1})`.
    pub fn pi(&self) -> Composition {
        let n = self.n();
        let mut parts = Vec::with_capacity(n);
        parts.push(self.parts[n - 1] + 1);
        parts.extend_from_slice(&self.parts[..n - 1]);
        Composition { parts }
    }

    pub fn pi_pow(&self, r: usize) -> Composition {
        (0..r).fold(self.clone(), |c, _| c.pi())
    }

    /// Inverse of [`Self::pi`], when the first part is positive.
    pub fn pi_inverse(&self) -> Option<Composition> {
        let first = self.parts[0].checked_sub(1)?;
        let mut parts = self.parts[1..].to_vec();
        parts.push(first);
        Some(Composition { parts })
    }

    /// The cell map matching [`Self::pi`]: `(i, j) -> (i+1, j)` for `i < N`
    /// and `(N, j) -> (1, j+1)`.
    pub fn pi_cell(&self, u: Cell) -> Cell {
        if u.col == self.n() {
            Cell::new(1, u.row + 1)
        } else {
            Cell::new(u.col + 1, u.row)
        }
    }

    /// Writes `self = pi^r(lambda)` with `lambda` antidominant and the least
    /// such `r < N`, if possible.
    pub fn as_scrolled_antidominant(&self) -> Option<(Composition, usize)> {
        let mut cur = self.clone();
        for r in 0..self.n() {
            if cur.is_antidominant() {
                return Some((cur, r));
            }
            cur = cur.pi_inverse()?;
        }
        None
    }

    pub fn reversed(&self) -> Composition {
        let mut parts = self.parts.clone();
        parts.reverse();
        Composition { parts }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Parses comma-separated parts, e.g. `0,1,2`.
impl FromStr for Composition {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DiagramError::BadComposition(s.to_string());
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Composition::new(parts)
    }
}

/// A dominant weight `m_1 w_1 + ... + m_{N-1} w_{N-1}` of `sl_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DominantWeight {
    mults: Vec<u32>,
}

impl DominantWeight {
    /// `mults[i-1]` is the coefficient of the `i`-th fundamental weight.
    pub fn new(n: usize, mults: Vec<u32>) -> Result<Self, DiagramError> {
        if n < 2 {
            return Err(DiagramError::TooShort(n));
        }
        if mults.len() != n - 1 {
            return Err(DiagramError::WeightIndex {
                index: mults.len(),
                max: n - 1,
            });
        }
        Ok(Self { mults })
    }

    pub fn zero(n: usize) -> Result<Self, DiagramError> {
        Self::new(n, vec![0; n.saturating_sub(1)])
    }

    /// `m * w_r`.
    pub fn fundamental_multiple(n: usize, r: usize, m: u32) -> Result<Self, DiagramError> {
        let mut w = Self::zero(n)?;
        if r == 0 || r >= n {
            return Err(DiagramError::WeightIndex {
                index: r,
                max: n - 1,
            });
        }
        w.mults[r - 1] = m;
        Ok(w)
    }

    /// Parses `m1w1+m2w2+...`; a missing multiplier means 1 and repeated
    /// indices add up. `0` denotes the zero weight.
    pub fn parse(n: usize, s: &str) -> Result<Self, DiagramError> {
        let mut w = Self::zero(n)?;
        let bad = || DiagramError::BadWeight(s.to_string());
        let s = s.trim();
        if s == "0" {
            return Ok(w);
        }
        for term in s.split('+') {
            let term = term.trim();
            let (m, i) = term.split_once('w').ok_or_else(bad)?;
            let m: u32 = if m.is_empty() {
                1
            } else {
                m.parse().map_err(|_| bad())?
            };
            let i: usize = i.parse().map_err(|_| bad())?;
            if i == 0 || i >= n {
                return Err(DiagramError::WeightIndex {
                    index: i,
                    max: n - 1,
                });
            }
            w.mults[i - 1] += m;
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.mults.len() + 1
    }

    pub fn mults(&self) -> &[u32] {
        &self.mults
    }

    pub fn is_zero(&self) -> bool {
        self.mults.iter().all(|&m| m == 0)
    }

    /// Indices `i` with `m_i > 0`.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.mults.len())
            .filter(|&i| self.mults[i - 1] > 0)
            .collect()
    }

    /// `Some((r, m))` when the weight is `m * w_r` with `m > 0`.
    pub fn as_fundamental_multiple(&self) -> Option<(usize, u32)> {
        match self.support()[..] {
            [r] => Some((r, self.mults[r - 1])),
            _ => None,
        }
    }

    /// `Some((m1, m2))` when the weight is `m1 w_1 + m2 w_{N-1}`.
    pub fn as_first_last(&self) -> Option<(u32, u32)> {
        let n = self.n();
        if self.support().iter().all(|&i| i == 1 || i == n - 1) {
            let m1 = self.mults[0];
            let m2 = if n > 2 { self.mults[n - 2] } else { 0 };
            Some((m1, m2))
        } else {
            None
        }
    }

    /// Partition `l_i = m_i + ... + m_{N-1}`, `l_N = 0`; reversed into an
    /// antidominant composition when `dualize` is set.
    pub fn to_composition(&self, dualize: bool) -> Composition {
        let n = self.n();
        let mut parts = vec![0u32; n];
        for i in (0..n - 1).rev() {
            parts[i] = parts[i + 1] + self.mults[i];
        }
        if dualize {
            parts.reverse();
        }
        Composition { parts }
    }

    /// Inverse of [`Self::to_composition`].
    pub fn from_composition(c: &Composition, dualize: bool) -> Result<Self, DiagramError> {
        let c = if dualize { c.reversed() } else { c.clone() };
        let p = c.parts();
        let n = p.len();
        if p[n - 1] != 0 || p.windows(2).any(|w| w[0] < w[1]) {
            let shown = if dualize { c.reversed() } else { c.clone() };
            return Err(DiagramError::NotAWeightDiagram(shown));
        }
        Self::new(n, (0..n - 1).map(|i| p[i] - p[i + 1]).collect())
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .support()
            .into_iter()
            .map(|i| format!("{}w{}", self.mults[i - 1], i))
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn comp(p: &[u32]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    /// Independent arm oracle: scans every cell of the augmented diagram.
    fn arm_oracle(l: &Composition, u: Cell) -> BTreeSet<Cell> {
        let h = l.part(u.col);
        l.augmented_cells()
            .into_iter()
            .filter(|v| {
                let left = v.row == u.row && v.row >= 1 && v.col < u.col && l.part(v.col) <= h;
                let right = v.row + 1 == u.row && v.col > u.col && l.part(v.col) < h;
                left || right
            })
            .collect()
    }

    #[test]
    fn leg_examples() {
        assert_eq!(comp(&[3, 1, 0, 2, 0, 4]).leg_length(Cell::new(1, 1)), Ok(2));
        assert_eq!(comp(&[0, 1]).leg_length(Cell::new(2, 1)), Ok(0));
        assert_eq!(comp(&[0, 0, 3]).leg_length(Cell::new(3, 1)), Ok(2));
        assert!(comp(&[0, 1]).leg_length(Cell::new(1, 1)).is_err());
    }

    #[test]
    fn arm_examples() {
        let set = |v: Vec<Cell>| v.into_iter().collect::<BTreeSet<_>>();
        assert_eq!(
            set(comp(&[0, 0, 2, 2]).arm(Cell::new(4, 1)).unwrap()),
            set(vec![Cell::new(3, 1)])
        );
        assert!(comp(&[0, 1]).arm(Cell::new(2, 1)).unwrap().is_empty());
        let l = comp(&[3, 1, 0, 2, 0, 4]);
        let u = Cell::new(6, 2);
        let got = set(l.arm(u).unwrap());
        assert_eq!(got, set(vec![Cell::new(1, 2), Cell::new(4, 2)]));
        assert_eq!(got, arm_oracle(&l, u));
        // the right arm reaches into row 0
        assert_eq!(
            comp(&[1, 0]).arm(Cell::new(1, 1)).unwrap(),
            vec![Cell::new(2, 0)]
        );
    }

    #[test]
    fn attacking_examples() {
        let pairs = comp(&[0, 1]).attacking_pairs();
        assert_eq!(pairs, vec![(Cell::new(1, 0), Cell::new(2, 0))]);
        assert!(attacks(Cell::new(1, 1), Cell::new(2, 1)));
        assert_eq!(comp(&[0, 0, 0, 0]).attacking_pairs().len(), 6);
        assert!(attacks(Cell::new(1, 1), Cell::new(2, 0)));
    }

    #[test]
    fn pi_examples() {
        assert_eq!(comp(&[0, 0, 2]).pi(), comp(&[3, 0, 0]));
        assert_eq!(comp(&[0, 1]).pi_pow(2), comp(&[1, 2]));
        assert_eq!(
            comp(&[3, 0, 0]).as_scrolled_antidominant(),
            Some((comp(&[0, 0, 2]), 1))
        );
        assert_eq!(comp(&[1, 0, 1]).as_scrolled_antidominant(), None);
    }

    #[test]
    fn weight_examples() {
        let w = DominantWeight::parse(4, "3w2").unwrap();
        assert_eq!(w.to_composition(true), comp(&[0, 0, 3, 3]));
        let w = DominantWeight::parse(3, "1w1+1w2").unwrap();
        assert_eq!(w.to_composition(true), comp(&[0, 1, 2]));
        assert_eq!(
            DominantWeight::zero(3).unwrap().to_composition(true),
            comp(&[0, 0, 0])
        );
        assert_eq!(
            DominantWeight::parse(3, "1w1+1w1").unwrap().mults(),
            &[2, 0]
        );
        assert_eq!(DominantWeight::parse(3, "w2").unwrap().mults(), &[0, 1]);
        assert!(DominantWeight::parse(3, "1w3").is_err());
        assert!(DominantWeight::parse(3, "1x1").is_err());
        assert_eq!(
            DominantWeight::parse(4, "2w1+1w3").unwrap().as_first_last(),
            Some((2, 1))
        );
        assert_eq!(
            DominantWeight::parse(4, "1w2").unwrap().as_first_last(),
            None
        );
    }

    #[test]
    fn parse_composition() {
        assert_eq!("0, 1,2".parse::<Composition>().unwrap(), comp(&[0, 1, 2]));
        assert!("3".parse::<Composition>().is_err());
        assert!("1,a".parse::<Composition>().is_err());
    }

    fn any_comp() -> impl Strategy<Value = Composition> {
        prop::collection::vec(0u32..4, 2..6).prop_map(|p| Composition::new(p).unwrap())
    }

    proptest! {
        #[test]
        fn pi_properties(l in any_comp()) {
            let n = l.n();
            prop_assert_eq!(l.pi().size(), l.size() + 1);
            prop_assert_eq!(l.pi().pi_inverse(), Some(l.clone()));
            let shifted: Vec<u32> = l.parts().iter().map(|p| p + 1).collect();
            prop_assert_eq!(l.pi_pow(n), Composition::new(shifted).unwrap());
        }

        #[test]
        fn pi_preserves_arms_and_legs(l in any_comp()) {
            let m = l.pi();
            for u in l.cells() {
                let v = l.pi_cell(u);
                prop_assert!(m.contains(v));
                prop_assert_eq!(l.leg_length(u).unwrap(), m.leg_length(v).unwrap());
                prop_assert_eq!(l.arm(u).unwrap().len(), m.arm(v).unwrap().len());
            }
        }

        #[test]
        fn arm_matches_oracle(l in any_comp()) {
            for u in l.cells() {
                let arm: BTreeSet<Cell> = l.arm(u).unwrap().into_iter().collect();
                prop_assert_eq!(&arm, &arm_oracle(&l, u));
                prop_assert_eq!(arm.len() as u32, l.arm_size(u));
            }
        }

        #[test]
        fn antidominant_arm_is_left_arm(mut p in prop::collection::vec(0u32..4, 2..6)) {
            p.sort();
            let l = Composition::new(p).unwrap();
            for u in l.cells() {
                let expected = (1..u.col).filter(|&c| l.part(c) >= u.row).count();
                prop_assert_eq!(l.arm(u).unwrap().len(), expected);
            }
        }

        #[test]
        fn attacking_is_symmetric_irreflexive(l in any_comp()) {
            let cells = l.augmented_cells();
            prop_assert_eq!(cells.len() as u32, l.size() + l.n() as u32);
            prop_assert_eq!(l.cells().len() as u32, l.size());
            for &u in &cells {
                prop_assert!(!attacks(u, u));
                for &v in &cells {
                    prop_assert_eq!(attacks(u, v), attacks(v, u));
                }
            }
        }

        #[test]
        fn weight_round_trip(n in 2usize..6, seed in prop::collection::vec(0u32..4, 5)) {
            let w = DominantWeight::new(n, seed[..n - 1].to_vec()).unwrap();
            for dual in [false, true] {
                let c = w.to_composition(dual);
                prop_assert_eq!(DominantWeight::from_composition(&c, dual).unwrap(), w.clone());
            }
            prop_assert!(w.to_composition(true).is_antidominant());
            let parsed = DominantWeight::parse(n, &w.to_string()).unwrap();
            prop_assert_eq!(parsed, w);
        }
    }
}
