//! Filling enumerators: all non-attacking fillings by pruned backtracking,
//! and the fillings surviving `t -> infinity` by direct construction.

use std::collections::BTreeSet;

use super::{Filling, HhlError};
use crate::diagram::{Cell, Composition};

/// Every non-attacking filling of `dg'(mu)`, each exactly once.
///
/// Cells are visited rows bottom-up and right to left inside a row, values
/// in increasing order; a partial filling is abandoned as soon as a newly
/// placed value repeats one in an attacking cell.
pub struct NonAttacking {
    n: usize,
    cells: Vec<Cell>,
    /// `grid[i-1][j]` is the value at `(i, j)`, 0 when unset.
    grid: Vec<Vec<u8>>,
    pos: usize,
    started: bool,
    done: bool,
}

impl NonAttacking {
    pub fn new(mu: &Composition) -> Self {
        let n = mu.n();
        let mut cells = Vec::with_capacity(mu.size() as usize);
        for row in 1..=mu.height() {
            for col in (1..=n).rev() {
                if mu.part(col) >= row {
                    cells.push(Cell::new(col, row));
                }
            }
        }
        let grid = (1..=n)
            .map(|c| {
                let mut v = vec![0u8; mu.part(c) as usize + 1];
                v[0] = c as u8;
                v
            })
            .collect();
        Self {
            n,
            cells,
            grid,
            pos: 0,
            started: false,
            done: false,
        }
    }

    fn allowed(&self, u: Cell, v: u8) -> bool {
        let j = u.row as usize;
        // same row: only cells to the right are placed already
        for c in u.col + 1..=self.n {
            if self.grid[c - 1].len() > j && self.grid[c - 1][j] == v {
                return false;
            }
        }
        // lower neighbours strictly to the right
        for c in u.col + 1..=self.n {
            if self.grid[c - 1].len() > j - 1 && self.grid[c - 1][j - 1] == v {
                return false;
            }
        }
        true
    }

    /// Moves to the next complete assignment at or after the current state.
    fn advance(&mut self) -> bool {
        loop {
            if self.pos == self.cells.len() {
                return true;
            }
            let u = self.cells[self.pos];
            let cur = self.grid[u.col - 1][u.row as usize];
            let next = (cur + 1..=self.n as u8).find(|&v| self.allowed(u, v));
            match next {
                Some(v) => {
                    self.grid[u.col - 1][u.row as usize] = v;
                    self.pos += 1;
                }
                None => {
                    self.grid[u.col - 1][u.row as usize] = 0;
                    if self.pos == 0 {
                        return false;
                    }
                    self.pos -= 1;
                }
            }
        }
    }

    fn snapshot(&self) -> Filling {
        Filling::from_columns_unchecked(self.grid.iter().map(|c| c[1..].to_vec()).collect())
    }
}

impl Iterator for NonAttacking {
    type Item = Filling;

    fn next(&mut self) -> Option<Filling> {
        if self.done {
            return None;
        }
        if self.started {
            if self.cells.is_empty() {
                self.done = true;
                return None;
            }
            self.pos = self.cells.len() - 1;
        }
        self.started = true;
        if self.advance() {
            Some(self.snapshot())
        } else {
            self.done = true;
            None
        }
    }
}

/// Orders the set `b` under the rightmost `|b|` entries of the reference row
/// `reference`, right to left: each entry takes the least remaining value
/// not below its reference value, or the least remaining value if none is.
pub fn arrange_by_rule(reference: &[u8], b: &BTreeSet<u8>) -> Result<Vec<u8>, HhlError> {
    if b.len() > reference.len() {
        return Err(HhlError::SetTooLarge {
            set: b.len(),
            reference: reference.len(),
        });
    }
    let mut rest = b.clone();
    let refs = &reference[reference.len() - b.len()..];
    let mut out = vec![0u8; b.len()];
    for (slot, &r) in refs.iter().enumerate().rev() {
        let v = rest
            .range(r..)
            .next()
            .or_else(|| rest.iter().next())
            .copied()
            .unwrap();
        rest.remove(&v);
        out[slot] = v;
    }
    Ok(out)
}

/// Next `k`-subset of `1..=n` in lexicographic order, in place.
pub(crate) fn next_subset(s: &mut [u8], n: u8) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - (k - 1 - i) as u8 {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub(crate) fn first_subset(k: usize) -> Vec<u8> {
    (1..=k as u8).collect()
}

/// The fillings of `mu = pi^r(lambda)`, `lambda` antidominant, that survive
/// the limit `t -> infinity` (zero `t`-degree).
///
/// Built in `lambda`'s coordinates: row 0 of `lambda` carries the values
/// forced by rotating back from `mu`, each further row picks a value set
/// and places it with [`arrange_by_rule`], and the result is carried to
/// `mu` by the cell map of `pi^r`. Every choice of row sets gives exactly
/// one filling.
pub struct AppropriateFillings {
    lambda: Composition,
    mu: Composition,
    r: usize,
    sets: Vec<Vec<u8>>,
    done: bool,
}

impl AppropriateFillings {
    pub fn new(mu: &Composition) -> Result<Self, HhlError> {
        let (lambda, r) = mu
            .as_scrolled_antidominant()
            .ok_or_else(|| HhlError::NotScrolledAntidominant(mu.clone()))?;
        let sets = (1..=lambda.height())
            .map(|j| first_subset(row_len(&lambda, j)))
            .collect();
        Ok(Self {
            lambda,
            mu: mu.clone(),
            r,
            sets,
            done: false,
        })
    }

    /// The antidominant `lambda` and rotation count `r` with `mu = pi^r(lambda)`.
    pub fn scroll(&self) -> (&Composition, usize) {
        (&self.lambda, self.r)
    }

    /// Number of fillings the iterator yields: the product of `C(N, k_j)`
    /// over the row lengths `k_j` of the antidominant `lambda`, not of `mu`.
    pub fn expected_len(&self) -> u128 {
        let n = self.lambda.n() as u128;
        (1..=self.lambda.height())
            .map(|j| binomial(n, row_len(&self.lambda, j) as u128))
            .product()
    }

    fn build(&self) -> Filling {
        let n = self.lambda.n();
        let r = self.r;
        let mut prev: Vec<u8> = (1..=n)
            .map(|c| if c + r <= n { c + r } else { c + r - n } as u8)
            .collect();
        let mut cols: Vec<Vec<u8>> = (1..=n).map(|c| vec![0; self.mu.part(c) as usize]).collect();
        let mut place = |u: Cell, v: u8| {
            let w = (0..r).fold(u, |c, _| self.lambda.pi_cell(c));
            if w.row >= 1 {
                cols[w.col - 1][w.row as usize - 1] = v;
            }
        };
        for (c, &v) in prev.iter().enumerate() {
            place(Cell::new(c + 1, 0), v);
        }
        for (j, set) in self.sets.iter().enumerate() {
            let b: BTreeSet<u8> = set.iter().copied().collect();
            let row = arrange_by_rule(&prev, &b).expect("row lengths are weakly decreasing");
            let first_col = n - row.len() + 1;
            for (i, &v) in row.iter().enumerate() {
                place(Cell::new(first_col + i, j as u32 + 1), v);
            }
            prev = row;
        }
        Filling::from_columns_unchecked(cols)
    }
}

impl Iterator for AppropriateFillings {
    type Item = Filling;

    fn next(&mut self) -> Option<Filling> {
        if self.done {
            return None;
        }
        let out = self.build();
        let n = self.lambda.n() as u8;
        // odometer with the top row as the fastest digit
        let mut advanced = false;
        for set in self.sets.iter_mut().rev() {
            if next_subset(set, n) {
                advanced = true;
                break;
            }
            let k = set.len();
            *set = first_subset(k);
        }
        if !advanced {
            self.done = true;
        }
        Some(out)
    }
}

/// Number of columns of height at least `j`.
pub(crate) fn row_len(c: &Composition, j: u32) -> usize {
    c.parts().iter().filter(|&&p| p >= j).count()
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::attacks;
    use crate::hhl::Shape;

    fn comp(p: &[u32]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    /// Brute force over all value assignments, keeping the non-attacking ones.
    fn brute_force(mu: &Composition) -> BTreeSet<Filling> {
        let cells = mu.cells();
        let n = mu.n() as u8;
        let aug = mu.augmented_cells();
        let mut out = BTreeSet::new();
        let total = (n as usize).pow(cells.len() as u32);
        for mut code in 0..total {
            let mut cols: Vec<Vec<u8>> =
                (1..=mu.n()).map(|c| vec![0; mu.part(c) as usize]).collect();
            for u in &cells {
                cols[u.col - 1][u.row as usize - 1] = (code % n as usize) as u8 + 1;
                code /= n as usize;
            }
            let f = Filling::from_columns(mu, cols).unwrap();
            let ok = aug.iter().all(|&u| {
                aug.iter()
                    .all(|&v| !(attacks(u, v) && f.value(u) == f.value(v)))
            });
            if ok {
                out.insert(f);
            }
        }
        out
    }

    fn filter_oracle(mu: &Composition) -> BTreeSet<Filling> {
        let shape = Shape::new(mu);
        brute_force(mu)
            .into_iter()
            .filter(|f| shape.stats(f).t_degree == 0)
            .collect()
    }

    fn compositions(n: usize, max_size: u32) -> Vec<Composition> {
        let mut out = vec![];
        let mut parts = vec![0u32; n];
        loop {
            if parts.iter().sum::<u32>() <= max_size {
                out.push(comp(&parts));
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                parts[i] += 1;
                if parts[i] <= max_size {
                    break;
                }
                parts[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn small_examples() {
        assert_eq!(NonAttacking::new(&comp(&[0, 0, 0])).count(), 1);
        let f: Vec<_> = NonAttacking::new(&comp(&[1, 0])).collect();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].value(Cell::new(1, 1)), 1);
        assert_eq!(NonAttacking::new(&comp(&[0, 1])).count(), 2);
    }

    #[test]
    fn backtracking_matches_brute_force() {
        for n in 2..=3 {
            for mu in compositions(n, 4) {
                let fast: BTreeSet<_> = NonAttacking::new(&mu).collect();
                assert_eq!(fast, brute_force(&mu), "mu = {mu}");
            }
        }
    }

    #[test]
    fn arrangement_rule() {
        let set = |v: &[u8]| v.iter().copied().collect::<BTreeSet<u8>>();
        assert_eq!(arrange_by_rule(&[2, 1], &set(&[3])).unwrap(), vec![3]);
        assert_eq!(
            arrange_by_rule(&[1, 2, 3], &set(&[1, 2, 3])).unwrap(),
            vec![1, 2, 3]
        );
        assert_eq!(arrange_by_rule(&[3, 1], &set(&[1, 2])).unwrap(), vec![2, 1]);
        assert!(arrange_by_rule(&[1], &set(&[1, 2])).is_err());
        let a = arrange_by_rule(&[2, 4, 1], &set(&[1, 3, 4])).unwrap();
        let again = arrange_by_rule(&[2, 4, 1], &a.iter().copied().collect()).unwrap();
        assert_eq!(a, again);
    }

    #[test]
    fn constructive_matches_filter() {
        for n in 2..=3 {
            for lambda in compositions(n, 4)
                .into_iter()
                .filter(|c| c.is_antidominant())
            {
                for r in 0..n {
                    let mu = lambda.pi_pow(r);
                    let it = AppropriateFillings::new(&mu).unwrap();
                    let expected = it.expected_len();
                    let built: Vec<Filling> = it.collect();
                    let set: BTreeSet<Filling> = built.iter().cloned().collect();
                    assert_eq!(set.len(), built.len(), "duplicates for {mu}");
                    assert_eq!(set, filter_oracle(&mu), "lambda = {lambda}, r = {r}");
                    assert_eq!(built.len() as u128, expected);
                }
            }
        }
    }

    #[test]
    fn one_filling_per_row_sets() {
        let mu = comp(&[0, 1, 2, 2]);
        let mut seen = BTreeSet::new();
        let expected = AppropriateFillings::new(&mu).unwrap().expected_len();
        for f in AppropriateFillings::new(&mu).unwrap() {
            let rows: Vec<BTreeSet<u8>> = (1..=mu.height())
                .map(|j| f.row(j).into_iter().map(|(_, v)| v).collect())
                .collect();
            assert!(seen.insert(rows));
        }
        assert_eq!(seen.len() as u128, expected);
    }

    #[test]
    fn rejects_unscrollable() {
        assert!(AppropriateFillings::new(&comp(&[1, 0, 1])).is_err());
        assert_eq!(AppropriateFillings::new(&comp(&[0, 0])).unwrap().count(), 1);
        assert_eq!(AppropriateFillings::new(&comp(&[0, 1])).unwrap().count(), 2);
    }
}
