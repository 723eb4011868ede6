use std::fmt;

use crate::diagram::{Cell, Composition};

/// Values `1..=N` on the cells of `dg'(mu)`; row 0 implicitly holds `i` in
/// column `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filling {
    /// `columns[i-1][j-1]` is the value in cell `(i, j)`.
    columns: Vec<Vec<u8>>,
}

impl Filling {
    /// Builds a filling from column value lists; lengths must match `shape`.
    pub fn from_columns(shape: &Composition, columns: Vec<Vec<u8>>) -> Option<Self> {
        let n = shape.n();
        let fits = columns.len() == n
            && columns
                .iter()
                .enumerate()
                .all(|(i, c)| c.len() == shape.part(i + 1) as usize)
            && columns.iter().flatten().all(|&v| v >= 1 && v as usize <= n);
        fits.then_some(Self { columns })
    }

    pub(crate) fn from_columns_unchecked(columns: Vec<Vec<u8>>) -> Self {
        Self { columns }
    }

    pub fn columns(&self) -> &[Vec<u8>] {
        &self.columns
    }

    /// `sigma-hat(u)`, including row 0.
    pub fn value(&self, u: Cell) -> u8 {
        if u.row == 0 {
            u.col as u8
        } else {
            self.columns[u.col - 1][u.row as usize - 1]
        }
    }

    /// Values of row `j` (`j >= 1`) keyed by column, left to right.
    pub fn row(&self, j: u32) -> Vec<(usize, u8)> {
        self.columns
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() >= j as usize)
            .map(|(i, c)| (i + 1, c[j as usize - 1]))
            .collect()
    }

    /// `k(sigma)`: how many cells of `dg'` carry each value.
    pub fn content(&self) -> Vec<u32> {
        let mut k = vec![0u32; self.columns.len()];
        for &v in self.columns.iter().flatten() {
            k[v as usize - 1] += 1;
        }
        k
    }
}

impl fmt::Display for Filling {
    /// Column lists separated by `|`, bottom to top: `1|2,1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.columns.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            let vals: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            f.write_str(&vals.join(","))?;
        }
        Ok(())
    }
}

/// Per-cell data of a diagram that the statistics need repeatedly.
#[derive(Clone, Debug)]
pub struct Shape {
    comp: Composition,
    cells: Vec<Cell>,
    legs: Vec<u32>,
    arms: Vec<u32>,
    arm_total: i64,
    weak_pairs: i64,
}

/// The HHL statistics of one filling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillingStats {
    pub maj: i64,
    pub coinv: i64,
    /// Number of inversion pairs `|Inv|`.
    pub inversions: i64,
    /// `t`-degree of the filling's term in the HHL sum.
    pub t_degree: i64,
    /// `sum (l(u)+1)` over cells with `sigma(u) < sigma(d(u))`.
    pub w: i64,
    pub content: Vec<u32>,
    /// `(leg, arm)` of each cell with `sigma(u) != sigma(d(u))`.
    pub factors: Vec<(u32, u32)>,
}

impl Shape {
    pub fn new(comp: &Composition) -> Self {
        let cells = comp.cells();
        let legs = cells.iter().map(|&u| comp.part(u.col) - u.row).collect();
        let arms: Vec<u32> = cells.iter().map(|&u| comp.arm_size(u)).collect();
        let arm_total = arms.iter().map(|&a| a as i64).sum();
        let p = comp.parts();
        let mut weak_pairs = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] <= p[j] {
                    weak_pairs += 1;
                }
            }
        }
        Self {
            comp: comp.clone(),
            cells,
            legs,
            arms,
            arm_total,
            weak_pairs,
        }
    }

    pub fn composition(&self) -> &Composition {
        &self.comp
    }

    pub fn stats(&self, f: &Filling) -> FillingStats {
        let mut maj = 0;
        let mut des_arm = 0;
        let mut t_deg_arm = 0;
        let mut w = 0;
        let mut factors = Vec::new();
        for (idx, &u) in self.cells.iter().enumerate() {
            let v = f.value(u);
            let d = f.value(u.below());
            let (leg, arm) = (self.legs[idx], self.arms[idx]);
            if v != d {
                factors.push((leg, arm));
                t_deg_arm += arm as i64;
            }
            if v > d {
                maj += leg as i64 + 1;
                des_arm += arm as i64;
            } else if v < d {
                w += leg as i64 + 1;
            }
        }
        let inversions = self.inversions(f);
        let coinv = self.arm_total - inversions + self.weak_pairs + des_arm;
        FillingStats {
            maj,
            coinv,
            inversions,
            t_degree: coinv - t_deg_arm,
            w,
            content: f.content(),
            factors,
        }
    }

    fn inversions(&self, f: &Filling) -> i64 {
        let n = self.comp.n();
        let h = self.comp.height();
        let mut count = 0;
        let row_vals = |j: u32| -> Vec<(usize, u8)> {
            (1..=n)
                .filter(|&c| self.comp.part(c) >= j)
                .map(|c| (c, f.value(Cell::new(c, j))))
                .collect()
        };
        let mut lower = row_vals(0);
        for j in 0..=h {
            for (a, &(_, va)) in lower.iter().enumerate() {
                for &(_, vb) in &lower[a + 1..] {
                    if va < vb {
                        count += 1;
                    }
                }
            }
            if j == h {
                break;
            }
            let upper = row_vals(j + 1);
            for &(ci, vl) in &lower {
                for &(cu, vu) in &upper {
                    if ci > cu && vl < vu {
                        count += 1;
                    }
                }
            }
            lower = upper;
        }
        count
    }
}
