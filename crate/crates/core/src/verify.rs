//! Sweeps of the identity `E_lambda(x; q^{-1}, infinity) = ch_PBW W_lambda (p = q)`
//! over families of weights.
//!
//! Each family implements [`CoFamily`] and is looked up by name in a
//! [`FamilyRegistry`]; the runner evaluates cases on a worker pool and
//! returns reports in case order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::arith::QPoly;
use crate::demazure::{
    pbw_character_closed, pbw_character_rectangular, pbw_character_two_row, ClosedForm,
    DemazureError,
};
use crate::diagram::DominantWeight;
use crate::hhl::e_limit_combinatorial;
use crate::series::XSeries;

/// One weight to check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoCase {
    pub family: &'static str,
    pub n: usize,
    pub weight: DominantWeight,
    /// Named parameters in display order, e.g. `[("r", 1), ("m", 2)]`.
    pub params: Vec<(&'static str, u32)>,
}

impl fmt::Display for CoCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} N={}", self.family, self.n)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

impl CoCase {
    /// Number of candidate fillings of the weight's diagram, `N^{|lambda|}`;
    /// an upper bound on every enumeration a case performs.
    pub fn estimated_work(&self) -> u128 {
        let size = self.weight.to_composition(true).size();
        (self.n as u128).saturating_pow(size)
    }
}

/// Both sides of a case plus any further expressions that must agree with
/// the left side.
#[derive(Debug, Clone)]
pub struct Sides {
    pub lhs: XSeries<QPoly>,
    pub rhs: XSeries<QPoly>,
    pub extra: Vec<(&'static str, XSeries<QPoly>)>,
}

/// A family of weights for which the identity is checked.
pub trait CoFamily: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn cases(&self, n: RangeInclusive<usize>, m: RangeInclusive<u32>) -> Vec<CoCase>;
    fn evaluate(&self, case: &CoCase) -> Result<Sides, DemazureError>;
}

/// `lambda^* = m w_r`, right side from the rectangular substitution rule.
pub struct Rectangular;

impl CoFamily for Rectangular {
    fn name(&self) -> &'static str {
        "rect"
    }

    fn description(&self) -> &'static str {
        "multiples m*w_r of a fundamental weight"
    }

    fn cases(&self, n: RangeInclusive<usize>, m: RangeInclusive<u32>) -> Vec<CoCase> {
        let mut out = Vec::new();
        for n in n.filter(|&n| n >= 2) {
            for r in 1..n {
                for m in m.clone() {
                    let weight = DominantWeight::fundamental_multiple(n, r, m).expect("r < n");
                    out.push(CoCase {
                        family: self.name(),
                        n,
                        weight,
                        params: vec![("r", r as u32), ("m", m)],
                    });
                }
            }
        }
        out
    }

    fn evaluate(&self, case: &CoCase) -> Result<Sides, DemazureError> {
        let lambda = case.weight.to_composition(true);
        let lhs = e_limit_combinatorial(&lambda)?;
        let r = case.params[0].1 as usize;
        let m = case.params[1].1;
        let rhs = pbw_character_rectangular(case.n, r, m)?.at_p_equals_q();
        Ok(Sides {
            lhs,
            rhs,
            extra: Vec::new(),
        })
    }
}

/// `lambda^* = m1 w_1 + m2 w_{N-1}`, right side from the explicit basis and
/// cross-checked against the closed `q`-multinomial formula.
pub struct TwoRow;

impl CoFamily for TwoRow {
    fn name(&self) -> &'static str {
        "two-row"
    }

    fn description(&self) -> &'static str {
        "m1*w_1 + m2*w_(N-1), N >= 3"
    }

    fn cases(&self, n: RangeInclusive<usize>, m: RangeInclusive<u32>) -> Vec<CoCase> {
        let mut out = Vec::new();
        for n in n.filter(|&n| n >= 3) {
            for m1 in m.clone() {
                for m2 in m.clone() {
                    let mut mults = vec![0; n - 1];
                    mults[0] = m1;
                    mults[n - 2] = m2;
                    let weight = DominantWeight::new(n, mults).expect("valid weight");
                    out.push(CoCase {
                        family: self.name(),
                        n,
                        weight,
                        params: vec![("m1", m1), ("m2", m2)],
                    });
                }
            }
        }
        out
    }

    fn evaluate(&self, case: &CoCase) -> Result<Sides, DemazureError> {
        let lambda = case.weight.to_composition(true);
        let (m1, m2) = (case.params[0].1, case.params[1].1);
        let lhs = e_limit_combinatorial(&lambda)?;
        let rhs = pbw_character_two_row(case.n, m1, m2).at_p_equals_q();
        let closed = pbw_character_closed(case.n, m1, m2, ClosedForm::Pbw);
        Ok(Sides {
            lhs,
            rhs,
            extra: vec![("closed", closed)],
        })
    }
}

/// Families by name; `all` selects every registered family.
pub struct FamilyRegistry {
    families: BTreeMap<&'static str, Box<dyn CoFamily>>,
    order: Vec<&'static str>,
}

impl Default for FamilyRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Rectangular));
        r.register(Box::new(TwoRow));
        r
    }
}

impl FamilyRegistry {
    pub fn empty() -> Self {
        Self {
            families: BTreeMap::new(),
            order: Vec::new(),
        }
    }

    /// Adds a family; a later registration under the same name replaces it.
    pub fn register(&mut self, family: Box<dyn CoFamily>) {
        let name = family.name();
        if self.families.insert(name, family).is_none() {
            self.order.push(name);
        }
    }

    pub fn get(&self, name: &str) -> Option<&dyn CoFamily> {
        self.families.get(name).map(|b| b.as_ref())
    }

    /// Registered names in registration order.
    pub fn names(&self) -> &[&'static str] {
        &self.order
    }

    pub fn select(&self, name: &str) -> Option<Vec<&dyn CoFamily>> {
        if name == "all" {
            return Some(
                self.order
                    .iter()
                    .map(|n| self.families[n].as_ref())
                    .collect(),
            );
        }
        self.get(name).map(|f| vec![f])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Equal,
    Mismatch,
    Unsupported,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Equal => "equal",
            Status::Mismatch => "mismatch",
            Status::Unsupported => "unsupported",
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub case: CoCase,
    pub status: Status,
    pub sides: Option<Sides>,
    /// Which comparison failed and the first monomial where it did.
    pub first_difference: Option<(&'static str, Vec<u32>)>,
    pub note: Option<String>,
    pub wall_time: Duration,
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub workers: usize,
    pub cap: u128,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            workers: 1,
            cap: 1_000_000,
        }
    }
}

fn run_case(family: &dyn CoFamily, case: &CoCase, cap: u128) -> VerificationReport {
    let start = Instant::now();
    let report = |status, sides, diff, note| VerificationReport {
        case: case.clone(),
        status,
        sides,
        first_difference: diff,
        note,
        wall_time: start.elapsed(),
    };
    let work = case.estimated_work();
    if work > cap {
        return report(
            Status::Unsupported,
            None,
            None,
            Some(format!("estimated {work} fillings exceed cap {cap}")),
        );
    }
    match family.evaluate(case) {
        Err(e) => report(Status::Unsupported, None, None, Some(e.to_string())),
        Ok(sides) => {
            let mut diff = sides.lhs.first_difference(&sides.rhs).map(|k| ("rhs", k));
            if diff.is_none() {
                diff = sides
                    .extra
                    .iter()
                    .find_map(|(name, s)| sides.lhs.first_difference(s).map(|k| (*name, k)));
            }
            let status = if diff.is_some() {
                Status::Mismatch
            } else {
                Status::Equal
            };
            report(status, Some(sides), diff, None)
        }
    }
}

/// Runs every case of the selected families on `workers` threads; the
/// result is in case order whatever the worker count.
pub fn run(
    families: &[&dyn CoFamily],
    n: RangeInclusive<usize>,
    m: RangeInclusive<u32>,
    opts: RunOptions,
) -> Vec<VerificationReport> {
    let jobs: Vec<(&dyn CoFamily, CoCase)> = families
        .iter()
        .flat_map(|f| {
            f.cases(n.clone(), m.clone())
                .into_iter()
                .map(move |c| (*f, c))
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| {
        jobs.par_iter()
            .map(|(f, c)| run_case(*f, c, opts.cap))
            .collect()
    })
}

/// Counts of `(equal, mismatch, unsupported)`.
pub fn tally(reports: &[VerificationReport]) -> (usize, usize, usize) {
    let count = |s| reports.iter().filter(|r| r.status == s).count();
    (
        count(Status::Equal),
        count(Status::Mismatch),
        count(Status::Unsupported),
    )
}
