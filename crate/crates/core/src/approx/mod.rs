//! Parameterized 7/4-approximation.
//!
//! [`solve_with_budget`] either returns a stabbing set of size at most
//! `⌊7k/4⌋` or certifies that no stabbing set of size `k` exists.

mod assemble;
mod eliminate;
mod guesses;
mod preselect;

pub use assemble::{assemble_2sat, Decoder};
pub use eliminate::{eliminate_redundant, Elimination};
pub use guesses::{
    enumerate_horizontal_guesses, enumerate_vertical_guesses, horizontal_budget, is_separated,
    vertical_budget, HorizontalGuess, VerticalGuess,
};
pub use preselect::{preselect, Preselection};

use thiserror::Error;

use crate::geometry::{any_in_range, is_valid, Instance, Line, Rect, Solution, Strip};
use crate::greedy1d::Infeasible;

/// Why a particular split or guess cannot lead to a solution.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GuessInfeasible {
    #[error("no admissible preselection step above {from:?}")]
    NoAdmissibleStep { from: Option<i64> },
    #[error(transparent)]
    Unstabbable(Infeasible),
    #[error("strip {0} contains no candidate line")]
    EmptyStrip(Strip),
    #[error("rectangle {0} meets no usable strip")]
    UncoveredRect(Rect),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetSplit {
    pub k_h: usize,
    pub k_v: usize,
}

impl BudgetSplit {
    /// The same split with `k_h <= k_v`.
    pub fn normalized(self) -> Self {
        BudgetSplit { k_h: self.k_h.min(self.k_v), k_v: self.k_h.max(self.k_v) }
    }

    /// Size bound of any solution produced under this split, once normalized.
    pub fn size_bound(self) -> usize {
        2 * self.k_h + vertical_budget(self.k_v)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub splits: u64,
    pub vertical_guesses: u64,
    pub horizontal_guesses: u64,
    pub sat_calls: u64,
}

impl SearchStats {
    pub fn accumulate(&mut self, other: &SearchStats) {
        self.splits += other.splits;
        self.vertical_guesses += other.vertical_guesses;
        self.horizontal_guesses += other.horizontal_guesses;
        self.sat_calls += other.sat_calls;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApproxError {
    #[error("no stabbing set of size at most {k} exists")]
    NoWitness { k: usize },
    #[error("no stabbing set of size at most {k_max} exists")]
    NoWitnessUpTo { k_max: usize },
}

/// Budget splits in search order: `k_h` ascending with `k_h + k_v = k`.
///
/// A witness with `a + b < k` lines is also a witness for the split
/// `(a, k - a)`, so smaller totals need no separate pass.
pub fn splits(k: usize) -> impl Iterator<Item = BudgetSplit> {
    (0..=k).map(move |k_h| BudgetSplit { k_h, k_v: k - k_h })
}

pub fn solve_with_budget(inst: &Instance, k: usize) -> Result<Solution, ApproxError> {
    solve_with_budget_stats(inst, k).0
}

pub fn solve_with_budget_stats(
    inst: &Instance,
    k: usize,
) -> (Result<Solution, ApproxError>, SearchStats) {
    let mut stats = SearchStats::default();
    let mut transposed = None;
    for split in splits(k) {
        stats.splits += 1;
        let normalized = split.normalized();
        let found = if split.k_h > split.k_v {
            let t = transposed.get_or_insert_with(|| inst.transpose());
            solve_split(t, normalized, k, &mut stats).map(|s| s.transpose())
        } else {
            solve_split(inst, normalized, k, &mut stats)
        };
        if let Some(sol) = found {
            assert!(is_valid(inst, &sol), "approximate solution fails verification");
            assert!(sol.len() <= normalized.size_bound() && normalized.size_bound() <= 7 * k / 4);
            return (Ok(sol), stats);
        }
    }
    (Err(ApproxError::NoWitness { k }), stats)
}

/// Smallest budget `k ≤ k_max` for which [`solve_with_budget`] succeeds.
pub fn solve_min(inst: &Instance, k_max: usize) -> Result<(usize, Solution), ApproxError> {
    for k in 0..=k_max {
        if let Ok(sol) = solve_with_budget(inst, k) {
            return Ok((k, sol));
        }
    }
    Err(ApproxError::NoWitnessUpTo { k_max })
}

fn solve_split(
    inst: &Instance,
    split: BudgetSplit,
    k: usize,
    stats: &mut SearchStats,
) -> Option<Solution> {
    debug_assert!(split.k_h <= split.k_v);
    let Preselection { h1, v0 } = preselect(inst, split.k_v).ok()?;
    if h1.len() > split.k_h {
        return None;
    }
    for vg in enumerate_vertical_guesses(&v0, split.k_v) {
        stats.vertical_guesses += 1;
        if let Some(sol) = try_vertical_guess(inst, split, k, &h1, &vg, stats) {
            return Some(sol);
        }
    }
    None
}

fn try_vertical_guess(
    inst: &Instance,
    split: BudgetSplit,
    k: usize,
    h1: &[i64],
    vg: &VerticalGuess,
    stats: &mut SearchStats,
) -> Option<Solution> {
    let elim = eliminate_redundant(inst, h1, &vg.v1, &vg.gamma_v, k).ok()?;
    let kept: Vec<Rect> = elim
        .kept_rects(inst)
        .filter(|r| !any_in_range(h1, r.y1, r.y2) && !any_in_range(&vg.v1, r.x1, r.x2))
        .copied()
        .collect();
    for hg in enumerate_horizontal_guesses(h1, &elim.h0, split.k_h) {
        stats.horizontal_guesses += 1;
        let kprime: Vec<Rect> =
            kept.iter().filter(|r| !any_in_range(&hg.h1prime, r.y1, r.y2)).copied().collect();
        let Ok((formula, decoder)) = assemble_2sat(&kprime, &vg.gamma_v, &hg.gamma_h, inst) else {
            continue;
        };
        stats.sat_calls += 1;
        let Ok(assignment) = formula.solve() else {
            continue;
        };
        let mut sol = decoder.decode(&assignment);
        let fixed = h1.iter().chain(&hg.h1prime).map(|&y| Line::horizontal(y));
        let fixed = fixed.chain(vg.v1.iter().map(|&x| Line::vertical(x)));
        sol.extend(&Solution::from_lines(fixed));
        if is_valid(inst, &sol) {
            return Some(sol);
        }
    }
    None
}
