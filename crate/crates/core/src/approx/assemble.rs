//! Encoding the choice of one line per guessed strip as 2-SAT.
//!
//! For a strip with interior candidates `c_0 < … < c_{m-1}`, variable `t`
//! reads "the chosen line is at or beyond `c_t`". The chosen line is the last
//! candidate whose variable is true.

use crate::geometry::{Axis, Instance, Line, Rect, Solution, Strip};
use crate::twosat::{Assignment, Formula, Lit};

use super::GuessInfeasible;

#[derive(Debug, Clone, PartialEq, Eq)]
struct StripVars {
    strip: Strip,
    candidates: Vec<i64>,
    first_var: usize,
}

impl StripVars {
    /// Literals whose conjunction says "the chosen line stabs `[lo, hi]`";
    /// `None` when no candidate of the strip does.
    fn stab_condition(&self, lo: i64, hi: i64) -> Option<(Lit, Option<Lit>)> {
        let from = self.candidates.partition_point(|&c| c < lo);
        let to = self.candidates.partition_point(|&c| c <= hi);
        (from < to).then(|| {
            let at_least = Lit::pos(self.first_var + from);
            let below = (to < self.candidates.len()).then(|| Lit::neg(self.first_var + to));
            (at_least, below)
        })
    }
}

/// Maps a satisfying assignment back to one line per strip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoder {
    vertical: Vec<StripVars>,
    horizontal: Vec<StripVars>,
}

impl Decoder {
    pub fn decode(&self, a: &Assignment) -> Solution {
        let pick = |sv: &StripVars| {
            (0..sv.candidates.len())
                .rev()
                .find(|&t| a.get(sv.first_var + t))
                .map(|t| sv.candidates[t])
        };
        let mut sol = Solution::new();
        for sv in &self.vertical {
            if let Some(x) = pick(sv) {
                sol.insert(Line::vertical(x));
            }
        }
        for sv in &self.horizontal {
            if let Some(y) = pick(sv) {
                sol.insert(Line::horizontal(y));
            }
        }
        sol
    }
}

fn declare(
    formula: &mut Formula,
    strips: &[Strip],
    positions: &[i64],
) -> Result<Vec<StripVars>, GuessInfeasible> {
    let mut out = Vec::with_capacity(strips.len());
    for &strip in strips {
        let candidates = strip.interior(positions).to_vec();
        if candidates.is_empty() {
            return Err(GuessInfeasible::EmptyStrip(strip));
        }
        let first_var = formula.num_vars();
        for _ in &candidates {
            formula.new_var();
        }
        // Thresholds are monotone: "beyond c_{t+1}" implies "beyond c_t";
        // consecutive pairs suffice by transitivity.
        for t in 1..candidates.len() {
            add(formula, Lit::neg(first_var + t), Lit::pos(first_var + t - 1));
        }
        // Exactly one line per strip: the lowest threshold always holds.
        add(formula, Lit::pos(first_var), Lit::pos(first_var));
        out.push(StripVars { strip, candidates, first_var });
    }
    Ok(out)
}

fn add(f: &mut Formula, a: Lit, b: Lit) {
    f.add_clause(a, b).expect("variables are declared before use");
}

/// The unique strip of `vars` meeting `rect` on `axis`, if any.
fn meeting<'a>(vars: &'a [StripVars], rect: &Rect, axis: Axis) -> Option<&'a StripVars> {
    let mut hits = vars.iter().filter(|sv| sv.strip.meets(rect));
    let first = hits.next();
    assert!(
        hits.next().is_none(),
        "rectangle {rect} meets two guessed {axis:?} strips; separation precondition violated"
    );
    first
}

/// Builds the formula whose models are the `Γv`-structured vertical and
/// `Γh`-structured horizontal line sets stabbing all of `kprime`.
///
/// Every rectangle of `kprime` must meet at most one strip of each family;
/// this holds whenever the guesses are separated and `kprime` excludes what
/// the separators already stab, and is asserted.
pub fn assemble_2sat(
    kprime: &[Rect],
    gamma_v: &[Strip],
    gamma_h: &[Strip],
    inst: &Instance,
) -> Result<(Formula, Decoder), GuessInfeasible> {
    let mut formula = Formula::new(0);
    let vertical = declare(&mut formula, gamma_v, inst.vlines())?;
    let horizontal = declare(&mut formula, gamma_h, inst.hlines())?;

    for rect in kprime {
        let v = meeting(&vertical, rect, Axis::Vertical)
            .and_then(|sv| sv.stab_condition(rect.x1, rect.x2));
        let h = meeting(&horizontal, rect, Axis::Horizontal)
            .and_then(|sv| sv.stab_condition(rect.y1, rect.y2));
        let conj = |(a, b): (Lit, Option<Lit>)| std::iter::once(a).chain(b);
        match (v, h) {
            (None, None) => return Err(GuessInfeasible::UncoveredRect(*rect)),
            (Some(c), None) | (None, Some(c)) => {
                for l in conj(c) {
                    add(&mut formula, l, l);
                }
            }
            // (a ∧ b) ∨ (c ∧ d) distributes into four binary clauses.
            (Some(cv), Some(ch)) => {
                for a in conj(cv) {
                    for b in conj(ch) {
                        add(&mut formula, a, b);
                    }
                }
            }
        }
    }
    Ok((formula, Decoder { vertical, horizontal }))
}
