//! Greedy horizontal line preselection.

use crate::geometry::{any_in_range, Axis, Instance, Rect};
use crate::greedy1d::{opt_1d, stab_axis};

use super::GuessInfeasible;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preselection {
    /// Selected horizontal positions, ascending.
    pub h1: Vec<i64>,
    /// Vertical positions stabbing everything `h1` misses, ascending.
    pub v0: Vec<i64>,
}

/// Sweeps upward over the horizontal candidates `h_1 < … < h_m` with sentinels
/// `h_0` below and `h_{m+1}` above everything. From the current line `h_i` it
/// jumps to the furthest `h_j` such that the rectangles strictly between
/// `h_i` and `h_j` can be stabbed by at most `k_v` vertical candidates, keeping
/// `h_j` unless it is the top sentinel. The rectangles missed by the kept lines
/// are then stabbed greedily with vertical candidates.
pub fn preselect(inst: &Instance, k_v: usize) -> Result<Preselection, GuessInfeasible> {
    let h = inst.hlines();
    let m = h.len();
    // Index 0 and m + 1 are the sentinels: no bound on that side.
    let bound = |i: usize| if i == 0 || i == m + 1 { None } else { Some(h[i - 1]) };
    let between = |i: usize, j: usize| {
        let (lo, hi) = (bound(i), bound(j));
        inst.rects
            .iter()
            .filter(move |r| lo.is_none_or(|y| r.y1 > y) && hi.is_none_or(|y| r.y2 < y))
    };

    let mut h1 = Vec::new();
    let mut i = 0;
    while i <= m {
        // opt(R(h_i, h_j), V) is nondecreasing in j, so the scan stops at the
        // first j that exceeds the budget.
        let mut best = None;
        for j in i + 1..=m + 1 {
            match opt_1d(between(i, j), inst.vlines(), Axis::Vertical) {
                Some(size) if size <= k_v => best = Some(j),
                _ => break,
            }
        }
        let j = best.ok_or(GuessInfeasible::NoAdmissibleStep { from: bound(i) })?;
        if j <= m {
            h1.push(h[j - 1]);
        }
        i = j;
    }

    let missed: Vec<&Rect> =
        inst.rects.iter().filter(|r| !any_in_range(&h1, r.y1, r.y2)).collect();
    let v0 = stab_axis(missed, inst, Axis::Vertical)
        .map_err(GuessInfeasible::Unstabbable)?
        .into_iter()
        .collect();
    Ok(Preselection { h1, v0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x1: i64, x2: i64, y1: i64, y2: i64) -> Rect {
        Rect::new(x1, x2, y1, y2).unwrap()
    }

    #[test]
    fn no_rectangles() {
        let inst = Instance::new(vec![], vec![1, 2], vec![3]);
        let p = preselect(&inst, 0).unwrap();
        assert!(p.h1.is_empty() && p.v0.is_empty());
    }

    #[test]
    fn vertically_stabbable_needs_no_horizontal_lines() {
        let inst = Instance::new(vec![r(0, 1, 0, 1), r(0, 1, 3, 4)], (0..=5).collect(), vec![0, 1]);
        let p = preselect(&inst, 1).unwrap();
        assert_eq!(p.h1, Vec::<i64>::new());
        assert_eq!(p.v0, vec![1]);
    }

    #[test]
    fn tight_vertical_budget_forces_horizontal_lines() {
        // Three stacked rectangles with distinct x-spans; k_v = 0 forces every gap closed.
        let rects = vec![r(0, 0, 0, 0), r(5, 5, 2, 2), r(9, 9, 4, 4)];
        let inst = Instance::new(rects, vec![0, 2, 4], vec![0, 5, 9]);
        let p = preselect(&inst, 0).unwrap();
        assert_eq!(p.h1, vec![0, 2, 4]);
        assert!(p.v0.is_empty());
        let p = preselect(&inst, 1).unwrap();
        assert_eq!(p.h1, vec![2]);
        assert_eq!(p.v0, vec![0, 9]);
    }

    #[test]
    fn gap_without_candidates_is_infeasible() {
        // Rectangle strictly between two consecutive horizontal candidates and no verticals.
        let inst = Instance::new(vec![r(0, 1, 1, 1)], vec![0, 2], vec![]);
        assert!(matches!(preselect(&inst, 3), Err(GuessInfeasible::NoAdmissibleStep { .. })));
    }
}
