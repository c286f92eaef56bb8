//! Redundant rectangle elimination.

use crate::geometry::{any_in_range, Axis, Instance, Rect, Strip};
use crate::greedy1d::{opt_1d, stab_axis};

use super::GuessInfeasible;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    /// Indices into `inst.rects` that survive (the set `K`), ascending.
    pub kept: Vec<usize>,
    /// Indices of removed rectangles, in removal order.
    pub removed: Vec<usize>,
    /// Horizontal positions stabbing the surviving candidates of removal.
    pub h0: Vec<i64>,
}

impl Elimination {
    pub fn kept_rects<'a>(&'a self, inst: &'a Instance) -> impl Iterator<Item = &'a Rect> + 'a {
        self.kept.iter().map(|&i| &inst.rects[i])
    }
}

/// Removes rectangles that any structured completion is forced to stab anyway.
///
/// Candidates for removal are the rectangles stabbable by some horizontal
/// candidate but missed by `h1 ∪ v1`. While some bounding line `ℓ` of a strip
/// `P ∈ gamma_v` meets a family of surviving candidates whose horizontal
/// optimum is at least `2k + 2`, the one with the widest overlap with `P` is
/// dropped (ties: smallest index). Bounding lines are scanned strip by strip,
/// left bound first, restarting after every removal.
pub fn eliminate_redundant(
    inst: &Instance,
    h1: &[i64],
    v1: &[i64],
    gamma_v: &[Strip],
    k: usize,
) -> Result<Elimination, GuessInfeasible> {
    let n = inst.rects.len();
    let mut alive = vec![false; n];
    for (i, r) in inst.rects.iter().enumerate() {
        alive[i] = inst.stabbable_by(Axis::Horizontal, r)
            && !any_in_range(h1, r.y1, r.y2)
            && !any_in_range(v1, r.x1, r.x2);
    }
    let threshold = 2 * k + 2;
    let boundaries: Vec<(Strip, i64)> =
        gamma_v.iter().flat_map(|p| p.boundary().map(move |b| (*p, b))).collect();

    let mut removed = Vec::new();
    'scan: loop {
        for &(strip, x) in &boundaries {
            let touching: Vec<usize> = (0..n)
                .filter(|&i| alive[i] && inst.rects[i].x1 <= x && x <= inst.rects[i].x2)
                .collect();
            if touching.len() < threshold {
                continue;
            }
            let need = opt_1d(touching.iter().map(|&i| &inst.rects[i]), inst.hlines(), Axis::Horizontal)
                .expect("removal candidates are horizontally stabbable");
            if need >= threshold {
                // max_by_key keeps the last maximum, so iterate in reverse for smallest index.
                let widest = touching
                    .iter()
                    .rev()
                    .copied()
                    .max_by_key(|&i| strip.overlap_width(&inst.rects[i]))
                    .expect("nonempty");
                alive[widest] = false;
                removed.push(widest);
                continue 'scan;
            }
        }
        break;
    }

    let survivors = (0..n).filter(|&i| alive[i]).map(|i| &inst.rects[i]);
    let h0 = stab_axis(survivors, inst, Axis::Horizontal)
        .map_err(GuessInfeasible::Unstabbable)?
        .into_iter()
        .collect();
    let mut kept: Vec<usize> = (0..n).collect();
    let mut gone = removed.clone();
    gone.sort_unstable();
    kept.retain(|i| gone.binary_search(i).is_err());
    Ok(Elimination { kept, removed, h0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x1: i64, x2: i64, y1: i64, y2: i64) -> Rect {
        Rect::new(x1, x2, y1, y2).unwrap()
    }

    #[test]
    fn no_strips_removes_nothing() {
        let inst = Instance::new(vec![r(0, 1, 0, 0), r(5, 6, 3, 3)], vec![0, 3], vec![]);
        let e = eliminate_redundant(&inst, &[], &[], &[], 1).unwrap();
        assert_eq!(e.kept, vec![0, 1]);
        assert!(e.removed.is_empty());
        assert_eq!(e.h0, vec![0, 3]);
    }

    #[test]
    fn widest_touching_rectangle_is_removed() {
        // Strip P = (10, +inf); four horizontally disjoint rectangles touch x = 10,
        // each reaching a different distance into P, plus one wide one.
        let mut rects: Vec<Rect> = (0..4).map(|t| r(8, 11 + t, 10 * t, 10 * t)).collect();
        rects.push(r(9, 30, 40, 40));
        let inst = Instance::new(rects, vec![0, 10, 20, 30, 40], vec![]);
        let p = Strip { axis: Axis::Vertical, lo: Some(10), hi: None };
        let e = eliminate_redundant(&inst, &[], &[], &[p], 1).unwrap();
        // The wide one goes first; four disjoint ones still need 4 >= 2k + 2 lines,
        // so the widest of those follows.
        assert_eq!(e.removed, vec![4, 3]);
        assert_eq!(e.kept, vec![0, 1, 2]);
        assert_eq!(e.h0, vec![0, 10, 20]);
    }

    #[test]
    fn ties_break_towards_smaller_index() {
        let rects: Vec<Rect> = (0..4).map(|t| r(8, 12, 10 * t, 10 * t)).collect();
        let inst = Instance::new(rects, vec![0, 10, 20, 30], vec![]);
        let p = Strip { axis: Axis::Vertical, lo: Some(10), hi: None };
        let e = eliminate_redundant(&inst, &[], &[], &[p], 1).unwrap();
        assert_eq!(e.removed, vec![0]);
    }
}
