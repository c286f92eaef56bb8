//! Enumeration of strip/separator guesses.
//!
//! A guess picks strips out of an arrangement `Γ(L)` together with separator
//! lines out of `L`. Guesses are produced in nondecreasing order of
//! `|strips| + |lines|`; within one size, by strip count, then lexicographically
//! by strip indices, then by line indices.

use itertools::Itertools;

use crate::geometry::{strips_of, Axis, Strip};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VerticalGuess {
    pub gamma_v: Vec<Strip>,
    pub v1: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HorizontalGuess {
    pub gamma_h: Vec<Strip>,
    pub h1prime: Vec<i64>,
}

/// `strips` (sorted, pairwise disjoint) are separated by `lines`: no line lies
/// inside a strip, and consecutive strips have a line between them.
pub fn is_separated(strips: &[Strip], lines: &[i64]) -> bool {
    if lines.iter().any(|&l| strips.iter().any(|s| s.contains_pos(l))) {
        return false;
    }
    strips.windows(2).all(|w| {
        let (Some(a), Some(b)) = (w[0].hi, w[1].lo) else {
            return false;
        };
        lines.iter().any(|&l| a <= l && l <= b)
    })
}

/// Largest `|Γv| + |V1|` admitted for a vertical budget `k_v`.
pub fn vertical_budget(k_v: usize) -> usize {
    3 * k_v / 2
}

/// Room left for `|Γh| + |H1'|` once `H1` is paid for.
pub fn horizontal_budget(h1_len: usize, k_h: usize) -> Option<usize> {
    (2 * k_h).checked_sub(h1_len)
}

/// Index pairs (strip indices, line indices) in the documented order.
fn choices(
    n_strips: usize,
    n_lines: usize,
    budget: usize,
) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> {
    (0..=budget).flat_map(move |total| {
        (0..=total.min(n_strips)).flat_map(move |a| {
            (0..n_strips).combinations(a).flat_map(move |sc| {
                (0..n_lines).combinations(total - a).map(move |lc| (sc.clone(), lc))
            })
        })
    })
}

/// Every `(Γv ⊆ Γ(V0), V1 ⊆ V0)` with `|Γv| + |V1| ≤ ⌊3k_v/2⌋` and `Γv`
/// separated by `V1`.
pub fn enumerate_vertical_guesses(
    v0: &[i64],
    k_v: usize,
) -> impl Iterator<Item = VerticalGuess> + use<> {
    let strips = strips_of(Axis::Vertical, v0);
    let lines = v0.to_vec();
    choices(strips.len(), lines.len(), vertical_budget(k_v)).filter_map(move |(sc, lc)| {
        let gamma_v: Vec<Strip> = sc.iter().map(|&i| strips[i]).collect();
        let v1: Vec<i64> = lc.iter().map(|&i| lines[i]).collect();
        is_separated(&gamma_v, &v1).then_some(VerticalGuess { gamma_v, v1 })
    })
}

/// Every `(Γh ⊆ Γ(H1 ∪ H0), H1' ⊆ H0)` with `|H1| + |Γh| + |H1'| ≤ 2k_h` and
/// `Γh` separated by `H1 ∪ H1'`.
pub fn enumerate_horizontal_guesses(
    h1: &[i64],
    h0: &[i64],
    k_h: usize,
) -> impl Iterator<Item = HorizontalGuess> + use<> {
    let mut arrangement: Vec<i64> = h1.iter().chain(h0).copied().collect();
    arrangement.sort_unstable();
    arrangement.dedup();
    let strips = strips_of(Axis::Horizontal, &arrangement);
    let mut extra: Vec<i64> = h0.iter().copied().filter(|p| !h1.contains(p)).collect();
    extra.sort_unstable();
    extra.dedup();
    let fixed = h1.to_vec();
    let budget = horizontal_budget(h1.len(), k_h);
    let n_strips = strips.len();
    let n_lines = extra.len();
    budget
        .into_iter()
        .flat_map(move |b| choices(n_strips, n_lines, b))
        .filter_map(move |(sc, lc)| {
            let gamma_h: Vec<Strip> = sc.iter().map(|&i| strips[i]).collect();
            let h1prime: Vec<i64> = lc.iter().map(|&i| extra[i]).collect();
            let mut separators = fixed.clone();
            separators.extend_from_slice(&h1prime);
            is_separated(&gamma_h, &separators).then_some(HorizontalGuess { gamma_h, h1prime })
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(lo: Option<i64>, hi: Option<i64>) -> Strip {
        Strip { axis: Axis::Vertical, lo, hi }
    }

    #[test]
    fn empty_arrangement_has_single_guess() {
        let g: Vec<_> = enumerate_vertical_guesses(&[], 0).collect();
        assert_eq!(g, vec![VerticalGuess { gamma_v: vec![], v1: vec![] }]);
        let g: Vec<_> = enumerate_horizontal_guesses(&[], &[], 0).collect();
        assert_eq!(g, vec![HorizontalGuess { gamma_h: vec![], h1prime: vec![] }]);
    }

    #[test]
    fn single_line_arrangement() {
        let g: Vec<_> = enumerate_vertical_guesses(&[5], 2).collect();
        let left = vs(None, Some(5));
        let right = vs(Some(5), None);
        assert!(g.contains(&VerticalGuess { gamma_v: vec![left], v1: vec![] }));
        assert!(g.contains(&VerticalGuess { gamma_v: vec![right], v1: vec![5] }));
        assert!(g.contains(&VerticalGuess { gamma_v: vec![left, right], v1: vec![5] }));
        // both strips without the separator are not separated
        assert!(!g.contains(&VerticalGuess { gamma_v: vec![left, right], v1: vec![] }));
        assert!(g.iter().all(|x| x.gamma_v.len() + x.v1.len() <= 3));
        let sizes: Vec<_> = g.iter().map(|x| x.gamma_v.len() + x.v1.len()).collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn exhausted_horizontal_budget() {
        let g: Vec<_> = enumerate_horizontal_guesses(&[1, 4], &[2, 3], 1).collect();
        assert_eq!(g, vec![HorizontalGuess { gamma_h: vec![], h1prime: vec![] }]);
        assert_eq!(enumerate_horizontal_guesses(&[1, 4, 6], &[], 1).count(), 0);
    }

    #[test]
    fn separation_predicate() {
        let a = vs(None, Some(0));
        let b = vs(Some(0), Some(5));
        let c = vs(Some(5), None);
        assert!(is_separated(&[a, c], &[3]));
        assert!(!is_separated(&[a, c], &[]));
        assert!(is_separated(&[a, b], &[0]));
        let wide = vs(Some(0), Some(9));
        assert!(!is_separated(&[wide], &[4]));
    }
}
