//! Exact-integer primitives: lines, closed rectangles, open strips, and the
//! instance/solution model every other module works on.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::Horizontal => Axis::Vertical,
            Axis::Vertical => Axis::Horizontal,
        }
    }
}

/// An axis-parallel line. `pos` is the y-coordinate of a horizontal line and
/// the x-coordinate of a vertical one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    pub axis: Axis,
    pub pos: i64,
}

impl Line {
    pub fn horizontal(y: i64) -> Self {
        Line { axis: Axis::Horizontal, pos: y }
    }

    pub fn vertical(x: i64) -> Self {
        Line { axis: Axis::Vertical, pos: x }
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.axis {
            Axis::Horizontal => write!(f, "y={}", self.pos),
            Axis::Vertical => write!(f, "x={}", self.pos),
        }
    }
}

/// Closed rectangle `[x1, x2] x [y1, y2]`. Zero extent on either axis is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rect {
    pub x1: i64,
    pub x2: i64,
    pub y1: i64,
    pub y2: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rectangle [{x1},{x2}]x[{y1},{y2}]: need x1 <= x2 and y1 <= y2")]
pub struct MalformedRect {
    pub x1: i64,
    pub x2: i64,
    pub y1: i64,
    pub y2: i64,
}

impl Rect {
    pub fn new(x1: i64, x2: i64, y1: i64, y2: i64) -> Result<Self, MalformedRect> {
        if x1 <= x2 && y1 <= y2 {
            Ok(Rect { x1, x2, y1, y2 })
        } else {
            Err(MalformedRect { x1, x2, y1, y2 })
        }
    }

    /// The projection of the rectangle onto the coordinate measured by lines of `axis`.
    pub fn span(&self, axis: Axis) -> (i64, i64) {
        match axis {
            Axis::Horizontal => (self.y1, self.y2),
            Axis::Vertical => (self.x1, self.x2),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.x1 == self.x2 || self.y1 == self.y2
    }

    pub fn transposed(&self) -> Rect {
        Rect { x1: self.y1, x2: self.y2, y1: self.x1, y2: self.x2 }
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]x[{},{}]", self.x1, self.x2, self.y1, self.y2)
    }
}

pub fn stabs(line: Line, rect: &Rect) -> bool {
    let (lo, hi) = rect.span(line.axis);
    lo <= line.pos && line.pos <= hi
}

/// True iff some position in the sorted slice lies in `[lo, hi]`.
pub fn any_in_range(sorted: &[i64], lo: i64, hi: i64) -> bool {
    let i = sorted.partition_point(|&p| p < lo);
    i < sorted.len() && sorted[i] <= hi
}

/// The open region strictly between `lo` and `hi`; a missing bound is infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Strip {
    pub axis: Axis,
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Strip {
    pub fn contains_pos(&self, pos: i64) -> bool {
        self.lo.is_none_or(|lo| lo < pos) && self.hi.is_none_or(|hi| pos < hi)
    }

    pub fn contains(&self, line: Line) -> bool {
        line.axis == self.axis && self.contains_pos(line.pos)
    }

    /// Does the closed interval `[lo, hi]` meet the open strip?
    pub fn meets_interval(&self, lo: i64, hi: i64) -> bool {
        self.lo.is_none_or(|b| hi > b) && self.hi.is_none_or(|b| lo < b)
    }

    pub fn meets(&self, rect: &Rect) -> bool {
        let (lo, hi) = rect.span(self.axis);
        self.meets_interval(lo, hi)
    }

    /// Bounding lines that are present (the set written `∂P` for a strip `P`).
    pub fn boundary(&self) -> impl Iterator<Item = i64> {
        self.lo.into_iter().chain(self.hi)
    }

    /// Length of `rect ∩ strip` projected onto the strip's axis. Non-positive
    /// exactly when the intersection is empty or a point-width sliver on a bound.
    pub fn overlap_width(&self, rect: &Rect) -> i128 {
        let (lo, hi) = rect.span(self.axis);
        let left = self.lo.map_or(lo, |b| b.max(lo)) as i128;
        let right = self.hi.map_or(hi, |b| b.min(hi)) as i128;
        right - left
    }

    /// Candidate positions (sorted) lying strictly inside the strip.
    pub fn interior<'a>(&self, sorted: &'a [i64]) -> &'a [i64] {
        let start = self.lo.map_or(0, |lo| sorted.partition_point(|&p| p <= lo));
        let end = self.hi.map_or(sorted.len(), |hi| sorted.partition_point(|&p| p < hi));
        &sorted[start..end.max(start)]
    }
}

impl fmt::Display for Strip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.lo.map_or("-inf".to_string(), |v| v.to_string());
        let hi = self.hi.map_or("+inf".to_string(), |v| v.to_string());
        write!(f, "({lo},{hi})")
    }
}

/// The `n + 1` open strips cut out by `n` strictly increasing line positions.
pub fn strips_of(axis: Axis, positions: &[i64]) -> Vec<Strip> {
    debug_assert!(positions.windows(2).all(|w| w[0] < w[1]));
    let mut out = Vec::with_capacity(positions.len() + 1);
    let mut lo = None;
    for &p in positions {
        out.push(Strip { axis, lo, hi: Some(p) });
        lo = Some(p);
    }
    out.push(Strip { axis, lo, hi: None });
    out
}

/// Rectangles plus candidate lines. Line positions are kept sorted and unique.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Instance {
    pub rects: Vec<Rect>,
    hlines: Vec<i64>,
    vlines: Vec<i64>,
}

impl Instance {
    pub fn new(rects: Vec<Rect>, hlines: Vec<i64>, vlines: Vec<i64>) -> Self {
        Instance { rects, hlines: normalize(hlines), vlines: normalize(vlines) }
    }

    pub fn hlines(&self) -> &[i64] {
        &self.hlines
    }

    pub fn vlines(&self) -> &[i64] {
        &self.vlines
    }

    pub fn lines(&self, axis: Axis) -> &[i64] {
        match axis {
            Axis::Horizontal => &self.hlines,
            Axis::Vertical => &self.vlines,
        }
    }

    pub fn num_lines(&self) -> usize {
        self.hlines.len() + self.vlines.len()
    }

    /// All candidate lines, horizontal first, each axis ascending.
    pub fn all_lines(&self) -> impl Iterator<Item = Line> + '_ {
        self.hlines
            .iter()
            .map(|&y| Line::horizontal(y))
            .chain(self.vlines.iter().map(|&x| Line::vertical(x)))
    }

    pub fn has_line(&self, line: Line) -> bool {
        self.lines(line.axis).binary_search(&line.pos).is_ok()
    }

    /// Whether any candidate line of `axis` stabs `rect`.
    pub fn stabbable_by(&self, axis: Axis, rect: &Rect) -> bool {
        let (lo, hi) = rect.span(axis);
        any_in_range(self.lines(axis), lo, hi)
    }

    pub fn transpose(&self) -> Instance {
        Instance {
            rects: self.rects.iter().map(Rect::transposed).collect(),
            hlines: self.vlines.clone(),
            vlines: self.hlines.clone(),
        }
    }
}

fn normalize(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable();
    v.dedup();
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Solution {
    pub hlines: BTreeSet<i64>,
    pub vlines: BTreeSet<i64>,
}

impl Solution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_lines(lines: impl IntoIterator<Item = Line>) -> Self {
        let mut s = Solution::new();
        for l in lines {
            s.insert(l);
        }
        s
    }

    pub fn insert(&mut self, line: Line) -> bool {
        match line.axis {
            Axis::Horizontal => self.hlines.insert(line.pos),
            Axis::Vertical => self.vlines.insert(line.pos),
        }
    }

    pub fn len(&self) -> usize {
        self.hlines.len() + self.vlines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn lines(&self) -> impl Iterator<Item = Line> + '_ {
        self.hlines
            .iter()
            .map(|&y| Line::horizontal(y))
            .chain(self.vlines.iter().map(|&x| Line::vertical(x)))
    }

    pub fn stabs(&self, rect: &Rect) -> bool {
        let h = self.hlines.range(rect.y1..=rect.y2).next().is_some();
        h || self.vlines.range(rect.x1..=rect.x2).next().is_some()
    }

    pub fn transpose(&self) -> Solution {
        Solution { hlines: self.vlines.clone(), vlines: self.hlines.clone() }
    }

    pub fn extend(&mut self, other: &Solution) {
        self.hlines.extend(other.hlines.iter().copied());
        self.vlines.extend(other.vlines.iter().copied());
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("solution uses lines that are not candidates: {}", display_lines(.0))]
    ForeignLines(Vec<Line>),
}

fn display_lines(lines: &[Line]) -> String {
    lines.iter().map(Line::to_string).collect::<Vec<_>>().join(", ")
}

/// Indices of rectangles not stabbed by `sol`, in input order.
pub fn unstabbed_indices(rects: &[Rect], sol: &Solution) -> Vec<usize> {
    rects
        .iter()
        .enumerate()
        .filter(|(_, r)| !sol.stabs(r))
        .map(|(i, _)| i)
        .collect()
}

/// Returns the rectangles left unstabbed by `sol` (empty means `sol` is valid).
/// Lines of `sol` that are not candidates of `inst` are reported as an error.
pub fn verify(inst: &Instance, sol: &Solution) -> Result<Vec<Rect>, VerifyError> {
    let foreign: Vec<Line> = sol.lines().filter(|&l| !inst.has_line(l)).collect();
    if !foreign.is_empty() {
        return Err(VerifyError::ForeignLines(foreign));
    }
    Ok(unstabbed_indices(&inst.rects, sol).into_iter().map(|i| inst.rects[i]).collect())
}

/// Convenience predicate: valid candidate lines and every rectangle stabbed.
pub fn is_valid(inst: &Instance, sol: &Solution) -> bool {
    matches!(verify(inst, sol), Ok(v) if v.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x1: i64, x2: i64, y1: i64, y2: i64) -> Rect {
        Rect::new(x1, x2, y1, y2).unwrap()
    }

    #[test]
    fn stabbing_is_closed() {
        assert!(stabs(Line::vertical(0), &r(0, 1, 0, 1)));
        assert!(!stabs(Line::horizontal(5), &r(0, 1, 0, 1)));
        assert!(stabs(Line::vertical(3), &r(3, 3, 2, 8)));
    }

    #[test]
    fn rect_rejects_inverted_bounds() {
        assert!(Rect::new(2, 1, 0, 0).is_err());
        assert!(Rect::new(1, 1, 0, 0).unwrap().is_degenerate());
    }

    #[test]
    fn verify_examples() {
        let inst = Instance::new(vec![r(0, 1, 0, 1)], vec![], vec![0]);
        let sol = Solution::from_lines([Line::vertical(0)]);
        assert_eq!(verify(&inst, &sol).unwrap(), vec![]);

        let inst = Instance::new(vec![r(0, 1, 0, 1), r(5, 6, 5, 6)], vec![], vec![0]);
        assert_eq!(verify(&inst, &sol).unwrap(), vec![r(5, 6, 5, 6)]);

        assert_eq!(verify(&Instance::default(), &Solution::new()).unwrap(), vec![]);
    }

    #[test]
    fn verify_reports_foreign_lines() {
        let inst = Instance::new(vec![r(0, 1, 0, 1)], vec![], vec![0]);
        let sol = Solution::from_lines([Line::vertical(1), Line::horizontal(0)]);
        let err = verify(&inst, &sol).unwrap_err();
        assert_eq!(err, VerifyError::ForeignLines(vec![Line::horizontal(0), Line::vertical(1)]));
    }

    #[test]
    fn transpose_swaps_axes() {
        let inst = Instance::new(vec![r(1, 2, 3, 4)], vec![7], vec![9, 8]);
        let t = inst.transpose();
        assert_eq!(t.rects, vec![r(3, 4, 1, 2)]);
        assert_eq!(t.hlines(), &[8, 9]);
        assert_eq!(t.vlines(), &[7]);
        assert_eq!(t.transpose(), inst);
    }

    #[test]
    fn strips_examples() {
        let s = strips_of(Axis::Vertical, &[]);
        assert_eq!(s, vec![Strip { axis: Axis::Vertical, lo: None, hi: None }]);
        let s = strips_of(Axis::Vertical, &[0, 5]);
        let bounds: Vec<_> = s.iter().map(|p| (p.lo, p.hi)).collect();
        assert_eq!(bounds, vec![(None, Some(0)), (Some(0), Some(5)), (Some(5), None)]);
    }

    #[test]
    fn strip_membership_is_open() {
        let p = Strip { axis: Axis::Vertical, lo: Some(0), hi: Some(5) };
        assert!(!p.contains(Line::vertical(5)));
        assert!(!p.contains(Line::vertical(0)));
        assert!(p.contains(Line::vertical(3)));
        assert!(!p.contains(Line::horizontal(3)));
        assert!(!p.meets_interval(5, 9));
        assert!(p.meets_interval(3, 9));
        assert!(p.meets_interval(-4, 1));
        assert!(!p.meets_interval(-4, 0));
    }

    #[test]
    fn interior_and_width() {
        let p = Strip { axis: Axis::Vertical, lo: Some(2), hi: Some(8) };
        assert_eq!(p.interior(&[1, 2, 3, 7, 8, 9]), &[3, 7]);
        let q = Strip { axis: Axis::Vertical, lo: None, hi: Some(2) };
        assert_eq!(q.interior(&[1, 2, 3]), &[1]);
        assert_eq!(p.overlap_width(&r(0, 5, 0, 0)), 3);
        assert_eq!(p.overlap_width(&r(8, 12, 0, 0)), 0);
        assert_eq!(q.overlap_width(&r(-10, 5, 0, 0)), 12);
    }
}
