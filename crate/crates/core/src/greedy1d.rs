//! Optimal greedy stabbing of intervals by points, and its lift to rectangles
//! and lines of one axis.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::geometry::{Axis, Instance, Line, Rect};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalSet {
    pub intervals: Vec<(i64, i64)>,
    pub points: Vec<i64>,
}

/// No candidate point lies inside this interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("interval [{}, {}] contains no candidate point", .0.0, .0.1)]
pub struct Infeasible(pub (i64, i64));

/// Minimum set of points hitting every interval.
///
/// Intervals are scanned by right endpoint; an unstabbed interval receives the
/// largest candidate point not exceeding its right endpoint. `points` must be
/// sorted ascending.
pub fn stab_1d(iv: &IntervalSet) -> Result<Vec<i64>, Infeasible> {
    debug_assert!(iv.points.windows(2).all(|w| w[0] <= w[1]));
    let mut order: Vec<(i64, i64)> = iv.intervals.clone();
    order.sort_by_key(|&(lo, hi)| (hi, lo));

    let mut chosen = Vec::new();
    let mut last: Option<i64> = None;
    for (lo, hi) in order {
        debug_assert!(lo <= hi);
        if last.is_some_and(|p| lo <= p && p <= hi) {
            continue;
        }
        let idx = iv.points.partition_point(|&p| p <= hi);
        match idx.checked_sub(1).map(|i| iv.points[i]) {
            Some(p) if p >= lo => {
                chosen.push(p);
                last = Some(p);
            }
            _ => return Err(Infeasible((lo, hi))),
        }
    }
    chosen.dedup();
    Ok(chosen)
}

/// Size of an optimal 1D stabbing; `None` stands for an infeasible (infinite) optimum.
pub fn opt_1d<'a>(
    rects: impl IntoIterator<Item = &'a Rect>,
    positions: &[i64],
    axis: Axis,
) -> Option<usize> {
    let intervals = rects.into_iter().map(|r| r.span(axis)).collect();
    stab_1d(&IntervalSet { intervals, points: positions.to_vec() })
        .ok()
        .map(|v| v.len())
}

/// Stab `rects` using only the candidate lines of `axis` from `inst`.
pub fn stab_axis<'a>(
    rects: impl IntoIterator<Item = &'a Rect>,
    inst: &Instance,
    axis: Axis,
) -> Result<BTreeSet<i64>, Infeasible> {
    stab_positions(rects, inst.lines(axis), axis)
}

pub fn stab_positions<'a>(
    rects: impl IntoIterator<Item = &'a Rect>,
    positions: &[i64],
    axis: Axis,
) -> Result<BTreeSet<i64>, Infeasible> {
    let intervals = rects.into_iter().map(|r| r.span(axis)).collect();
    let pts = stab_1d(&IntervalSet { intervals, points: positions.to_vec() })?;
    Ok(pts.into_iter().collect())
}

pub fn lift(axis: Axis, positions: &BTreeSet<i64>) -> Vec<Line> {
    positions.iter().map(|&pos| Line { axis, pos }).collect()
}
