//! Exact minimum stabbing for small instances.

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use thiserror::Error;

use crate::geometry::{stabs, Instance, Line, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_size: usize,
    pub node_limit: Option<u64>,
}

impl SearchBudget {
    pub fn new(max_size: usize) -> Self {
        SearchBudget { max_size, node_limit: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("no stabbing set of size at most {0}")]
    NoSolutionWithin(usize),
    #[error("search stopped after {0} nodes")]
    NodeLimitExceeded(u64),
}

/// Lines with pairwise distinct, nonempty stabbed sets, in `(axis, pos)`
/// order; each class is represented by its first line.
pub fn dedup_lines(inst: &Instance) -> Vec<(Line, FixedBitSet)> {
    let n = inst.rects.len();
    let mut out: Vec<(Line, FixedBitSet)> = Vec::new();
    for line in inst.all_lines() {
        let mut set = FixedBitSet::with_capacity(n);
        for (i, r) in inst.rects.iter().enumerate() {
            if stabs(line, r) {
                set.insert(i);
            }
        }
        if !set.is_clear() && out.iter().all(|(_, s)| *s != set) {
            out.push((line, set));
        }
    }
    out
}

struct Search<'a> {
    lines: Vec<(Line, FixedBitSet)>,
    /// Candidate line indices per rectangle.
    cands: Vec<Vec<usize>>,
    /// Rectangle indices sorted by right and by top edge.
    orders: [Vec<usize>; 2],
    inst: &'a Instance,
    nodes: u64,
    node_limit: Option<u64>,
}

impl Search<'_> {
    /// Size of a family of unstabbed rectangles no two of which share an
    /// allowed line; `None` if some unstabbed rectangle has no allowed line.
    fn lower_bound(&self, open: &FixedBitSet, excluded: &FixedBitSet) -> Option<usize> {
        if open.ones().any(|i| self.cands[i].iter().all(|&l| excluded[l])) {
            return None;
        }
        let best = self.orders.iter().map(|order| {
            let mut used = FixedBitSet::with_capacity(self.lines.len());
            let mut count = 0;
            for &i in order {
                let mut allowed = self.cands[i].iter().filter(|&&l| !excluded[l]);
                if open[i] && allowed.clone().all(|&l| !used[l]) {
                    count += 1;
                    for &l in &mut allowed {
                        used.insert(l);
                    }
                }
            }
            count
        });
        best.max()
    }

    fn dfs(
        &mut self,
        open: &FixedBitSet,
        excluded: &mut FixedBitSet,
        chosen: &mut Vec<usize>,
        limit: usize,
    ) -> Result<bool, ExactError> {
        self.nodes += 1;
        if self.node_limit.is_some_and(|lim| self.nodes > lim) {
            return Err(ExactError::NodeLimitExceeded(self.nodes - 1));
        }
        if open.is_clear() {
            return Ok(true);
        }
        match self.lower_bound(open, excluded) {
            Some(lb) if chosen.len() + lb <= limit => {}
            _ => return Ok(false),
        }
        let allowed = |i: usize| self.cands[i].iter().filter(|&&l| !excluded[l]).count();
        let pivot = open.ones().min_by_key(|&i| (allowed(i), i)).expect("open is nonempty");
        let branch: Vec<usize> =
            self.cands[pivot].iter().copied().filter(|&l| !excluded[l]).collect();
        let mut tried = Vec::new();
        let mut found = false;
        for l in branch {
            let mut next = open.clone();
            next.difference_with(&self.lines[l].1);
            chosen.push(l);
            if self.dfs(&next, excluded, chosen, limit)? {
                found = true;
                break;
            }
            chosen.pop();
            // Solutions containing `l` are exhausted for the remaining siblings.
            excluded.insert(l);
            tried.push(l);
        }
        for l in tried {
            excluded.set(l, false);
        }
        Ok(found)
    }
}

/// Minimum stabbing set by branch and bound with iterative deepening.
pub fn opt_exact(inst: &Instance, budget: SearchBudget) -> Result<Solution, ExactError> {
    opt_exact_with_nodes(inst, budget).0
}

/// [`opt_exact`] plus the number of search nodes visited.
pub fn opt_exact_with_nodes(
    inst: &Instance,
    budget: SearchBudget,
) -> (Result<Solution, ExactError>, u64) {
    let n = inst.rects.len();
    let lines = dedup_lines(inst);
    let mut cands = vec![Vec::new(); n];
    for (l, (_, set)) in lines.iter().enumerate() {
        for i in set.ones() {
            cands[i].push(l);
        }
    }
    let mut by_x: Vec<usize> = (0..n).collect();
    by_x.sort_by_key(|&i| (inst.rects[i].x2, i));
    let mut by_y: Vec<usize> = (0..n).collect();
    by_y.sort_by_key(|&i| (inst.rects[i].y2, i));
    let mut search = Search {
        lines,
        cands,
        orders: [by_x, by_y],
        inst,
        nodes: 0,
        node_limit: budget.node_limit,
    };

    let mut open = FixedBitSet::with_capacity(n);
    open.insert_range(..);
    let mut excluded = FixedBitSet::with_capacity(search.lines.len());
    let Some(start) = search.lower_bound(&open, &excluded) else {
        return (Err(ExactError::NoSolutionWithin(budget.max_size)), 0);
    };
    for limit in start..=budget.max_size {
        let mut chosen = Vec::new();
        match search.dfs(&open, &mut excluded, &mut chosen, limit) {
            Ok(true) => {
                let sol = Solution::from_lines(chosen.iter().map(|&l| search.lines[l].0));
                debug_assert!(crate::geometry::is_valid(search.inst, &sol) && sol.len() <= limit);
                return (Ok(sol), search.nodes);
            }
            Ok(false) => {}
            Err(e) => return (Err(e), search.nodes),
        }
    }
    (Err(ExactError::NoSolutionWithin(budget.max_size)), search.nodes)
}

/// Exhaustive search over subsets of all candidate lines in nondecreasing
/// size; returns the lexicographically first stabbing subset of the smallest
/// size, with lines ordered horizontal first, then by position.
pub fn brute_force(inst: &Instance, max_size: usize) -> Result<Solution, ExactError> {
    let n = inst.rects.len();
    let lines: Vec<(Line, FixedBitSet)> = inst
        .all_lines()
        .map(|line| {
            let mut set = FixedBitSet::with_capacity(n);
            set.extend(inst.rects.iter().enumerate().filter(|(_, r)| stabs(line, r)).map(|(i, _)| i));
            (line, set)
        })
        .collect();
    for size in 0..=max_size.min(lines.len()) {
        for combo in (0..lines.len()).combinations(size) {
            let mut covered = FixedBitSet::with_capacity(n);
            for &l in &combo {
                covered.union_with(&lines[l].1);
            }
            if covered.count_ones(..) == n {
                return Ok(Solution::from_lines(combo.iter().map(|&l| lines[l].0)));
            }
        }
    }
    Err(ExactError::NoSolutionWithin(max_size))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Rect;

    fn r(x1: i64, x2: i64, y1: i64, y2: i64) -> Rect {
        Rect::new(x1, x2, y1, y2).unwrap()
    }

    #[test]
    fn empty_instance() {
        let inst = Instance::new(vec![], vec![1], vec![2]);
        assert!(opt_exact(&inst, SearchBudget::new(0)).unwrap().is_empty());
        assert!(brute_force(&inst, 0).unwrap().is_empty());
    }

    #[test]
    fn two_disjoint_rectangles() {
        let inst = Instance::new(vec![r(0, 1, 0, 1), r(5, 6, 5, 6)], vec![0, 5], vec![1, 6]);
        let sol = opt_exact(&inst, SearchBudget::new(5)).unwrap();
        assert_eq!(sol.len(), 2);
        assert_eq!(opt_exact(&inst, SearchBudget::new(1)), Err(ExactError::NoSolutionWithin(1)));
        for line in sol.lines() {
            let mut fewer = sol.clone();
            fewer.hlines.remove(&line.pos);
            fewer.vlines.remove(&line.pos);
            assert!(!crate::geometry::is_valid(&inst, &fewer));
        }
    }

    #[test]
    fn single_rect_single_line() {
        let inst = Instance::new(vec![r(0, 1, 0, 1)], vec![], vec![1]);
        assert_eq!(brute_force(&inst, 3).unwrap(), Solution::from_lines([Line::vertical(1)]));
    }

    #[test]
    fn dedup_keeps_first_of_each_class() {
        let inst = Instance::new(vec![r(0, 3, 0, 0)], vec![0, 9], vec![0, 1]);
        let kept: Vec<Line> = dedup_lines(&inst).into_iter().map(|(l, _)| l).collect();
        assert_eq!(kept, vec![Line::horizontal(0)]);
    }

    #[test]
    fn node_limit_is_reported() {
        let rects: Vec<Rect> = (0..6).map(|t| r(t, t, t, t)).collect();
        let inst = Instance::new(rects, (0..6).collect(), (0..6).collect());
        let budget = SearchBudget { max_size: 6, node_limit: Some(2) };
        assert!(matches!(opt_exact(&inst, budget), Err(ExactError::NodeLimitExceeded(_))));
    }

    #[test]
    fn budget_below_optimum_after_exclusions() {
        // Every size-2 attempt excludes a line that the packing bound must not count.
        let rects = vec![r(7, 9, 15, 16), r(6, 9, 0, 0), r(2, 6, 14, 16), r(0, 0, 1, 1)];
        let inst = Instance::new(rects, vec![15], vec![0, 6, 7]);
        assert_eq!(opt_exact(&inst, SearchBudget::new(2)), Err(ExactError::NoSolutionWithin(2)));
        assert_eq!(opt_exact(&inst, SearchBudget::new(3)).unwrap().len(), 3);
    }

    #[test]
    fn unstabbable_rectangle() {
        let inst = Instance::new(vec![r(0, 1, 0, 1)], vec![5], vec![5]);
        assert_eq!(opt_exact(&inst, SearchBudget::new(3)), Err(ExactError::NoSolutionWithin(3)));
        assert_eq!(brute_force(&inst, 3), Err(ExactError::NoSolutionWithin(3)));
    }
}
