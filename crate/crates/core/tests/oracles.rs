//! Solvers checked against independent exhaustive oracles.

use itertools::Itertools;
use proptest::prelude::*;
use rstab_core::exact::{brute_force, dedup_lines, opt_exact, ExactError, SearchBudget};
use rstab_core::geometry::{is_valid, Instance, Rect};
use rstab_core::greedy1d::{stab_1d, IntervalSet};
use rstab_core::twosat::{Formula, Lit};

fn interval_set() -> impl Strategy<Value = IntervalSet> {
    let iv = (0i64..20, 0i64..6).prop_map(|(a, len)| (a, a + len));
    (prop::collection::vec(iv, 0..=10), prop::collection::btree_set(0i64..26, 0..=12)).prop_map(
        |(intervals, points)| IntervalSet { intervals, points: points.into_iter().collect() },
    )
}

fn min_piercing(iv: &IntervalSet) -> Option<usize> {
    (0..=iv.points.len()).find(|&size| {
        iv.points.iter().combinations(size).any(|chosen| {
            iv.intervals.iter().all(|&(lo, hi)| chosen.iter().any(|&&p| lo <= p && p <= hi))
        })
    })
}

fn formula(num_vars: usize) -> impl Strategy<Value = Formula> {
    let lit = (0..num_vars, any::<bool>()).prop_map(|(var, negated)| Lit { var, negated });
    prop::collection::vec((lit.clone(), lit), 0..=40).prop_map(move |clauses| {
        let mut f = Formula::new(num_vars);
        for (a, b) in clauses {
            f.add_clause(a, b).unwrap();
        }
        f
    })
}

fn truth_table_sat(f: &Formula) -> bool {
    let n = f.num_vars();
    (0u32..1 << n).any(|mask| {
        let values: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        f.is_satisfied_by(&values)
    })
}

fn small_instance(max_rects: usize, max_lines: usize) -> impl Strategy<Value = Instance> {
    let rect = (0i64..12, 0i64..4, 0i64..12, 0i64..4)
        .prop_map(|(x, w, y, h)| Rect::new(x, x + w, y, y + h).unwrap());
    (
        prop::collection::vec(rect, 0..=max_rects),
        prop::collection::vec(0i64..16, 0..=max_lines / 2),
        prop::collection::vec(0i64..16, 0..=max_lines / 2),
    )
        .prop_map(|(rects, h, v)| Instance::new(rects, h, v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn greedy_interval_stabbing_is_optimal(iv in interval_set()) {
        match (stab_1d(&iv), min_piercing(&iv)) {
            (Ok(points), Some(best)) => {
                prop_assert_eq!(points.len(), best);
                for &(lo, hi) in &iv.intervals {
                    prop_assert!(points.iter().any(|&p| lo <= p && p <= hi));
                }
            }
            (Err(_), None) => {}
            (got, want) => prop_assert!(false, "greedy {got:?} vs oracle {want:?}"),
        }
    }

    #[test]
    fn twosat_matches_truth_table(f in (1usize..=12).prop_flat_map(formula)) {
        match f.solve() {
            Ok(a) => prop_assert!(f.is_satisfied_by(&a.values)),
            Err(_) => prop_assert!(!truth_table_sat(&f)),
        }
        prop_assert_eq!(f.solve().is_ok(), truth_table_sat(&f));
    }

    #[test]
    fn exact_matches_brute_force(inst in small_instance(12, 10)) {
        let budget = SearchBudget::new(10);
        match (opt_exact(&inst, budget), brute_force(&inst, 10)) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.len(), b.len());
                prop_assert!(is_valid(&inst, &a));
                if !a.is_empty() {
                    let below = a.len() - 1;
                    prop_assert_eq!(brute_force(&inst, below), Err(ExactError::NoSolutionWithin(below)));
                    prop_assert_eq!(
                        opt_exact(&inst, SearchBudget::new(below)),
                        Err(ExactError::NoSolutionWithin(below))
                    );
                }
            }
            (Err(ExactError::NoSolutionWithin(_)), Err(ExactError::NoSolutionWithin(_))) => {}
            (a, b) => prop_assert!(false, "exact {a:?} vs brute force {b:?}"),
        }
    }

    #[test]
    fn deduplicated_lines_preserve_optimum(inst in small_instance(10, 10)) {
        let kept = dedup_lines(&inst);
        let (h, v): (Vec<_>, Vec<_>) = kept.iter().map(|(l, _)| *l).partition(|l| l.axis == rstab_core::Axis::Horizontal);
        let reduced = Instance::new(
            inst.rects.clone(),
            h.iter().map(|l| l.pos).collect(),
            v.iter().map(|l| l.pos).collect(),
        );
        prop_assert_eq!(
            brute_force(&inst, 10).map(|s| s.len()),
            brute_force(&reduced, 10).map(|s| s.len())
        );
    }
}
