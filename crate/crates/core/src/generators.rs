//! Seeded instance and graph generators.
//!
//! All randomness comes from one `Xoshiro256PlusPlus` seeded with
//! `seed_from_u64(seed)`, drawn in a fixed order.

use std::collections::BTreeSet;
use std::io::Read;

use rand::rngs::Xoshiro256PlusPlus;
use rand::seq::IndexedRandom;
use rand::{RngExt, SeedableRng};
use serde::Deserialize;
use thiserror::Error;

use crate::geometry::{Axis, Instance, Line, Rect, Solution};
use crate::reduction::{MCClique, MCGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("points ({x}, {y}) of different colors coincide")]
    CoincidentPoints { x: i64, y: i64 },
    #[error("malformed point file: {0}")]
    Csv(String),
}

fn invalid(msg: impl Into<String>) -> GenError {
    GenError::InvalidParameter(msg.into())
}

fn rng(seed: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PlantedWitness {
    pub hstar: BTreeSet<i64>,
    pub vstar: BTreeSet<i64>,
}

impl PlantedWitness {
    pub fn len(&self) -> usize {
        self.hstar.len() + self.vstar.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_solution(&self) -> Solution {
        Solution { hlines: self.hstar.clone(), vlines: self.vstar.clone() }
    }
}

/// Draws `count` distinct lines with coordinates in `[0, range]` that are not in `taken`.
fn distinct_lines(
    rng: &mut Xoshiro256PlusPlus,
    count: usize,
    range: i64,
    taken: &BTreeSet<Line>,
) -> Vec<Line> {
    let mut out = Vec::with_capacity(count);
    let mut seen = taken.clone();
    while out.len() < count {
        let axis = if rng.random_bool(0.5) { Axis::Horizontal } else { Axis::Vertical };
        let line = Line { axis, pos: rng.random_range(0..=range) };
        if seen.insert(line) {
            out.push(line);
        }
    }
    out
}

/// `n` rectangles in `[0, range]²`, each crossed by one of `k` hidden lines,
/// plus up to `2k` distractor lines.
pub fn gen_planted(
    k: usize,
    n: usize,
    coord_range: i64,
    seed: u64,
) -> Result<(Instance, PlantedWitness), GenError> {
    if k == 0 || n == 0 {
        return Err(invalid("planted instances need k >= 1 and n >= 1"));
    }
    if coord_range < 1 {
        return Err(invalid("coordinate range must be at least 1"));
    }
    let slots = 2 * (coord_range as u128 + 1);
    if (k as u128) > slots {
        return Err(invalid(format!("{k} distinct lines do not fit in [0, {coord_range}]")));
    }
    let mut rng = rng(seed);
    let witness = distinct_lines(&mut rng, k, coord_range, &BTreeSet::new());
    let side = (coord_range / 5).max(1);
    let rects = (0..n)
        .map(|_| {
            let w = *witness.choose(&mut rng).expect("k >= 1");
            let lo = rng.random_range((w.pos - side).max(0)..=w.pos);
            let hi = rng.random_range(w.pos..=(w.pos + side).min(coord_range));
            let a = rng.random_range(0..=coord_range);
            let b = rng.random_range(a..=(a + side).min(coord_range));
            match w.axis {
                Axis::Horizontal => Rect { x1: a, x2: b, y1: lo, y2: hi },
                Axis::Vertical => Rect { x1: lo, x2: hi, y1: a, y2: b },
            }
        })
        .collect();
    let taken: BTreeSet<Line> = witness.iter().copied().collect();
    let free = slots - k as u128;
    let extra = (2 * k).min(free.min(usize::MAX as u128) as usize);
    let distractors = distinct_lines(&mut rng, extra, coord_range, &taken);

    let mut wit = PlantedWitness::default();
    let (mut hl, mut vl) = (Vec::new(), Vec::new());
    for line in witness.iter().chain(&distractors) {
        match line.axis {
            Axis::Horizontal => hl.push(line.pos),
            Axis::Vertical => vl.push(line.pos),
        }
    }
    for line in &witness {
        match line.axis {
            Axis::Horizontal => wit.hstar.insert(line.pos),
            Axis::Vertical => wit.vstar.insert(line.pos),
        };
    }
    let inst = Instance::new(rects, hl, vl);
    debug_assert!(crate::geometry::is_valid(&inst, &wit.to_solution()));
    Ok((inst, wit))
}

/// Uniformly random rectangles and `m_lines` line draws in `[0, range]²`;
/// repeated draws collapse, so the instance may hold fewer lines.
pub fn gen_uniform(n: usize, m_lines: usize, coord_range: i64, seed: u64) -> Result<Instance, GenError> {
    if coord_range < 0 {
        return Err(invalid("coordinate range must be nonnegative"));
    }
    let mut rng = rng(seed);
    let span = |rng: &mut Xoshiro256PlusPlus| {
        let a = rng.random_range(0..=coord_range);
        let b = rng.random_range(0..=coord_range);
        (a.min(b), a.max(b))
    };
    let rects = (0..n)
        .map(|_| {
            let (x1, x2) = span(&mut rng);
            let (y1, y2) = span(&mut rng);
            Rect { x1, x2, y1, y2 }
        })
        .collect();
    let (mut hl, mut vl) = (Vec::new(), Vec::new());
    for _ in 0..m_lines {
        let horizontal = rng.random_bool(0.5);
        let pos = rng.random_range(0..=coord_range);
        if horizontal { hl.push(pos) } else { vl.push(pos) }
    }
    Ok(Instance::new(rects, hl, vl))
}

/// Random `k`-partite graph with parts of size `r`. Each cross-part pair is
/// an edge with probability `num/den`; with `plant`, one vertex per part is
/// drawn first and made into a clique.
pub fn gen_mcgraph(
    k: usize,
    r: usize,
    num: u32,
    den: u32,
    seed: u64,
    plant: bool,
) -> Result<(MCGraph, Option<MCClique>), GenError> {
    if den == 0 || num > den {
        return Err(invalid(format!("edge probability {num}/{den} is not in [0, 1]")));
    }
    let mut g = MCGraph::new(k, r).map_err(|e| invalid(e.to_string()))?;
    let mut rng = rng(seed);
    let clique = plant.then(|| MCClique {
        chosen: (1..=k).map(|i| (i, rng.random_range(1..=r))).collect(),
    });
    if let Some(c) = &clique {
        let ids: Vec<usize> = c.chosen.iter().map(|(&i, &p)| g.vertex(i, p)).collect();
        for (a, &u) in ids.iter().enumerate() {
            for &v in &ids[a + 1..] {
                g.add_edge(u, v).expect("distinct in-range vertices");
            }
        }
    }
    for u in 0..k * r {
        for v in u + 1..k * r {
            if u / r != v / r && !g.adjacent(u, v) && rng.random_ratio(num, den) {
                g.add_edge(u, v).expect("distinct in-range vertices");
            }
        }
    }
    Ok((g, clique))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub struct ColoredPoint {
    pub x: i64,
    pub y: i64,
    pub color: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ColoredPointSet {
    pub points: Vec<ColoredPoint>,
}

impl ColoredPointSet {
    /// Reads `x,y,color` rows after a header line.
    pub fn from_csv(reader: impl Read) -> Result<Self, GenError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let points = rdr
            .deserialize()
            .collect::<Result<Vec<ColoredPoint>, _>>()
            .map_err(|e| GenError::Csv(e.to_string()))?;
        Ok(ColoredPointSet { points })
    }

    pub fn bichromatic_pairs(&self) -> impl Iterator<Item = (ColoredPoint, ColoredPoint)> + '_ {
        let pts = &self.points;
        (0..pts.len())
            .flat_map(move |i| (i + 1..pts.len()).map(move |j| (pts[i], pts[j])))
            .filter(|(p, q)| p.color != q.color)
    }
}

/// Separating a colored point set with axis-parallel cuts as stabbing.
///
/// Coordinates are doubled; a cut between integer coordinates `t` and `t + 1`
/// becomes the line at `2t + 1`. Each bichromatic pair yields the rectangle of
/// cuts separating it, with a zero-width even range on an axis where the two
/// points agree.
pub fn discretization_to_stabbing(pts: &ColoredPointSet) -> Result<Instance, GenError> {
    let range = |a: i64, b: i64| {
        if a == b { (2 * a, 2 * a) } else { (2 * a.min(b) + 1, 2 * a.max(b) - 1) }
    };
    let mut rects = Vec::new();
    for (p, q) in pts.bichromatic_pairs() {
        if (p.x, p.y) == (q.x, q.y) {
            return Err(GenError::CoincidentPoints { x: p.x, y: p.y });
        }
        let (x1, x2) = range(p.x, q.x);
        let (y1, y2) = range(p.y, q.y);
        rects.push(Rect { x1, x2, y1, y2 });
    }
    let cuts = |coord: fn(&ColoredPoint) -> i64| -> Vec<i64> {
        let lo = pts.points.iter().map(coord).min();
        let hi = pts.points.iter().map(coord).max();
        match (lo, hi) {
            (Some(lo), Some(hi)) => (lo..hi).map(|t| 2 * t + 1).collect(),
            _ => Vec::new(),
        }
    };
    Ok(Instance::new(rects, cuts(|p| p.y), cuts(|p| p.x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::is_valid;

    #[test]
    fn planted_single() {
        let (inst, wit) = gen_planted(1, 1, 100, 3).unwrap();
        assert_eq!(inst.rects.len(), 1);
        assert_eq!(wit.len(), 1);
        assert!(is_valid(&inst, &wit.to_solution()));
    }

    #[test]
    fn planted_witness_stabs_for_many_seeds() {
        for seed in 0..50 {
            let (inst, wit) = gen_planted(4, 30, 60, seed).unwrap();
            assert_eq!(wit.len(), 4);
            assert!(is_valid(&inst, &wit.to_solution()));
            assert_eq!(inst.num_lines(), 12);
        }
    }

    #[test]
    fn distractors_capped_by_range() {
        let (inst, _) = gen_planted(3, 5, 1, 0).unwrap();
        assert_eq!(inst.num_lines(), 4);
        assert!(gen_planted(5, 5, 1, 0).is_err());
    }

    #[test]
    fn uniform_is_deterministic() {
        assert_eq!(gen_uniform(0, 0, 10, 1).unwrap().rects.len(), 0);
        assert_eq!(gen_uniform(20, 8, 50, 9).unwrap(), gen_uniform(20, 8, 50, 9).unwrap());
        assert_ne!(gen_uniform(20, 8, 50, 9).unwrap(), gen_uniform(20, 8, 50, 10).unwrap());
    }

    #[test]
    fn mcgraph_planted_without_extra_edges() {
        let (g, c) = gen_mcgraph(3, 4, 0, 1, 5, true).unwrap();
        let c = c.unwrap();
        assert_eq!(g.edges().count(), 3);
        assert!(g.is_clique(&c));
        let (g, _) = gen_mcgraph(3, 2, 1, 1, 5, false).unwrap();
        assert_eq!(g.edges().count(), 12);
    }

    #[test]
    fn discretization_examples() {
        let same = ColoredPointSet {
            points: vec![ColoredPoint { x: 0, y: 0, color: 1 }, ColoredPoint { x: 3, y: 3, color: 1 }],
        };
        assert!(discretization_to_stabbing(&same).unwrap().rects.is_empty());
        let pair = ColoredPointSet {
            points: vec![ColoredPoint { x: 0, y: 0, color: 0 }, ColoredPoint { x: 1, y: 1, color: 1 }],
        };
        let inst = discretization_to_stabbing(&pair).unwrap();
        assert_eq!(inst.rects, vec![Rect { x1: 1, x2: 1, y1: 1, y2: 1 }]);
        assert_eq!((inst.hlines(), inst.vlines()), (&[1][..], &[1][..]));
        let clash = ColoredPointSet {
            points: vec![ColoredPoint { x: 2, y: 2, color: 0 }, ColoredPoint { x: 2, y: 2, color: 1 }],
        };
        assert_eq!(discretization_to_stabbing(&clash), Err(GenError::CoincidentPoints { x: 2, y: 2 }));
    }

    #[test]
    fn csv_points() {
        let text = "x,y,color\n0, 0, 1\n-3,4,2\n";
        let set = ColoredPointSet::from_csv(text.as_bytes()).unwrap();
        assert_eq!(set.points[1], ColoredPoint { x: -3, y: 4, color: 2 });
        assert!(ColoredPointSet::from_csv("x,y,color\n1,2\n".as_bytes()).is_err());
    }
}
