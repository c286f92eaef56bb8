//! Reduction from Multicolored Clique to Rectangle Stabbing.
//!
//! Parts and vertices are numbered from 1: vertex `p` of part `i` has id
//! `(i - 1) * r + (p - 1)`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::geometry::{is_valid, Instance, Line, Rect, Solution};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MCGraph {
    k: usize,
    r: usize,
    /// Edges `(u, v)` with `u < v`.
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("parameters must satisfy k >= 1 and r >= 1")]
    EmptyParameters,
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

impl MCGraph {
    pub fn new(k: usize, r: usize) -> Result<Self, GraphError> {
        if k == 0 || r == 0 {
            return Err(GraphError::EmptyParameters);
        }
        Ok(MCGraph { k, r, edges: BTreeSet::new() })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn num_vertices(&self) -> usize {
        self.k * self.r
    }

    pub fn vertex(&self, part: usize, p: usize) -> usize {
        debug_assert!((1..=self.k).contains(&part) && (1..=self.r).contains(&p));
        (part - 1) * self.r + (p - 1)
    }

    /// `(part, index)` of a vertex id, both 1-based.
    pub fn locate(&self, v: usize) -> (usize, usize) {
        (v / self.r + 1, v % self.r + 1)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.num_vertices() {
                return Err(GraphError::VertexOutOfRange(w));
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn intra_part_edges(&self) -> usize {
        self.edges.iter().filter(|&&(u, v)| u / self.r == v / self.r).count()
    }

    /// Ordered pairs `((i, p), (j, q))` with `i != j` whose vertices are not adjacent.
    pub fn cross_non_edges(&self) -> impl Iterator<Item = ((usize, usize), (usize, usize))> + '_ {
        let n = self.num_vertices();
        (0..n).flat_map(move |u| (0..n).map(move |v| (u, v))).filter_map(move |(u, v)| {
            let (a, b) = (self.locate(u), self.locate(v));
            (a.0 != b.0 && !self.adjacent(u, v)).then_some((a, b))
        })
    }

    /// Does `clique` pick pairwise adjacent vertices?
    pub fn is_clique(&self, clique: &MCClique) -> bool {
        let ids: Vec<usize> = clique.chosen.iter().map(|(&i, &p)| self.vertex(i, p)).collect();
        ids.iter().enumerate().all(|(a, &u)| ids[a + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    /// Every multicolored clique of size `k`, by brute force over `r^k` tuples.
    pub fn multicolored_cliques(&self) -> Vec<MCClique> {
        let mut out = Vec::new();
        let mut tuple = vec![1usize; self.k];
        loop {
            let c = MCClique { chosen: (1..=self.k).zip(tuple.iter().copied()).collect() };
            if self.is_clique(&c) {
                out.push(c);
            }
            let Some(pos) = tuple.iter().rposition(|&p| p < self.r) else {
                return out;
            };
            tuple[pos] += 1;
            tuple[pos + 1..].fill(1);
        }
    }
}

/// One vertex per chosen part: part `i` maps to vertex index `p`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MCClique {
    pub chosen: BTreeMap<usize, usize>,
}

impl MCClique {
    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedInstance {
    pub inst: Instance,
    pub k: usize,
    pub r: usize,
    /// Closed x-ranges of the vertical strips, indexed by `x ∈ [0, 2k)`.
    pub vstrips: Vec<(i64, i64)>,
    /// Closed y-ranges of the horizontal strips.
    pub hstrips: Vec<(i64, i64)>,
    pub graph: MCGraph,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("with r = 1 the adjacency gadget of a non-edge is empty")]
    DegenerateAdjacencyGadget,
    #[error("coordinates overflow for k = {k}, r = {r}")]
    Overflow { k: usize, r: usize },
}

/// Counts of the three rectangle families, in emission order F, A, E.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySizes {
    pub forcing: usize,
    pub adjacency: usize,
    pub equality: usize,
}

impl ReducedInstance {
    pub fn family_sizes(&self) -> FamilySizes {
        let k = self.k;
        let forcing = 20 * k * k;
        let equality = 8 * k * (self.r - 1);
        FamilySizes { forcing, adjacency: self.inst.rects.len() - forcing - equality, equality }
    }

    fn strip_origin(&self, x: usize) -> i64 {
        self.vstrips[x].0 - 1
    }
}

fn rect(x1: i64, x2: i64, y1: i64, y2: i64) -> Rect {
    Rect::new(x1, x2, y1, y2).expect("construction yields well-formed rectangles")
}

pub fn build(g: &MCGraph) -> Result<ReducedInstance, BuildError> {
    let (k, r) = (g.k, g.r);
    let overflow = BuildError::Overflow { k, r };
    let top = (2 * k + 2).checked_mul(r).ok_or(overflow.clone())?;
    let (ki, ri) = (
        i64::try_from(k).map_err(|_| overflow.clone())?,
        i64::try_from(r).map_err(|_| overflow.clone())?,
    );
    i64::try_from(top).map_err(|_| overflow)?;
    if r == 1 && g.cross_non_edges().next().is_some() {
        return Err(BuildError::DegenerateAdjacencyGadget);
    }
    // Strip x occupies [base(x) + 1, base(x) + r].
    let base = |x: i64| 2 * ri + x * ri;
    let strips: Vec<(i64, i64)> = (0..2 * ki).map(|x| (base(x) + 1, base(x) + ri)).collect();

    let mut rects = Vec::new();
    for &(lo, hi) in &strips {
        for q in -5 * ki..=-1 {
            rects.push(rect(lo, hi, q, q));
            rects.push(rect(q, q, lo, hi));
        }
    }
    for ((i, p), (j, q)) in g.cross_non_edges() {
        let (i, p, j, q) = (i as i64, p as i64, j as i64, q as i64);
        rects.push(rect(
            2 * i * ri + p + 1,
            2 * i * ri + ri + p - 1,
            2 * j * ri + q + 1,
            2 * j * ri + ri + q - 1,
        ));
    }
    for x in 0..2 * ki {
        for y in (x / 2 * 2)..(x / 2 * 2 + 2) {
            let (bx, by) = (base(x), base(y));
            for a in 2..=ri {
                rects.push(rect(bx + 1, bx + a - 1, by + a, by + ri));
                rects.push(rect(bx + a, bx + ri, by + 1, by + a - 1));
            }
        }
    }
    let positions: Vec<i64> = strips.iter().flat_map(|&(lo, hi)| lo..=hi).collect();
    Ok(ReducedInstance {
        inst: Instance::new(rects, positions.clone(), positions),
        k,
        r,
        vstrips: strips.clone(),
        hstrips: strips,
        graph: g.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForwardError {
    #[error("part {0} has no chosen vertex")]
    MissingPart(usize),
    #[error("choice {p} for part {part} is out of range")]
    OutOfRange { part: usize, p: usize },
    #[error("chosen vertices are not pairwise adjacent")]
    NotAClique,
}

/// The `4k` lines encoding a multicolored clique: in each of the four strips
/// of part `i`, the line at offset `r_i`.
pub fn forward(red: &ReducedInstance, clique: &MCClique) -> Result<Solution, ForwardError> {
    if let Some((&part, &p)) =
        clique.chosen.iter().find(|(&i, &p)| !(1..=red.k).contains(&i) || !(1..=red.r).contains(&p))
    {
        return Err(ForwardError::OutOfRange { part, p });
    }
    if let Some(i) = (1..=red.k).find(|i| !clique.chosen.contains_key(i)) {
        return Err(ForwardError::MissingPart(i));
    }
    if !red.graph.is_clique(clique) {
        return Err(ForwardError::NotAClique);
    }
    let mut sol = Solution::new();
    for (&i, &ri) in &clique.chosen {
        for x in [2 * i - 2, 2 * i - 1] {
            let pos = red.strip_origin(x) + ri as i64;
            sol.insert(Line::vertical(pos));
            sol.insert(Line::horizontal(pos));
        }
    }
    debug_assert!(is_valid(&red.inst, &sol));
    Ok(sol)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotApplicable {
    #[error("solution does not stab the reduced instance")]
    NotStabbing,
    #[error("size bound exceeded: {size} lines, at most {bound} admitted")]
    TooLarge { size: usize, bound: String },
    #[error("ε must be a positive fraction")]
    BadEpsilon,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReverseError {
    #[error(transparent)]
    NotApplicable(#[from] NotApplicable),
    #[error("only {found} parts have exactly one line per strip; {needed} required")]
    TooFewLightParts { found: usize, needed: usize },
    #[error("part {part}: strip offsets {offsets:?} disagree")]
    InconsistentOffsets { part: usize, offsets: [i64; 4] },
    #[error("extracted vertices are not pairwise adjacent")]
    NotAClique,
}

/// Extracts a multicolored clique of size at least `⌈εk⌉` from a stabbing set
/// of size at most `5k - εk`, with `ε = eps_num / eps_den`.
pub fn reverse(
    red: &ReducedInstance,
    sol: &Solution,
    eps_num: u64,
    eps_den: u64,
) -> Result<MCClique, ReverseError> {
    if eps_den == 0 || eps_num == 0 {
        return Err(NotApplicable::BadEpsilon.into());
    }
    if !is_valid(&red.inst, sol) {
        return Err(NotApplicable::NotStabbing.into());
    }
    let (k, size) = (red.k as u128, sol.len() as u128);
    let (num, den) = (eps_num as u128, eps_den as u128);
    if size * den + num * k > 5 * k * den {
        let bound = format!("{}/{}", 5 * k * den - (num * k).min(5 * k * den), den);
        return Err(NotApplicable::TooLarge { size: sol.len(), bound }.into());
    }
    let needed = (num * k).div_ceil(den) as usize;

    let only = |set: &BTreeSet<i64>, (lo, hi): (i64, i64)| {
        let mut it = set.range(lo..=hi);
        match (it.next(), it.next()) {
            (Some(&p), None) => Some(p),
            _ => None,
        }
    };
    let mut chosen = BTreeMap::new();
    for i in 1..=red.k {
        let mut offsets = [0i64; 4];
        let mut light = true;
        for (slot, x) in [2 * i - 2, 2 * i - 1].into_iter().enumerate() {
            let origin = red.strip_origin(x);
            let v = only(&sol.vlines, red.vstrips[x]);
            let h = only(&sol.hlines, red.hstrips[x]);
            match (v, h) {
                (Some(v), Some(h)) => {
                    offsets[slot] = v - origin;
                    offsets[2 + slot] = h - origin;
                }
                _ => light = false,
            }
        }
        if !light {
            continue;
        }
        if offsets.iter().any(|&o| o != offsets[0]) {
            return Err(ReverseError::InconsistentOffsets { part: i, offsets });
        }
        chosen.insert(i, offsets[0] as usize);
    }
    if chosen.len() < needed {
        return Err(ReverseError::TooFewLightParts { found: chosen.len(), needed });
    }
    let clique = MCClique { chosen };
    if !red.graph.is_clique(&clique) {
        return Err(ReverseError::NotAClique);
    }
    Ok(clique)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("coordinate {0} overflows when doubled")]
pub struct CoordinateOverflow(pub i64);

/// Maps solutions of a doubled instance back to the original coordinates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BackMap;

impl BackMap {
    pub fn position(self, t: i64) -> i64 {
        t.div_euclid(2)
    }

    pub fn apply(self, sol: &Solution) -> Solution {
        Solution {
            hlines: sol.hlines.iter().map(|&t| self.position(t)).collect(),
            vlines: sol.vlines.iter().map(|&t| self.position(t)).collect(),
        }
    }
}

/// Replaces `[a, b] × [c, d]` by `[2a, 2b + 1] × [2c, 2d + 1]`, and every
/// candidate position `t` by `2t` and `2t + 1`.
pub fn make_nondegenerate(inst: &Instance) -> Result<(Instance, BackMap), CoordinateOverflow> {
    let lo = |a: i64| a.checked_mul(2).ok_or(CoordinateOverflow(a));
    let hi = |a: i64| lo(a)?.checked_add(1).ok_or(CoordinateOverflow(a));
    let rects = inst
        .rects
        .iter()
        .map(|r| {
            Ok(Rect::new(lo(r.x1)?, hi(r.x2)?, lo(r.y1)?, hi(r.y2)?)
                .expect("doubling preserves orientation"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let double = |ps: &[i64]| -> Result<Vec<i64>, CoordinateOverflow> {
        ps.iter().map(|&t| Ok([lo(t)?, hi(t)?])).collect::<Result<Vec<_>, _>>().map(|v| v.concat())
    };
    Ok((Instance::new(rects, double(inst.hlines())?, double(inst.vlines())?), BackMap))
}
