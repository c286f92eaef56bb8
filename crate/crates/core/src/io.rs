//! JSON file formats.
//!
//! Every writer emits compact JSON with sorted line arrays and a trailing
//! newline, so equal values serialize to identical bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Instance, MalformedRect, Rect, Solution};
use crate::reduction::{GraphError, MCClique, MCGraph, ReducedInstance};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Rect(#[from] MalformedRect),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid strip table: {0}")]
    StripTable(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    rects: Vec<[i64; 4]>,
    hlines: Vec<i64>,
    vlines: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionFile {
    hlines: Vec<i64>,
    vlines: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    k: usize,
    r: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CliqueFile {
    /// `[part, vertex]` pairs, 1-based.
    clique: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StripTableFile {
    k: usize,
    r: usize,
    doubled: bool,
    vstrips: Vec<[i64; 2]>,
    hstrips: Vec<[i64; 2]>,
    graph: GraphFile,
}

fn finish(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn instance_to_json(inst: &Instance) -> String {
    finish(&InstanceFile {
        rects: inst.rects.iter().map(|r| [r.x1, r.x2, r.y1, r.y2]).collect(),
        hlines: inst.hlines().to_vec(),
        vlines: inst.vlines().to_vec(),
    })
}

pub fn instance_from_json(text: &str) -> Result<Instance, FormatError> {
    let f: InstanceFile = serde_json::from_str(text)?;
    let rects = f
        .rects
        .into_iter()
        .map(|[x1, x2, y1, y2]| Rect::new(x1, x2, y1, y2))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Instance::new(rects, f.hlines, f.vlines))
}

pub fn solution_to_json(sol: &Solution) -> String {
    finish(&SolutionFile {
        hlines: sol.hlines.iter().copied().collect(),
        vlines: sol.vlines.iter().copied().collect(),
    })
}

pub fn solution_from_json(text: &str) -> Result<Solution, FormatError> {
    let f: SolutionFile = serde_json::from_str(text)?;
    Ok(Solution { hlines: f.hlines.into_iter().collect(), vlines: f.vlines.into_iter().collect() })
}

fn graph_file(g: &MCGraph) -> GraphFile {
    GraphFile { k: g.k(), r: g.r(), edges: g.edges().map(|(u, v)| [u, v]).collect() }
}

fn graph_from_file(f: GraphFile) -> Result<MCGraph, FormatError> {
    let mut g = MCGraph::new(f.k, f.r)?;
    for [u, v] in f.edges {
        g.add_edge(u, v)?;
    }
    Ok(g)
}

pub fn graph_to_json(g: &MCGraph) -> String {
    finish(&graph_file(g))
}

pub fn graph_from_json(text: &str) -> Result<MCGraph, FormatError> {
    graph_from_file(serde_json::from_str(text)?)
}

pub fn clique_to_json(c: &MCClique) -> String {
    finish(&CliqueFile { clique: c.chosen.iter().map(|(&i, &p)| [i, p]).collect() })
}

pub fn clique_from_json(text: &str) -> Result<MCClique, FormatError> {
    let f: CliqueFile = serde_json::from_str(text)?;
    Ok(MCClique { chosen: f.clique.into_iter().map(|[i, p]| (i, p)).collect::<BTreeMap<_, _>>() })
}

/// Everything a reduced instance carries besides its rectangles and lines.
pub fn strip_table_to_json(red: &ReducedInstance, doubled: bool) -> String {
    let pairs = |v: &[(i64, i64)]| v.iter().map(|&(a, b)| [a, b]).collect();
    finish(&StripTableFile {
        k: red.k,
        r: red.r,
        doubled,
        vstrips: pairs(&red.vstrips),
        hstrips: pairs(&red.hstrips),
        graph: graph_file(&red.graph),
    })
}

/// Reassembles a reduced instance from its strip table and the instance it
/// describes; returns whether that instance was doubled.
pub fn strip_table_from_json(text: &str, inst: Instance) -> Result<(ReducedInstance, bool), FormatError> {
    let f: StripTableFile = serde_json::from_str(text)?;
    let graph = graph_from_file(f.graph)?;
    if graph.k() != f.k || graph.r() != f.r {
        return Err(FormatError::StripTable("graph parameters disagree with k, r".into()));
    }
    if f.vstrips.len() != 2 * f.k || f.hstrips.len() != 2 * f.k {
        return Err(FormatError::StripTable(format!("expected {} strips per axis", 2 * f.k)));
    }
    let pairs = |v: Vec<[i64; 2]>| v.into_iter().map(|[a, b]| (a, b)).collect();
    let red = ReducedInstance {
        inst,
        k: f.k,
        r: f.r,
        vstrips: pairs(f.vstrips),
        hstrips: pairs(f.hstrips),
        graph,
    };
    Ok((red, f.doubled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::build;

    #[test]
    fn instance_round_trip_is_canonical() {
        let text = r#"{"rects":[[0,1,2,3]],"hlines":[5,1,5],"vlines":[]}"#;
        let inst = instance_from_json(text).unwrap();
        let out = instance_to_json(&inst);
        assert_eq!(out, "{\"rects\":[[0,1,2,3]],\"hlines\":[1,5],\"vlines\":[]}\n");
        assert_eq!(instance_from_json(&out).unwrap(), inst);
    }

    #[test]
    fn rejects_malformed() {
        assert!(instance_from_json(r#"{"rects":[[3,1,0,0]],"hlines":[],"vlines":[]}"#).is_err());
        assert!(instance_from_json("{").is_err());
        assert!(graph_from_json(r#"{"k":1,"r":2,"edges":[[0,0]]}"#).is_err());
    }

    #[test]
    fn strip_table_round_trip() {
        let mut g = MCGraph::new(2, 2).unwrap();
        g.add_edge(0, 2).unwrap();
        let red = build(&g).unwrap();
        let text = strip_table_to_json(&red, false);
        let (back, doubled) = strip_table_from_json(&text, red.inst.clone()).unwrap();
        assert_eq!(back, red);
        assert!(!doubled);
    }

    #[test]
    fn clique_round_trip() {
        let c = MCClique { chosen: BTreeMap::from([(1, 2), (2, 1)]) };
        assert_eq!(clique_from_json(&clique_to_json(&c)).unwrap(), c);
    }
}
