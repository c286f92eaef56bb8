use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use rayon::prelude::*;
use rstab_core::approx::{solve_with_budget_stats, SearchStats};
use rstab_core::exact::{opt_exact_with_nodes, SearchBudget};
use rstab_core::io::instance_from_json;
use rstab_core::Instance;
use serde::Serialize;

use crate::report::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Solvers {
    Approx,
    Exact,
    Both,
}

#[derive(Args)]
pub struct BenchArgs {
    dir: PathBuf,
    #[arg(long, value_enum, default_value_t = Solvers::Both)]
    solver: Solvers,
    /// Largest budget tried by the approximation.
    #[arg(long, default_value_t = 8)]
    kmax: usize,
    /// Largest solution size searched by the exact solver.
    #[arg(long, default_value_t = 12)]
    max_size: usize,
    #[arg(long)]
    node_limit: Option<u64>,
    /// Worker threads; rows are sorted before output either way.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Per-run CSV; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Approximation sizes grouped by budget.
    #[arg(long)]
    summary: Option<PathBuf>,
    #[arg(long)]
    no_timing: bool,
}

#[derive(Debug, Clone, Serialize)]
struct Row {
    instance: String,
    solver: &'static str,
    rects: Option<usize>,
    lines: Option<usize>,
    outcome: &'static str,
    k: Option<usize>,
    size: Option<usize>,
    ratio: Option<String>,
    wall_ms: Option<String>,
    splits: Option<u64>,
    vertical_guesses: Option<u64>,
    horizontal_guesses: Option<u64>,
    sat_calls: Option<u64>,
    nodes: Option<u64>,
}

impl Row {
    fn new(instance: &str, solver: &'static str) -> Self {
        Row {
            instance: instance.to_string(),
            solver,
            rects: None,
            lines: None,
            outcome: Outcome::Error.as_str(),
            k: None,
            size: None,
            ratio: None,
            wall_ms: None,
            splits: None,
            vertical_guesses: None,
            horizontal_guesses: None,
            sat_calls: None,
            nodes: None,
        }
    }
}

fn approx_row(name: &str, inst: &Instance, a: &BenchArgs) -> Row {
    let mut row = Row::new(name, "approx");
    let start = Instant::now();
    let mut stats = SearchStats::default();
    row.outcome = Outcome::NoWitness.as_str();
    for k in 0..=a.kmax {
        let (res, s) = solve_with_budget_stats(inst, k);
        stats.accumulate(&s);
        if let Ok(sol) = res {
            row.outcome = Outcome::Solved.as_str();
            row.k = Some(k);
            row.size = Some(sol.len());
            break;
        }
    }
    row.splits = Some(stats.splits);
    row.vertical_guesses = Some(stats.vertical_guesses);
    row.horizontal_guesses = Some(stats.horizontal_guesses);
    row.sat_calls = Some(stats.sat_calls);
    if !a.no_timing {
        row.wall_ms = Some(format!("{:.3}", start.elapsed().as_secs_f64() * 1e3));
    }
    row
}

fn exact_row(name: &str, inst: &Instance, a: &BenchArgs) -> Row {
    let mut row = Row::new(name, "exact");
    let start = Instant::now();
    let (res, nodes) = opt_exact_with_nodes(inst, SearchBudget { max_size: a.max_size, node_limit: a.node_limit });
    row.nodes = Some(nodes);
    match res {
        Ok(sol) => {
            row.outcome = Outcome::Solved.as_str();
            row.size = Some(sol.len());
        }
        Err(rstab_core::exact::ExactError::NoSolutionWithin(_)) => row.outcome = Outcome::NoWitness.as_str(),
        Err(_) => row.outcome = Outcome::Error.as_str(),
    }
    if !a.no_timing {
        row.wall_ms = Some(format!("{:.3}", start.elapsed().as_secs_f64() * 1e3));
    }
    row
}

fn rows_for(path: &Path, a: &BenchArgs) -> Vec<Row> {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let solvers: &[&'static str] = match a.solver {
        Solvers::Approx => &["approx"],
        Solvers::Exact => &["exact"],
        Solvers::Both => &["approx", "exact"],
    };
    let inst = match fs::read_to_string(path).map_err(anyhow::Error::from).and_then(|t| Ok(instance_from_json(&t)?)) {
        Ok(inst) => inst,
        Err(_) => return solvers.iter().map(|s| Row::new(&name, s)).collect(),
    };
    let mut rows: Vec<Row> = solvers
        .iter()
        .map(|&s| if s == "approx" { approx_row(&name, &inst, a) } else { exact_row(&name, &inst, a) })
        .collect();
    for row in &mut rows {
        row.rects = Some(inst.rects.len());
        row.lines = Some(inst.num_lines());
    }
    let opt = rows.iter().find(|r| r.solver == "exact").and_then(|r| r.size);
    if let (Some(opt), Some(row)) = (opt, rows.iter_mut().find(|r| r.solver == "approx")) {
        if let (Some(size), true) = (row.size, opt > 0) {
            row.ratio = Some(format!("{:.4}", size as f64 / opt as f64));
        }
    }
    rows
}

#[derive(Serialize)]
struct SummaryRow {
    k: usize,
    instances: usize,
    max_size: usize,
    bound: usize,
    max_ratio: Option<String>,
}

fn write_csv<T: Serialize>(rows: &[T], out: Option<&Path>, header: &[&str]) -> Result<()> {
    let mut buf = Vec::new();
    {
        let mut w = csv::WriterBuilder::new().has_headers(!rows.is_empty()).from_writer(&mut buf);
        if rows.is_empty() {
            w.write_record(header)?;
        }
        for r in rows {
            w.serialize(r)?;
        }
        w.flush()?;
    }
    match out {
        Some(path) => fs::write(path, &buf).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{}", String::from_utf8(buf)?);
            Ok(())
        }
    }
}

const ROW_HEADER: &[&str] = &[
    "instance", "solver", "rects", "lines", "outcome", "k", "size", "ratio", "wall_ms", "splits",
    "vertical_guesses", "horizontal_guesses", "sat_calls", "nodes",
];
const SUMMARY_HEADER: &[&str] = &["k", "instances", "max_size", "bound", "max_ratio"];

pub fn run(a: BenchArgs) -> Result<()> {
    let mut files: Vec<PathBuf> = fs::read_dir(&a.dir)
        .with_context(|| format!("cannot read {}", a.dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(a.jobs.max(1)).build()?;
    let mut rows: Vec<Row> =
        pool.install(|| files.par_iter().flat_map_iter(|p| rows_for(p, &a)).collect());
    rows.sort_by(|x, y| (&x.instance, x.solver).cmp(&(&y.instance, y.solver)));
    write_csv(&rows, a.out.as_deref(), ROW_HEADER)?;

    if let Some(path) = &a.summary {
        let mut by_k: BTreeMap<usize, SummaryRow> = BTreeMap::new();
        for r in rows.iter().filter(|r| r.solver == "approx") {
            let (Some(k), Some(size)) = (r.k, r.size) else { continue };
            let e = by_k.entry(k).or_insert(SummaryRow { k, instances: 0, max_size: 0, bound: 7 * k / 4, max_ratio: None });
            e.instances += 1;
            e.max_size = e.max_size.max(size);
            if let Some(ratio) = &r.ratio {
                let better = e.max_ratio.as_ref().is_none_or(|m| ratio.parse::<f64>().ok() > m.parse::<f64>().ok());
                if better {
                    e.max_ratio = Some(ratio.clone());
                }
            }
        }
        let summary: Vec<SummaryRow> = by_k.into_values().collect();
        write_csv(&summary, Some(path), SUMMARY_HEADER)?;
    }
    Ok(())
}
