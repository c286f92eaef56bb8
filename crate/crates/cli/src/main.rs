use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rstab_core::approx::{solve_with_budget_stats, SearchStats};
use rstab_core::exact::{opt_exact_with_nodes, ExactError, SearchBudget};
use rstab_core::generators::{
    discretization_to_stabbing, gen_mcgraph, gen_planted, gen_uniform, ColoredPointSet,
};
use rstab_core::geometry::{verify, Instance, Solution, VerifyError};
use rstab_core::io;
use rstab_core::reduction::{build, make_nondegenerate, reverse, BackMap, ReverseError};

mod bench;
mod report;

use report::{Outcome, RunReport};

#[derive(Parser)]
#[command(name = "rstab", version, about = "Rectangle stabbing with axis-parallel lines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print a JSON report.
    Solve(SolveArgs),
    /// Check that a solution stabs every rectangle.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Generate instances, graphs, or converted point sets.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Build the stabbing instance of a multicolored clique graph.
    Reduce {
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Where to write the strip table.
        #[arg(long)]
        strips: PathBuf,
        /// Apply the doubling transform so no rectangle is degenerate.
        #[arg(long)]
        nondegenerate: bool,
    },
    /// Recover a multicolored clique from a solution of a reduced instance.
    Extract {
        instance: PathBuf,
        solution: PathBuf,
        #[arg(long)]
        strips: PathBuf,
        /// Rational ε as `NUM/DEN`.
        #[arg(long, default_value = "1/1")]
        eps: String,
    },
    /// Run solvers over every `*.json` instance in a directory and emit CSV.
    Bench(bench::BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, conflicts_with = "exact")]
    approx: bool,
    #[arg(long)]
    exact: bool,
    /// Budget for the approximation.
    #[arg(short, long, required_unless_present_any = ["min", "exact"])]
    k: Option<usize>,
    /// Search the smallest successful budget up to `--kmax`.
    #[arg(long, requires = "kmax")]
    min: bool,
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long, default_value_t = 16)]
    max_size: usize,
    #[arg(long)]
    node_limit: Option<u64>,
    /// Write the solution JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit wall-clock time from the report.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Instance with a hidden stabbing set of size k.
    Planted {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        range: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the hidden solution.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Uniformly random rectangles and lines.
    Uniform {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lines: usize,
        #[arg(long, default_value_t = 100)]
        range: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random k-partite graph, optionally with a planted multicolored clique.
    Mcgraph {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        /// Cross-part edge probability as `NUM/DEN`.
        #[arg(long, default_value = "1/2")]
        prob: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        plant: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the planted clique.
        #[arg(long, requires = "plant")]
        clique: Option<PathBuf>,
    },
    /// Convert an `x,y,color` CSV into a stabbing instance.
    Discretize {
        points: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A run that completed but did not succeed (exit code 1).
#[derive(Debug)]
struct Failed;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> Result<Instance> {
    io::instance_from_json(&read(path)?).with_context(|| format!("invalid instance {}", path.display()))
}

fn load_solution(path: &Path) -> Result<Solution> {
    io::solution_from_json(&read(path)?).with_context(|| format!("invalid solution {}", path.display()))
}

fn parse_ratio(text: &str) -> Result<(u64, u64)> {
    let (n, d) = text.split_once('/').ok_or_else(|| anyhow!("expected NUM/DEN, got {text:?}"))?;
    let (n, d): (u64, u64) = (n.trim().parse()?, d.trim().parse()?);
    if d == 0 {
        bail!("denominator must be positive");
    }
    Ok((n, d))
}

fn feasible(inst: &Instance) -> bool {
    verify(inst, &Solution::from_lines(inst.all_lines())).is_ok_and(|u| u.is_empty())
}

fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

fn cmd_solve(a: SolveArgs) -> Result<Result<(), Failed>> {
    let inst = load_instance(&a.instance)?;
    let start = Instant::now();
    let mut rep = RunReport::new(command_echo(), &inst);
    let mut stats = SearchStats::default();
    let sol = if a.exact {
        let budget = SearchBudget { max_size: a.max_size, node_limit: a.node_limit };
        let (res, nodes) = opt_exact_with_nodes(&inst, budget);
        rep.nodes = Some(nodes);
        match res {
            Ok(sol) => Some(sol),
            Err(ExactError::NoSolutionWithin(_)) if !feasible(&inst) => {
                rep.outcome = Outcome::Infeasible;
                None
            }
            Err(ExactError::NoSolutionWithin(_)) => {
                rep.outcome = Outcome::NoWitness;
                None
            }
            Err(e @ ExactError::NodeLimitExceeded(_)) => {
                rep.outcome = Outcome::Error;
                rep.reason = Some(e.to_string());
                None
            }
        }
    } else if a.min {
        // Same search as `solve_min`, keeping the counters of every budget tried.
        let kmax = a.kmax.expect("clap enforces --kmax with --min");
        let mut found = None;
        for k in 0..=kmax {
            let (res, s) = solve_with_budget_stats(&inst, k);
            stats.accumulate(&s);
            if let Ok(sol) = res {
                rep.k = Some(k);
                found = Some(sol);
                break;
            }
        }
        found
    } else {
        let k = a.k.expect("clap enforces -k");
        rep.k = Some(k);
        let (res, s) = solve_with_budget_stats(&inst, k);
        stats = s;
        res.ok()
    };
    if !a.exact {
        rep.set_stats(&stats);
        if sol.is_none() {
            rep.outcome = if feasible(&inst) { Outcome::NoWitness } else { Outcome::Infeasible };
        }
    }
    if let Some(sol) = &sol {
        rep.outcome = Outcome::Solved;
        rep.size = Some(sol.len());
        if let Some(out) = &a.out {
            write(out, &io::solution_to_json(sol))?;
        }
    }
    if !a.no_timing {
        rep.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    println!("{}", rep.to_json());
    Ok(if sol.is_some() { Ok(()) } else { Err(Failed) })
}

fn cmd_verify(instance: &Path, solution: &Path) -> Result<Result<(), Failed>> {
    let inst = load_instance(instance)?;
    let sol = load_solution(solution)?;
    match verify(&inst, &sol) {
        Ok(unstabbed) if unstabbed.is_empty() => Ok(Ok(())),
        Ok(unstabbed) => {
            eprintln!("{} rectangle(s) not stabbed:", unstabbed.len());
            for r in unstabbed {
                eprintln!("  {r}");
            }
            Ok(Err(Failed))
        }
        Err(VerifyError::ForeignLines(lines)) => {
            let shown: Vec<String> = lines.iter().map(|l| l.to_string()).collect();
            eprintln!("solution uses lines that are not candidates: {}", shown.join(", "));
            Ok(Err(Failed))
        }
    }
}

fn cmd_gen(g: GenCommand) -> Result<()> {
    match g {
        GenCommand::Planted { k, n, range, seed, out, witness } => {
            let (inst, wit) = gen_planted(k, n, range, seed)?;
            emit(out.as_deref(), &io::instance_to_json(&inst))?;
            if let Some(path) = witness {
                write(&path, &io::solution_to_json(&wit.to_solution()))?;
            }
        }
        GenCommand::Uniform { n, lines, range, seed, out } => {
            emit(out.as_deref(), &io::instance_to_json(&gen_uniform(n, lines, range, seed)?))?;
        }
        GenCommand::Mcgraph { k, r, prob, seed, plant, out, clique } => {
            let (num, den) = parse_ratio(&prob)?;
            let (num, den) = (u32::try_from(num)?, u32::try_from(den)?);
            let (g, c) = gen_mcgraph(k, r, num, den, seed, plant)?;
            emit(out.as_deref(), &io::graph_to_json(&g))?;
            if let (Some(path), Some(c)) = (clique, c) {
                write(&path, &io::clique_to_json(&c))?;
            }
        }
        GenCommand::Discretize { points, out } => {
            let file = fs::File::open(&points).with_context(|| format!("cannot read {}", points.display()))?;
            let pts = ColoredPointSet::from_csv(file)?;
            emit(out.as_deref(), &io::instance_to_json(&discretization_to_stabbing(&pts)?))?;
        }
    }
    Ok(())
}

fn cmd_reduce(graph: &Path, out: &Path, strips: &Path, nondegenerate: bool) -> Result<()> {
    let g = io::graph_from_json(&read(graph)?).with_context(|| format!("invalid graph {}", graph.display()))?;
    let intra = g.intra_part_edges();
    if intra > 0 {
        eprintln!("warning: ignoring {intra} edge(s) inside a part");
    }
    let red = build(&g)?;
    let inst = if nondegenerate { make_nondegenerate(&red.inst)?.0 } else { red.inst.clone() };
    write(out, &io::instance_to_json(&inst))?;
    write(strips, &io::strip_table_to_json(&red, nondegenerate))
}

fn cmd_extract(instance: &Path, solution: &Path, strips: &Path, eps: &str) -> Result<Result<(), Failed>> {
    let inst = load_instance(instance)?;
    let mut sol = load_solution(solution)?;
    let (eps_num, eps_den) = parse_ratio(eps)?;
    let (mut red, doubled) = io::strip_table_from_json(&read(strips)?, inst.clone())?;
    if doubled {
        let original = build(&red.graph)?;
        if make_nondegenerate(&original.inst)?.0 != inst {
            bail!("instance does not match the strip table");
        }
        // Solutions of the doubled instance map back before extraction.
        if verify(&inst, &sol).map_or(true, |u| !u.is_empty()) {
            eprintln!("not applicable: solution does not stab the instance");
            return Ok(Err(Failed));
        }
        sol = BackMap.apply(&sol);
        red = original;
    }
    match reverse(&red, &sol, eps_num, eps_den) {
        Ok(c) => {
            print!("{}", io::clique_to_json(&c));
            Ok(Ok(()))
        }
        Err(ReverseError::NotApplicable(e)) => {
            eprintln!("not applicable: {e}");
            Ok(Err(Failed))
        }
        Err(e) => Err(anyhow!("malformed reduced instance: {e}")),
    }
}

fn run(cli: Cli) -> Result<Result<(), Failed>> {
    match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Verify { instance, solution } => cmd_verify(&instance, &solution),
        Command::Gen(g) => cmd_gen(g).map(Ok),
        Command::Reduce { graph, out, strips, nondegenerate } => {
            cmd_reduce(&graph, &out, &strips, nondegenerate).map(Ok)
        }
        Command::Extract { instance, solution, strips, eps } => {
            cmd_extract(&instance, &solution, &strips, &eps)
        }
        Command::Bench(a) => bench::run(a).map(Ok),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failed)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
