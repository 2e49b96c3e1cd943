//! `pamcpp`: generate instances, solve them, check plans, benchmark against
//! the zone-agnostic baseline and draw the result.

mod bench;
mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pamcpp_core::report::{PlanFile, SolveReport};
use pamcpp_core::solver::{self, RuntimeBreakdown};
use pamcpp_core::{evaluate, generate_instance, validate_plan, CostMode, Error, Instance, Schedule};

#[derive(Parser)]
#[command(name = "pamcpp", version, about = "Priority-aware multi-robot coverage planning")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance.
    Generate(GenerateArgs),
    /// Plan paths for an instance and report metrics.
    Solve(SolveArgs),
    /// Re-evaluate a plan file against an instance.
    Evaluate(EvaluateArgs),
    /// Seeded trials of solver versus baseline.
    Bench(bench::BenchArgs),
    /// Draw an instance, optionally with a plan, as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Map size as WIDTHxHEIGHT; both must be even.
    #[arg(long, value_parser = parse_size)]
    size: (usize, usize),
    #[arg(long, default_value_t = 4)]
    zones: usize,
    #[arg(long, default_value_t = 3)]
    robots: usize,
    /// unit, or uniform for costs drawn from U(0.8, 1.2).
    #[arg(long, default_value = "unit")]
    costs: CostMode,
    /// Output file; stdout if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone, Default)]
pub struct ConfigOverrides {
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub ls_iterations: Option<usize>,
    /// cosine or static.
    #[arg(long)]
    pub schedule: Option<Schedule>,
    /// Make every robot return to its start.
    #[arg(long)]
    pub closed_tour: bool,
    /// Plan with cell traversal costs instead of step counts.
    #[arg(long)]
    pub weighted_time: bool,
}

impl ConfigOverrides {
    pub fn apply(&self, inst: &mut Instance) -> Result<(), Error> {
        let c = &mut inst.config;
        if let Some(s) = self.seed {
            c.seed = s;
        }
        if let Some(n) = self.ls_iterations {
            c.ls_iterations = n;
        }
        if let Some(s) = self.schedule {
            c.ls_schedule = s;
        }
        c.closed_tour |= self.closed_tour;
        c.weighted_time |= self.weighted_time;
        c.validate()
    }
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[command(flatten)]
    config: ConfigOverrides,
    /// Also plan and evaluate the zone-agnostic baseline.
    #[arg(long)]
    baseline: bool,
    /// Include the local-search trace in the report.
    #[arg(long)]
    trace: bool,
    /// Write zeros instead of measured stage times, for reproducible reports.
    #[arg(long)]
    zero_timings: bool,
    /// Report file; stdout if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Plan file.
    #[arg(long)]
    plan: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    instance: PathBuf,
    plan: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    instance: PathBuf,
    #[arg(long)]
    plan: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Failure with its process exit code.
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Validation(_) | Error::Syntax(_) | Error::InvalidPlan(_) | Error::ZoneFragmented(_) => 4,
            Error::PlacementFailed(_) => 3,
            _ => 5,
        };
        Self { code, message: e.to_string() }
    }
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected WIDTHxHEIGHT, got {s:?}"))?;
    let w = w.trim().parse::<usize>().map_err(|e| format!("width: {e}"))?;
    let h = h.trim().parse::<usize>().map_err(|e| format!("height: {e}"))?;
    if w % 2 != 0 || h % 2 != 0 {
        return Err(format!("dimensions must be even, got {w}x{h}"));
    }
    Ok((w, h))
}

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

pub fn load_instance(path: &Path) -> Result<Instance, Failure> {
    Ok(Instance::from_json(&read(path)?)?)
}

pub fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn cmd_generate(a: GenerateArgs) -> Result<(), Failure> {
    let inst = generate_instance(a.seed, a.size.0, a.size.1, a.zones, a.robots, a.costs).map_err(|e| match e {
        Error::Validation(v) => Failure::usage(v.to_string()),
        other => other.into(),
    })?;
    write_out(a.output.as_deref(), &inst.to_json())
}

fn cmd_solve(a: SolveArgs) -> Result<(), Failure> {
    let mut inst = load_instance(&a.instance)?;
    a.config.apply(&mut inst)?;
    let sol = solver::solve(&inst)?;
    validate_plan(&inst, &sol.plan).map_err(|e| Failure { code: 5, message: format!("solver produced an invalid plan: {e}") })?;
    let metrics = evaluate(&inst, &sol.plan)?;
    let mut report = SolveReport::new(&inst, &sol, metrics);
    if a.baseline {
        let plan = pamcpp_core::baseline_plan(&sol.hypergraph, &inst)?;
        report.metrics_baseline = Some(evaluate(&inst, &plan)?);
    }
    if a.trace {
        report.ls_trace = Some(sol.ls_trace.clone());
    }
    if a.zero_timings {
        report.runtime_breakdown = RuntimeBreakdown::default();
    }
    if let Some(p) = &a.plan {
        write_out(Some(p), &PlanFile::from_plan(&inst, &sol.plan).to_json())?;
    }
    write_out(a.output.as_deref(), &report.to_json())
}

fn cmd_evaluate(a: EvaluateArgs) -> Result<(), Failure> {
    let inst = load_instance(&a.instance)?;
    let plan = PlanFile::from_json(&read(&a.plan)?)?.into_full_plan(&inst)?;
    validate_plan(&inst, &plan)?;
    let metrics = evaluate(&inst, &plan)?;
    write_out(a.output.as_deref(), &pretty(&metrics))
}

fn cmd_render(a: RenderArgs) -> Result<(), Failure> {
    let inst = load_instance(&a.instance)?;
    let plan = match &a.plan {
        Some(p) => {
            let plan = PlanFile::from_json(&read(p)?)?.into_full_plan(&inst)?;
            validate_plan(&inst, &plan)?;
            Some(plan)
        }
        None => None,
    };
    write_out(a.output.as_deref(), &render::svg(&inst, plan.as_ref()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Evaluate(a) => cmd_evaluate(a),
        Command::Bench(a) => bench::run(a),
        Command::Render(a) => cmd_render(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
