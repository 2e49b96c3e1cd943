//! Seeded solver-versus-baseline trials, aggregated per sweep value.

use std::path::PathBuf;

use clap::Args;
use pamcpp_core::generate::resample_robots;
use pamcpp_core::{generate_instance, solver, CostMode, Instance, Metrics};
use rayon::prelude::*;
use serde::Serialize;

use crate::{load_instance, parse_size, write_out, ConfigOverrides, Failure};

#[derive(Args)]
pub struct BenchArgs {
    /// Fixed map and zones; robot starts are redrawn per trial.
    #[arg(long, conflicts_with = "size")]
    instance: Option<PathBuf>,
    /// Generate a fresh WIDTHxHEIGHT instance per trial instead.
    #[arg(long, value_parser = parse_size)]
    size: Option<(usize, usize)>,
    #[arg(long, default_value_t = 4)]
    zones: usize,
    #[arg(long, default_value_t = 3)]
    robots: usize,
    #[arg(long, default_value = "unit")]
    costs: CostMode,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Trial t uses base-seed + t.
    #[arg(long = "base-seed", default_value_t = 0)]
    base_seed: u64,
    /// Vary one parameter, e.g. robots=2,4,6,8 or zones=2,4.
    #[arg(long)]
    sweep: Option<String>,
    #[command(flatten)]
    config: ConfigOverrides,
    /// Emit JSON rows instead of a text table.
    #[arg(long)]
    json: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Stat {
    pub mean: f64,
    pub std: f64,
}

impl Stat {
    fn of(xs: &[f64]) -> Self {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = if xs.len() > 1 { xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
        Self { mean, std: var.sqrt() }
    }
}

impl std::fmt::Display for Stat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:.2} ± {:.2}", self.mean, self.std)
    }
}

/// Solver and baseline statistics for one metric; improvement is
/// `(baseline - solver) / baseline` per trial, in percent.
#[derive(Debug, Serialize)]
pub struct MetricRow {
    pub solver: Stat,
    pub baseline: Stat,
    pub improvement_pct: Stat,
}

#[derive(Debug, Serialize)]
pub struct Row {
    pub robots: usize,
    pub zones: usize,
    pub trials: usize,
    pub weighted_latency: MetricRow,
    pub makespan: MetricRow,
    pub mmr: MetricRow,
}

enum Sweep {
    Robots,
    Zones,
}

fn parse_sweep(s: &str) -> Result<(Sweep, Vec<usize>), Failure> {
    let (key, values) = s.split_once('=').ok_or_else(|| Failure::usage(format!("bad sweep {s:?}, expected name=v1,v2")))?;
    let which = match key.trim() {
        "robots" => Sweep::Robots,
        "zones" => Sweep::Zones,
        other => return Err(Failure::usage(format!("cannot sweep {other:?} (robots or zones)"))),
    };
    let values = values
        .split(',')
        .map(|v| v.trim().parse::<usize>().map_err(|e| Failure::usage(format!("sweep value {v:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((which, values))
}

fn metric_row(pairs: &[(Metrics, Metrics)], f: impl Fn(&Metrics) -> f64) -> MetricRow {
    let s: Vec<f64> = pairs.iter().map(|(a, _)| f(a)).collect();
    let b: Vec<f64> = pairs.iter().map(|(_, b)| f(b)).collect();
    let imp: Vec<f64> = s.iter().zip(&b).map(|(s, b)| if *b == 0.0 { 0.0 } else { 100.0 * (b - s) / b }).collect();
    MetricRow { solver: Stat::of(&s), baseline: Stat::of(&b), improvement_pct: Stat::of(&imp) }
}

pub fn run(a: BenchArgs) -> Result<(), Failure> {
    if a.trials == 0 {
        return Err(Failure::usage("--trials must be positive"));
    }
    let base = a.instance.as_deref().map(load_instance).transpose()?;
    if base.is_none() && a.size.is_none() {
        return Err(Failure::usage("give --instance or --size"));
    }
    let (sweep, values) = match &a.sweep {
        Some(s) => parse_sweep(s)?,
        None => (Sweep::Robots, vec![base.as_ref().map_or(a.robots, |b| b.robots.len())]),
    };
    if base.is_some() && matches!(sweep, Sweep::Zones) {
        return Err(Failure::usage("zone sweeps need --size"));
    }
    let mut rows = Vec::new();
    for v in values {
        let (robots, zones) = match sweep {
            Sweep::Robots => (v, base.as_ref().map_or(a.zones, |b| b.zones.len())),
            Sweep::Zones => (a.robots, v),
        };
        let trial = |t: usize| -> Result<(Metrics, Metrics), Failure> {
            let seed = a.base_seed + t as u64;
            let mut inst: Instance = match (&base, a.size) {
                (Some(b), _) => resample_robots(b, robots, seed)?,
                (None, Some((w, h))) => generate_instance(seed, w, h, zones, robots, a.costs)?,
                (None, None) => unreachable!("checked above"),
            };
            a.config.apply(&mut inst)?;
            let (_, m, _, b) = solver::solve_with_baseline(&inst)?;
            Ok((m, b))
        };
        let pairs = (0..a.trials).into_par_iter().map(trial).collect::<Result<Vec<_>, _>>()?;
        rows.push(Row {
            robots,
            zones,
            trials: a.trials,
            weighted_latency: metric_row(&pairs, |m| m.weighted_latency),
            makespan: metric_row(&pairs, |m| m.makespan as f64),
            mmr: metric_row(&pairs, |m| m.mmr),
        });
    }
    let text = if a.json {
        let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
        s.push('\n');
        s
    } else {
        table(&rows)
    };
    write_out(a.output.as_deref(), &text)
}

fn table(rows: &[Row]) -> String {
    let mut out = String::from(
        "robots zones trials | latency solver | latency baseline | impr % | makespan solver | makespan baseline | impr % | mmr solver | mmr baseline\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{} {} {} | {} | {} | {} | {} | {} | {} | {} | {}\n",
            r.robots,
            r.zones,
            r.trials,
            r.weighted_latency.solver,
            r.weighted_latency.baseline,
            r.weighted_latency.improvement_pct,
            r.makespan.solver,
            r.makespan.baseline,
            r.makespan.improvement_pct,
            r.mmr.solver,
            r.mmr.baseline,
        ));
    }
    out
}
