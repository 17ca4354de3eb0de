//! Command-line interface: `ipstab run`, `ipstab sweep`, `ipstab oracle`.

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use ipstab_core::oracle;
use ipstab_core::stability::max_violation;
use ipstab_core::Objective;

use crate::error::{AppError, AppResult};
use crate::exec::{evaluate, parse_objective, run_algo, Algo};
use crate::instance::{Instance, InstanceSpec, MetricKind};
use crate::io::{HeaderMode, LoadOptions};
use crate::report::{
    self, AlgorithmAlpha, ConfigEcho, OracleReport, RunReport, SeedRow, SweepMetrics, SweepRow,
};

#[derive(Parser)]
#[command(
    name = "ipstab",
    version,
    about = "Individually preference-stable clustering experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Run one algorithm on one instance and write a JSON report.
    Run(RunArgs),
    /// Run algorithms across a range of k and write a CSV table.
    Sweep(SweepArgs),
    /// Exhaustively search a small instance for the optimal stability factor.
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
pub struct InstanceArgs {
    /// Input data file (CSV points, CSV matrix, or graph edge list).
    #[arg(long, value_name = "PATH", conflicts_with = "gen")]
    pub input: Option<PathBuf>,
    /// Synthetic instance: random-euclidean | random-tree | star-path |
    /// kmeanspp-hard | separated-blobs.
    #[arg(long, value_name = "KIND")]
    pub gen: Option<String>,
    /// Generator parameters, e.g. "n=200,dim=2,seed=1".
    #[arg(long, value_name = "K=V,...", default_value = "")]
    pub gen_args: String,
    /// Interpretation of --input: euclidean | matrix | graph.
    #[arg(long, default_value = "euclidean")]
    pub metric: String,
    /// CSV header handling: auto | yes | no.
    #[arg(long, default_value = "auto")]
    pub header: String,
    /// Drop CSV columns with any non-numeric cell instead of failing.
    #[arg(long)]
    pub drop_non_numeric: bool,
    /// Comma-separated allowlist of CSV column indices.
    #[arg(long, value_name = "IDX,...")]
    pub columns: Option<String>,
    /// Min-max normalize each kept CSV column to [0, 1].
    #[arg(long)]
    pub normalize: bool,
}

impl InstanceArgs {
    pub fn spec(&self) -> AppResult<InstanceSpec> {
        let metric: MetricKind = self.metric.parse()?;
        let header: HeaderMode = self.header.parse()?;
        let columns = match &self.columns {
            None => None,
            Some(raw) => Some(
                raw.split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse::<usize>().map_err(|_| {
                            AppError::Config(format!("bad column index '{s}' in --columns"))
                        })
                    })
                    .collect::<AppResult<Vec<usize>>>()?,
            ),
        };
        let options = LoadOptions {
            header,
            drop_non_numeric: self.drop_non_numeric,
            columns,
            normalize: self.normalize,
        };
        InstanceSpec::from_flags(
            self.input.as_deref(),
            self.gen.as_deref(),
            &self.gen_args,
            metric,
            options,
        )
    }
}

#[derive(Args, Debug)]
pub struct SeedArgs {
    /// Seed for stochastic algorithms.
    #[arg(long, default_value_t = 0, conflicts_with = "seeds")]
    pub seed: u64,
    /// Inclusive seed range "A..B"; runs once per seed and reports the mean.
    #[arg(long, value_name = "A..B")]
    pub seeds: Option<String>,
    /// With --seed, run seeds seed..seed+repeats-1.
    #[arg(long, default_value_t = 1)]
    pub repeats: usize,
}

impl SeedArgs {
    pub fn resolve(&self) -> AppResult<Vec<u64>> {
        if let Some(range) = &self.seeds {
            let (a, b) = range.split_once("..").ok_or_else(|| {
                AppError::Config(format!("bad --seeds '{range}' (expected A..B, inclusive)"))
            })?;
            let a: u64 = a.trim().parse().map_err(|_| {
                AppError::Config(format!("bad --seeds start '{a}'"))
            })?;
            let b: u64 = b.trim().parse().map_err(|_| {
                AppError::Config(format!("bad --seeds end '{b}'"))
            })?;
            if b < a {
                return Err(AppError::Config(format!("empty seed range {a}..{b}")));
            }
            Ok((a..=b).collect())
        } else if self.repeats == 0 {
            Err(AppError::Config("--repeats must be at least 1".into()))
        } else {
            Ok((self.seed..self.seed + self.repeats as u64).collect())
        }
    }
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Algorithm: carve | minip | maxip | kmeanspp | random-color.
    #[arg(long)]
    pub algo: String,
    /// Number of clusters.
    #[arg(long)]
    pub k: usize,
    /// Objective(s): avg | min | max. Repeatable; one report per objective.
    #[arg(long = "objective", value_name = "OBJ")]
    pub objectives: Vec<String>,
    #[command(flatten)]
    pub seeds: SeedArgs,
    /// First center for the greedy k-center based algorithms.
    #[arg(long, default_value_t = 0)]
    pub first: usize,
    /// Output path; multiple objectives get "-<obj>" suffixes. Stdout when
    /// omitted.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Include the per-point violation vector (first seed) in the report.
    #[arg(long)]
    pub per_point: bool,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Algorithm(s); repeatable.
    #[arg(long = "algo", value_name = "NAME", required = true)]
    pub algos: Vec<String>,
    /// Single k (alternative to a range).
    #[arg(long, conflicts_with_all = ["k_min", "k_max"])]
    pub k: Option<usize>,
    #[arg(long, requires = "k_max")]
    pub k_min: Option<usize>,
    #[arg(long, requires = "k_min")]
    pub k_max: Option<usize>,
    /// Objective(s): avg | min | max. Repeatable.
    #[arg(long = "objective", value_name = "OBJ")]
    pub objectives: Vec<String>,
    #[command(flatten)]
    pub seeds: SeedArgs,
    #[arg(long, default_value_t = 0)]
    pub first: usize,
    /// Parallel row workers.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Output path for the CSV table; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Number of clusters.
    #[arg(long)]
    pub k: usize,
    /// Objective: avg | min | max.
    #[arg(long, default_value = "avg")]
    pub objective: String,
    /// Seed used for the stochastic algorithms in the comparison.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub first: usize,
    /// JSON output path; a human-readable summary always goes to stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

fn parse_objectives(raw: &[String]) -> AppResult<Vec<Objective>> {
    let mut objectives = Vec::new();
    if raw.is_empty() {
        objectives.push(Objective::Average);
    }
    for s in raw {
        let o = parse_objective(s)?;
        if !objectives.contains(&o) {
            objectives.push(o);
        }
    }
    Ok(objectives)
}

/// Execute one seeded run and package its metrics.
fn seed_row(
    instance: &Instance,
    algo: Algo,
    k: usize,
    seed: u64,
    first: usize,
    objective: Objective,
) -> AppResult<(SeedRow, Vec<f64>)> {
    let start = Instant::now();
    let run = run_algo(algo, instance, k, seed, first)?;
    let eval = evaluate(instance, &run, objective)?;
    let runtime_ms = start.elapsed().as_secs_f64() * 1000.0;
    Ok((
        SeedRow {
            seed,
            max_violation: eval.stability.max_vi,
            mean_violation: eval.stability.mean_vi,
            num_unstable: eval.stability.num_unstable,
            avg_within_cost: eval.costs.avg_within_cost,
            k_center_cost: eval.costs.k_center_cost,
            k_means_cost: eval.costs.k_means_cost,
            runtime_ms,
        },
        eval.stability.vi,
    ))
}

pub fn cmd_run(args: &RunArgs) -> AppResult<()> {
    let spec = args.instance.spec()?;
    let algo: Algo = args.algo.parse()?;
    algo.check_compatible(&spec)?;
    let objectives = parse_objectives(&args.objectives)?;
    let seeds = args.seeds.resolve()?;
    let instance = spec.materialize()?;

    for objective in &objectives {
        let mut rows = Vec::with_capacity(seeds.len());
        let mut per_point = None;
        for &seed in &seeds {
            let (row, vi) = seed_row(&instance, algo, args.k, seed, args.first, *objective)?;
            if args.per_point && per_point.is_none() {
                per_point = Some(vi);
            }
            rows.push(row);
        }
        let config = ConfigEcho {
            command: "run".into(),
            algorithm: algo.name().into(),
            k: args.k,
            objective: objective.name().into(),
            seeds: seeds.clone(),
            repeats: args.seeds.repeats,
            first_center: args.first,
            version: report::VERSION.into(),
        };
        let run_report =
            RunReport::from_rows(config, instance.provenance.clone(), rows, per_point);
        let path = objective_path(args.out.as_deref(), objective.name(), objectives.len());
        report::emit(path.as_deref(), &report::to_json(&run_report))?;
    }
    Ok(())
}

/// Suffix the output path with the objective name when several reports are
/// written.
fn objective_path(
    out: Option<&std::path::Path>,
    objective: &str,
    n_objectives: usize,
) -> Option<PathBuf> {
    let out = out?;
    if n_objectives == 1 {
        return Some(out.to_owned());
    }
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("report");
    let ext = out.extension().and_then(|s| s.to_str()).unwrap_or("json");
    Some(out.with_file_name(format!("{stem}-{objective}.{ext}")))
}

pub fn cmd_sweep(args: &SweepArgs) -> AppResult<()> {
    let spec = args.instance.spec()?;
    let algos: Vec<Algo> = args
        .algos
        .iter()
        .map(|s| s.parse())
        .collect::<AppResult<_>>()?;
    for algo in &algos {
        algo.check_compatible(&spec)?;
    }
    let objectives = parse_objectives(&args.objectives)?;
    let seeds = args.seeds.resolve()?;
    let ks: Vec<usize> = match (args.k, args.k_min, args.k_max) {
        (Some(k), _, _) => vec![k],
        (None, Some(a), Some(b)) => (a..=b).collect(), // empty when b < a
        _ => {
            return Err(AppError::Config(
                "sweep needs --k or both --k-min and --k-max".into(),
            ))
        }
    };
    if args.jobs == 0 {
        return Err(AppError::Config("--jobs must be at least 1".into()));
    }
    let instance = spec.materialize()?;

    // One task per (k, algorithm); each evaluates every objective.
    let tasks: Vec<(usize, Algo)> = ks
        .iter()
        .flat_map(|&k| algos.iter().map(move |&a| (k, a)))
        .collect();
    let results: Vec<OnceLock<Vec<SweepRow>>> = tasks.iter().map(|_| OnceLock::new()).collect();
    let cursor = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..args.jobs.min(tasks.len().max(1)) {
            scope.spawn(|| loop {
                let i = cursor.fetch_add(1, Ordering::Relaxed);
                if i >= tasks.len() {
                    break;
                }
                let (k, algo) = tasks[i];
                let rows = sweep_task(&instance, algo, k, &seeds, args.first, &objectives);
                results[i].set(rows).expect("each task runs once");
            });
        }
    });

    let rows: Vec<SweepRow> = results
        .into_iter()
        .flat_map(|slot| slot.into_inner().expect("all tasks completed"))
        .collect();
    let table = report::render_sweep(&instance.provenance, &seeds, &rows);
    report::emit(args.out.as_deref(), &table)
}

fn sweep_task(
    instance: &Instance,
    algo: Algo,
    k: usize,
    seeds: &[u64],
    first: usize,
    objectives: &[Objective],
) -> Vec<SweepRow> {
    let mut per_objective: Vec<Result<Vec<SeedRow>, String>> =
        vec![Ok(Vec::new()); objectives.len()];
    for &seed in seeds {
        for (slot, objective) in per_objective.iter_mut().zip(objectives) {
            let Ok(rows) = slot else { break };
            match seed_row(instance, algo, k, seed, first, *objective) {
                Ok((row, _)) => rows.push(row),
                Err(e) => *slot = Err(e.to_string()),
            }
        }
    }
    objectives
        .iter()
        .zip(per_objective)
        .map(|(objective, outcome)| SweepRow {
            k,
            algorithm: algo.name().into(),
            objective: objective.name().into(),
            outcome: outcome.map(|rows| {
                let n = rows.len() as f64;
                let mean =
                    |f: &dyn Fn(&SeedRow) -> f64| rows.iter().map(f).sum::<f64>() / n;
                SweepMetrics {
                    max_violation: mean(&|r| r.max_violation),
                    mean_violation: mean(&|r| r.mean_violation),
                    num_unstable: mean(&|r| r.num_unstable as f64),
                    avg_within_cost: mean(&|r| r.avg_within_cost),
                    k_center_cost: rows
                        .iter()
                        .all(|r| r.k_center_cost.is_some())
                        .then(|| mean(&|r| r.k_center_cost.unwrap())),
                    k_means_cost: mean(&|r| r.k_means_cost),
                    runtime_ms: mean(&|r| r.runtime_ms),
                }
            }),
        })
        .collect()
}

/// Size cap for the oracle; `IPSTAB_MAX_N` overrides the built-in default.
pub fn oracle_cap() -> AppResult<usize> {
    match std::env::var("IPSTAB_MAX_N") {
        Err(_) => Ok(oracle::DEFAULT_MAX_N),
        Ok(raw) => raw
            .parse()
            .map_err(|_| AppError::Config(format!("bad IPSTAB_MAX_N value '{raw}'"))),
    }
}

pub fn cmd_oracle(args: &OracleArgs) -> AppResult<()> {
    let spec = args.instance.spec()?;
    let objective = parse_objective(&args.objective)?;
    let cap = oracle_cap()?;
    let instance = spec.materialize()?;

    let start = Instant::now();
    let result = oracle::optimal_alpha_capped(&instance.space, args.k, objective, cap)?;

    let mut algorithms = Vec::new();
    for algo in Algo::ALL {
        let applicable = match algo {
            Algo::KMeansPp => instance.points.is_some(),
            Algo::RandomColor => spec.is_graph(),
            _ => true,
        };
        if !applicable {
            continue;
        }
        let outcome = run_algo(algo, &instance, args.k, args.seed, args.first)
            .map(|run| max_violation(&instance.space, &run.clustering, objective));
        algorithms.push(match outcome {
            Ok(mv) => AlgorithmAlpha {
                algorithm: algo.name().into(),
                max_violation: Some(mv),
                error: None,
            },
            Err(e) => AlgorithmAlpha {
                algorithm: algo.name().into(),
                max_violation: None,
                error: Some(e.to_string()),
            },
        });
    }
    let runtime_ms = start.elapsed().as_secs_f64() * 1000.0;

    let oracle_report = OracleReport {
        config: ConfigEcho {
            command: "oracle".into(),
            algorithm: "oracle".into(),
            k: args.k,
            objective: objective.name().into(),
            seeds: vec![args.seed],
            repeats: 1,
            first_center: args.first,
            version: report::VERSION.into(),
        },
        instance: instance.provenance.clone(),
        k: args.k,
        objective: objective.name().into(),
        alpha_star: result.alpha_star,
        best_clustering: result.best.members().to_vec(),
        partitions_examined: result.partitions_examined,
        algorithms,
        runtime_ms,
    };

    println!(
        "alpha* = {} over {} partitions ({}, k = {}, objective = {})",
        oracle_report.alpha_star,
        oracle_report.partitions_examined,
        oracle_report.instance,
        args.k,
        oracle_report.objective
    );
    println!("best clustering: {:?}", oracle_report.best_clustering);
    for algo in &oracle_report.algorithms {
        match (algo.max_violation, &algo.error) {
            (Some(mv), _) => println!("  {:<12} MaxVi = {mv}", algo.algorithm),
            (None, Some(e)) => println!("  {:<12} failed: {e}", algo.algorithm),
            _ => {}
        }
    }
    if args.out.is_some() {
        report::emit(args.out.as_deref(), &report::to_json(&oracle_report))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_ranges_resolve() {
        let args = SeedArgs {
            seed: 0,
            seeds: Some("0..9".into()),
            repeats: 1,
        };
        assert_eq!(args.resolve().unwrap(), (0..=9).collect::<Vec<u64>>());
        let args = SeedArgs {
            seed: 5,
            seeds: None,
            repeats: 3,
        };
        assert_eq!(args.resolve().unwrap(), vec![5, 6, 7]);
        let bad = SeedArgs {
            seed: 0,
            seeds: Some("9..2".into()),
            repeats: 1,
        };
        assert!(bad.resolve().is_err());
    }

    #[test]
    fn objective_lists_default_and_dedup() {
        assert_eq!(parse_objectives(&[]).unwrap(), vec![Objective::Average]);
        let objs = parse_objectives(&["min".into(), "avg".into(), "min".into()]).unwrap();
        assert_eq!(objs, vec![Objective::Minimum, Objective::Average]);
        assert!(parse_objectives(&["median".into()]).is_err());
    }

    #[test]
    fn objective_paths_suffix_only_for_multiple() {
        let p = PathBuf::from("out/report.json");
        assert_eq!(
            objective_path(Some(&p), "avg", 1).unwrap(),
            PathBuf::from("out/report.json")
        );
        assert_eq!(
            objective_path(Some(&p), "min", 2).unwrap(),
            PathBuf::from("out/report-min.json")
        );
        assert_eq!(objective_path(None, "avg", 1), None);
    }
}
