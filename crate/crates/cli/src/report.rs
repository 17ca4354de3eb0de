//! Report schemas: JSON run reports, the sweep CSV table, and the oracle
//! report. Reports are self-describing (config echo, instance provenance,
//! seeds, library version) and byte-stable across runs except for the
//! `runtime_ms` fields.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{AppError, AppResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Echo of the run configuration embedded in every report.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub command: String,
    pub algorithm: String,
    pub k: usize,
    pub objective: String,
    pub seeds: Vec<u64>,
    pub repeats: usize,
    pub first_center: usize,
    pub version: String,
}

/// Metrics of a single seeded execution.
#[derive(Debug, Clone, Serialize)]
pub struct SeedRow {
    pub seed: u64,
    pub max_violation: f64,
    pub mean_violation: f64,
    pub num_unstable: usize,
    pub avg_within_cost: f64,
    pub k_center_cost: Option<f64>,
    pub k_means_cost: f64,
    pub runtime_ms: f64,
}

/// One `run` report: top-level metrics are means across the seed rows (for a
/// single seed they coincide with that row).
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub config: ConfigEcho,
    pub instance: String,
    pub algorithm: String,
    pub k: usize,
    pub objective: String,
    pub max_violation: f64,
    pub mean_violation: f64,
    pub num_unstable: f64,
    pub avg_within_cost: f64,
    pub k_center_cost: Option<f64>,
    pub k_means_cost: f64,
    pub runtime_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_point_violations: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_seed: Option<Vec<SeedRow>>,
}

impl RunReport {
    /// Aggregate seed rows into the top-level means.
    pub fn from_rows(
        config: ConfigEcho,
        instance: String,
        rows: Vec<SeedRow>,
        per_point: Option<Vec<f64>>,
    ) -> RunReport {
        let n = rows.len() as f64;
        let mean = |f: &dyn Fn(&SeedRow) -> f64| rows.iter().map(f).sum::<f64>() / n;
        let k_center = if rows.iter().all(|r| r.k_center_cost.is_some()) {
            Some(rows.iter().map(|r| r.k_center_cost.unwrap()).sum::<f64>() / n)
        } else {
            None
        };
        RunReport {
            instance,
            algorithm: config.algorithm.clone(),
            k: config.k,
            objective: config.objective.clone(),
            max_violation: mean(&|r| r.max_violation),
            mean_violation: mean(&|r| r.mean_violation),
            num_unstable: mean(&|r| r.num_unstable as f64),
            avg_within_cost: mean(&|r| r.avg_within_cost),
            k_center_cost: k_center,
            k_means_cost: mean(&|r| r.k_means_cost),
            runtime_ms: mean(&|r| r.runtime_ms),
            per_point_violations: per_point,
            per_seed: if rows.len() > 1 { Some(rows) } else { None },
            config,
        }
    }
}

/// One row of the sweep table.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub k: usize,
    pub algorithm: String,
    pub objective: String,
    pub outcome: Result<SweepMetrics, String>,
}

#[derive(Debug, Clone)]
pub struct SweepMetrics {
    pub max_violation: f64,
    pub mean_violation: f64,
    pub num_unstable: f64,
    pub avg_within_cost: f64,
    pub k_center_cost: Option<f64>,
    pub k_means_cost: f64,
    pub runtime_ms: f64,
}

pub const SWEEP_COLUMNS: &str =
    "k,algorithm,objective,max_violation,mean_violation,num_unstable,avg_within_cost,k_center_cost,k_means_cost,runtime_ms,error";

/// Render the sweep table: `#`-prefixed provenance comments, a column
/// header, then one row per (k, algorithm, objective) in deterministic
/// order. Failed rows carry the error message in the last column.
pub fn render_sweep(instance: &str, seeds: &[u64], rows: &[SweepRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!("# ipstab sweep v{VERSION}\n"));
    out.push_str(&format!("# instance: {instance}\n"));
    out.push_str(&format!(
        "# seeds: {seeds:?} (metrics are means across seeds)\n"
    ));
    out.push_str("# empty metric cells indicate the row failed; see the error column\n");
    out.push_str(SWEEP_COLUMNS);
    out.push('\n');
    for row in rows {
        match &row.outcome {
            Ok(m) => {
                let k_center = m.k_center_cost.map(format_float).unwrap_or_default();
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},\n",
                    row.k,
                    row.algorithm,
                    row.objective,
                    format_float(m.max_violation),
                    format_float(m.mean_violation),
                    format_float(m.num_unstable),
                    format_float(m.avg_within_cost),
                    k_center,
                    format_float(m.k_means_cost),
                    format_float(m.runtime_ms),
                ));
            }
            Err(msg) => {
                out.push_str(&format!(
                    "{},{},{},,,,,,,,\"{}\"\n",
                    row.k,
                    row.algorithm,
                    row.objective,
                    msg.replace('"', "'")
                ));
            }
        }
    }
    out
}

fn format_float(v: f64) -> String {
    if v.is_infinite() {
        "inf".to_string()
    } else {
        format!("{v}")
    }
}

/// Oracle report: the exact optimum next to each built-in algorithm.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub config: ConfigEcho,
    pub instance: String,
    pub k: usize,
    pub objective: String,
    pub alpha_star: f64,
    pub best_clustering: Vec<Vec<usize>>,
    pub partitions_examined: u64,
    pub algorithms: Vec<AlgorithmAlpha>,
    pub runtime_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgorithmAlpha {
    pub algorithm: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_violation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Serialize to pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Write `content` to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, content: &str) -> AppResult<()> {
    match path {
        Some(p) => fs::write(p, content)
            .map_err(|e| AppError::Data(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(seed: u64, mv: f64) -> SeedRow {
        SeedRow {
            seed,
            max_violation: mv,
            mean_violation: mv / 2.0,
            num_unstable: 1,
            avg_within_cost: 1.0,
            k_center_cost: Some(2.0),
            k_means_cost: 3.0,
            runtime_ms: 1.0,
        }
    }

    fn echo() -> ConfigEcho {
        ConfigEcho {
            command: "run".into(),
            algorithm: "minip".into(),
            k: 3,
            objective: "min".into(),
            seeds: vec![0, 1],
            repeats: 1,
            first_center: 0,
            version: VERSION.into(),
        }
    }

    #[test]
    fn multi_seed_report_carries_rows_and_means() {
        let report = RunReport::from_rows(echo(), "test".into(), vec![row(0, 1.0), row(1, 3.0)], None);
        assert_eq!(report.max_violation, 2.0);
        assert_eq!(report.per_seed.as_ref().unwrap().len(), 2);
        let json = to_json(&report);
        assert!(json.contains("\"per_seed\""));
        assert!(!json.contains("per_point_violations"));
    }

    #[test]
    fn single_seed_report_has_no_rows() {
        let report = RunReport::from_rows(echo(), "test".into(), vec![row(0, 1.0)], None);
        assert!(report.per_seed.is_none());
        assert_eq!(report.max_violation, 1.0);
    }

    #[test]
    fn sweep_renders_header_and_error_rows() {
        let rows = vec![
            SweepRow {
                k: 2,
                algorithm: "minip".into(),
                objective: "min".into(),
                outcome: Ok(SweepMetrics {
                    max_violation: 1.0,
                    mean_violation: 0.5,
                    num_unstable: 0.0,
                    avg_within_cost: 1.5,
                    k_center_cost: None,
                    k_means_cost: 2.0,
                    runtime_ms: 0.25,
                }),
            },
            SweepRow {
                k: 9,
                algorithm: "carve".into(),
                objective: "avg".into(),
                outcome: Err("degenerate input".into()),
            },
        ];
        let table = render_sweep("inst", &[0], &rows);
        assert!(table.starts_with("# ipstab sweep"));
        assert!(table.contains(SWEEP_COLUMNS));
        assert!(table.contains("2,minip,min,1,0.5,0,1.5,,2,0.25,"));
        assert!(table.contains("9,carve,avg,,,,,,,,\"degenerate input\""));
        // Header only when no rows.
        let empty = render_sweep("inst", &[0], &[]);
        assert_eq!(empty.lines().count(), 5);
    }

    #[test]
    fn infinities_render_as_inf() {
        assert_eq!(format_float(f64::INFINITY), "inf");
        assert_eq!(format_float(1.5), "1.5");
    }
}
