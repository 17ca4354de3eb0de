//! Algorithm dispatch over a materialized instance.

use ipstab_core::baselines::{self, kmeans_pp, random_coloring};
use ipstab_core::carve::ip_clustering_detailed;
use ipstab_core::minmax::{max_ip_clustering, min_ip_clustering};
use ipstab_core::stability::{cost_report, stability_report, CostReport, StabilityReport};
use ipstab_core::{Clustering, Objective};

use crate::error::{AppError, AppResult};
use crate::instance::{Instance, InstanceSpec};

/// Lloyd iteration cap for k-means++.
pub const KMEANS_MAX_ITERS: usize = 300;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Carve,
    MinIp,
    MaxIp,
    KMeansPp,
    RandomColor,
}

impl Algo {
    pub const ALL: [Algo; 5] = [
        Algo::Carve,
        Algo::MinIp,
        Algo::MaxIp,
        Algo::KMeansPp,
        Algo::RandomColor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Carve => "carve",
            Algo::MinIp => "minip",
            Algo::MaxIp => "maxip",
            Algo::KMeansPp => "kmeanspp",
            Algo::RandomColor => "random-color",
        }
    }

    /// Whether different seeds can change the output.
    pub fn is_stochastic(self) -> bool {
        matches!(self, Algo::KMeansPp | Algo::RandomColor)
    }

    /// Flag incompatibilities that are knowable before any data is loaded.
    pub fn check_compatible(self, spec: &InstanceSpec) -> AppResult<()> {
        match self {
            Algo::KMeansPp if !spec.has_points() => Err(AppError::Config(
                "k-means++ requires coordinates (a point instance)".into(),
            )),
            Algo::RandomColor if !spec.is_graph() => Err(AppError::Config(
                "random coloring requires a graph instance".into(),
            )),
            _ => Ok(()),
        }
    }
}

impl std::str::FromStr for Algo {
    type Err = AppError;
    fn from_str(s: &str) -> AppResult<Self> {
        match s {
            "carve" => Ok(Algo::Carve),
            "minip" => Ok(Algo::MinIp),
            "maxip" => Ok(Algo::MaxIp),
            "kmeanspp" => Ok(Algo::KMeansPp),
            "random-color" => Ok(Algo::RandomColor),
            other => Err(AppError::Config(format!(
                "unknown algorithm '{other}' (expected carve|minip|maxip|kmeanspp|random-color)"
            ))),
        }
    }
}

pub fn parse_objective(s: &str) -> AppResult<Objective> {
    match s {
        "avg" => Ok(Objective::Average),
        "min" => Ok(Objective::Minimum),
        "max" => Ok(Objective::Maximum),
        other => Err(AppError::Config(format!(
            "unknown objective '{other}' (expected avg|min|max)"
        ))),
    }
}

/// One algorithm execution: the clustering plus whatever notion of centers
/// the algorithm provides.
pub struct AlgoRun {
    pub clustering: Clustering,
    pub center_indices: Option<Vec<usize>>,
    pub center_vectors: Option<Vec<Vec<f64>>>,
}

pub fn run_algo(
    algo: Algo,
    instance: &Instance,
    k: usize,
    seed: u64,
    first: usize,
) -> AppResult<AlgoRun> {
    match algo {
        Algo::Carve => {
            let run = ip_clustering_detailed(&instance.space, k, first)?;
            Ok(AlgoRun {
                clustering: run.clustering,
                center_indices: Some(run.k_center.centers),
                center_vectors: None,
            })
        }
        Algo::MinIp => Ok(AlgoRun {
            clustering: min_ip_clustering(&instance.space, k)?,
            center_indices: None,
            center_vectors: None,
        }),
        Algo::MaxIp => {
            let clustering = max_ip_clustering(&instance.space, k, first)?;
            let centers = ipstab_core::carve::greedy_k_center(&instance.space, k, first)?.centers;
            Ok(AlgoRun {
                clustering,
                center_indices: Some(centers),
                center_vectors: None,
            })
        }
        Algo::KMeansPp => {
            let points = instance.points.as_ref().ok_or_else(|| {
                AppError::Config("k-means++ requires coordinates (a point instance)".into())
            })?;
            let out = kmeans_pp(points, k, seed, KMEANS_MAX_ITERS)?;
            Ok(AlgoRun {
                clustering: out.clustering,
                center_indices: None,
                center_vectors: Some(out.centers),
            })
        }
        Algo::RandomColor => {
            let coloring = random_coloring(&instance.space, k, seed)?;
            let (clustering, _empty) = coloring.to_clustering();
            Ok(AlgoRun {
                clustering,
                center_indices: None,
                center_vectors: None,
            })
        }
    }
}

/// Stability and cost metrics of one run under one objective.
pub struct Evaluation {
    pub stability: StabilityReport,
    pub costs: CostReport,
}

pub fn evaluate(instance: &Instance, run: &AlgoRun, objective: Objective) -> AppResult<Evaluation> {
    let stability = stability_report(&instance.space, &run.clustering, objective);
    let mut costs = cost_report(
        &instance.space,
        &run.clustering,
        run.center_indices.as_deref(),
    )?;
    if let (Some(vectors), Some(points)) = (&run.center_vectors, &instance.points) {
        costs.k_center_cost = Some(baselines::kmeans_k_center_cost(
            points,
            &run.clustering,
            vectors,
        ));
    }
    Ok(Evaluation { stability, costs })
}
