//! Stability objectives, per-point violations, and clustering cost metrics.
//!
//! The violation of point `x` under objective `f` is
//! `Vi(x) = max over clusters C' != C(x) of f(x, C(x) \ {x}) / f(x, C')`,
//! with `Vi(x) = 0` when `x` is alone in its cluster. A clustering is
//! `alpha`-IP stable under `f` exactly when `MaxVi <= alpha`.

use alloc::vec;
use alloc::vec::Vec;

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::metric::MetricSpace;

/// Slack absorbed before a point counts as unstable: `Vi > 1 + UNSTABLE_SLACK`.
pub const UNSTABLE_SLACK: f64 = 1e-9;

/// The objective evaluated from a point into a nonempty cluster.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Mean distance into the cluster; the standard IP-stability objective.
    Average,
    /// Distance to the nearest cluster member (Min-IP).
    Minimum,
    /// Distance to the farthest cluster member (Max-IP).
    Maximum,
}

impl Objective {
    pub const ALL: [Objective; 3] = [Objective::Average, Objective::Minimum, Objective::Maximum];

    pub fn name(self) -> &'static str {
        match self {
            Objective::Average => "avg",
            Objective::Minimum => "min",
            Objective::Maximum => "max",
        }
    }
}

/// Per-point violations and their aggregates under one objective.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub objective: Objective,
    /// `Vi` per point; `f64::INFINITY` when a zero-distance cluster makes the
    /// ratio unbounded.
    pub vi: Vec<f64>,
    pub max_vi: f64,
    pub mean_vi: f64,
    /// Points with `Vi > 1 + UNSTABLE_SLACK`.
    pub num_unstable: usize,
}

/// Cost metrics of a clustering.
#[derive(Debug, Clone, PartialEq)]
pub struct CostReport {
    /// Sum over clusters of the average pairwise distance within the cluster
    /// (clusters of size <= 1 contribute 0).
    pub avg_within_cost: f64,
    /// Max distance from any point to its cluster's center; absent when no
    /// centers were supplied.
    pub k_center_cost: Option<f64>,
    /// Sum over clusters of (sum of squared pairwise distances over unordered
    /// pairs) / cluster size; equals the k-means inertia for Euclidean data.
    pub k_means_cost: f64,
}

/// Objective value from `x` into `cluster`. The cluster must be nonempty;
/// callers evaluating a point against its own cluster remove it first.
pub fn f_value(space: &MetricSpace, objective: Objective, x: usize, cluster: &[usize]) -> f64 {
    assert!(!cluster.is_empty(), "objective over an empty cluster");
    let row = space.row(x);
    match objective {
        Objective::Average => {
            cluster.iter().map(|&y| row[y]).sum::<f64>() / cluster.len() as f64
        }
        Objective::Minimum => cluster.iter().map(|&y| row[y]).fold(f64::INFINITY, f64::min),
        Objective::Maximum => cluster.iter().map(|&y| row[y]).fold(0.0, f64::max),
    }
}

/// Violation ratio with the zero-denominator rule: `0/0 -> 0` (the point is
/// as close to its duplicates as anything can be) and `p/0 -> inf` for p > 0.
#[inline]
fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if num == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Per-cluster objective values from point `x`, excluding `x` itself from its
/// own cluster. Writes into `out[0..k]`; the own-cluster slot is `None` when
/// `x` is a singleton.
fn cluster_values(
    space: &MetricSpace,
    clustering: &Clustering,
    x: usize,
    objective: Objective,
    out: &mut [f64],
) -> Option<usize> {
    let own = clustering.cluster_of(x);
    let row = space.row(x);
    match objective {
        Objective::Average => {
            for (c, members) in clustering.members().iter().enumerate() {
                let mut sum = 0.0;
                for &y in members {
                    sum += row[y];
                }
                let mut len = members.len();
                if c == own {
                    len -= 1; // row[x] contributes 0 to the sum
                }
                out[c] = if len == 0 { 0.0 } else { sum / len as f64 };
            }
        }
        Objective::Minimum => {
            for (c, members) in clustering.members().iter().enumerate() {
                let mut min = f64::INFINITY;
                for &y in members {
                    if y != x && row[y] < min {
                        min = row[y];
                    }
                }
                out[c] = min;
            }
        }
        Objective::Maximum => {
            for (c, members) in clustering.members().iter().enumerate() {
                let mut max = f64::NEG_INFINITY;
                for &y in members {
                    if y != x && row[y] > max {
                        max = row[y];
                    }
                }
                out[c] = max;
            }
        }
    }
    if clustering.cluster(own).len() == 1 {
        None
    } else {
        Some(own)
    }
}

fn violation_with_scratch(
    space: &MetricSpace,
    clustering: &Clustering,
    x: usize,
    objective: Objective,
    scratch: &mut [f64],
) -> f64 {
    let Some(own) = cluster_values(space, clustering, x, objective, scratch) else {
        return 0.0; // C(x) = {x}: stable by definition
    };
    let num = scratch[own];
    let mut worst = 0.0f64;
    for (c, &den) in scratch.iter().enumerate() {
        if c != own {
            worst = worst.max(ratio(num, den));
        }
    }
    worst
}

/// Violation `Vi(x)` of one point. Zero for singleton clusters and for k = 1.
pub fn violation(
    space: &MetricSpace,
    clustering: &Clustering,
    x: usize,
    objective: Objective,
) -> f64 {
    let mut scratch = vec![0.0; clustering.k()];
    violation_with_scratch(space, clustering, x, objective, &mut scratch)
}

/// Aggregate `Vi` over all points.
pub fn stability_report(
    space: &MetricSpace,
    clustering: &Clustering,
    objective: Objective,
) -> StabilityReport {
    let n = space.n();
    let mut scratch = vec![0.0; clustering.k()];
    let vi: Vec<f64> = (0..n)
        .map(|x| violation_with_scratch(space, clustering, x, objective, &mut scratch))
        .collect();
    let max_vi = vi.iter().copied().fold(0.0, f64::max);
    let mean_vi = vi.iter().sum::<f64>() / n as f64;
    let num_unstable = vi.iter().filter(|&&v| v > 1.0 + UNSTABLE_SLACK).count();
    StabilityReport {
        objective,
        vi,
        max_vi,
        mean_vi,
        num_unstable,
    }
}

/// `MaxVi` alone, without materializing the per-point vector. Used by the
/// brute-force oracle where this runs once per enumerated partition.
pub fn max_violation(
    space: &MetricSpace,
    clustering: &Clustering,
    objective: Objective,
) -> f64 {
    let mut scratch = vec![0.0; clustering.k()];
    (0..space.n())
        .map(|x| violation_with_scratch(space, clustering, x, objective, &mut scratch))
        .fold(0.0, f64::max)
}

/// Cost metrics; `centers[c]` is the point index serving as cluster `c`'s
/// center when centers exist.
pub fn cost_report(
    space: &MetricSpace,
    clustering: &Clustering,
    centers: Option<&[usize]>,
) -> Result<CostReport> {
    if let Some(cs) = centers {
        if cs.len() != clustering.k() {
            return Err(Error::Input(alloc::format!(
                "{} centers supplied for {} clusters",
                cs.len(),
                clustering.k()
            )));
        }
    }
    let mut avg_within = 0.0;
    let mut k_means = 0.0;
    for members in clustering.members() {
        let m = members.len();
        if m < 2 {
            continue;
        }
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for (a, &x) in members.iter().enumerate() {
            let row = space.row(x);
            for &y in &members[a + 1..] {
                sum += row[y];
                sum_sq += row[y] * row[y];
            }
        }
        let pairs = (m * (m - 1) / 2) as f64;
        avg_within += sum / pairs;
        k_means += sum_sq / m as f64;
    }
    let k_center_cost = centers.map(|cs| {
        (0..space.n())
            .map(|x| space.dist(x, cs[clustering.cluster_of(x)]))
            .fold(0.0, f64::max)
    });
    Ok(CostReport {
        avg_within_cost: avg_within,
        k_center_cost,
        k_means_cost: k_means,
    })
}
