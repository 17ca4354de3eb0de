//! Comparison algorithms: k-means++ with Lloyd iterations, and uniform random
//! coloring of graph metrics together with its root-distance balance
//! statistic.
//!
//! Every stochastic operation takes an explicit seed and draws from a
//! fixed-stream portable generator, so runs reproduce bit-for-bit across
//! platforms.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::metric::{MetricSpace, SpaceKind};

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Result of one k-means++ run.
#[derive(Debug, Clone)]
pub struct KMeansOutput {
    pub clustering: Clustering,
    /// Final centroids, one vector per cluster.
    pub centers: Vec<Vec<f64>>,
    /// Lloyd iterations executed (assignment passes after seeding).
    pub iterations: usize,
    /// Sum of squared point-to-centroid distances after each assignment
    /// pass; nonincreasing.
    pub objective_trace: Vec<f64>,
}

impl KMeansOutput {
    /// Final k-means objective (inertia).
    pub fn objective(&self) -> f64 {
        *self.objective_trace.last().expect("at least one pass")
    }
}

/// k-means++ (D^2-weighted) seeding followed by Lloyd iterations, a single
/// initialization per call. Runs on raw coordinates, not a general metric.
///
/// Iteration stops at an assignment fixpoint or after `max_iters` passes.
/// A cluster emptied by an assignment pass is reseeded at the point farthest
/// from its current centroid (ties to the lowest point index).
pub fn kmeans_pp(
    points: &[Vec<f64>],
    k: usize,
    seed: u64,
    max_iters: usize,
) -> Result<KMeansOutput> {
    let n = points.len();
    if n == 0 {
        return Err(Error::Input("point set is empty".into()));
    }
    let dim = points[0].len();
    if dim == 0 || points.iter().any(|p| p.len() != dim) {
        return Err(Error::Input(
            "k-means++ requires same-dimension coordinate vectors".into(),
        ));
    }
    if points.iter().flatten().any(|c| !c.is_finite()) {
        return Err(Error::Input("non-finite coordinate".into()));
    }
    if k == 0 || k > n {
        return Err(Error::Input(alloc::format!(
            "k = {k} must be between 1 and n = {n}"
        )));
    }

    let mut rng = rng_for(seed);

    // D^2 seeding: first center uniform, then each next center sampled with
    // probability proportional to the squared distance to the nearest center.
    let mut center_idx = Vec::with_capacity(k);
    center_idx.push(rng.random_range(0..n));
    let mut d2: Vec<f64> = points
        .iter()
        .map(|p| sq_dist(p, &points[center_idx[0]]))
        .collect();
    while center_idx.len() < k {
        let total: f64 = d2.iter().sum();
        let next = if total > 0.0 {
            let mut target = rng.random::<f64>() * total;
            let mut chosen = n - 1;
            for (x, &w) in d2.iter().enumerate() {
                target -= w;
                if target <= 0.0 {
                    chosen = x;
                    break;
                }
            }
            chosen
        } else {
            // All remaining mass sits on already-chosen locations; fall back
            // to the lowest unchosen index.
            (0..n)
                .find(|x| !center_idx.contains(x))
                .expect("k <= n leaves an unchosen point")
        };
        center_idx.push(next);
        for (x, w) in d2.iter_mut().enumerate() {
            let d = sq_dist(&points[x], &points[next]);
            if d < *w {
                *w = d;
            }
        }
    }
    let mut centers: Vec<Vec<f64>> = center_idx.iter().map(|&c| points[c].clone()).collect();

    let mut assignment = vec![0usize; n];
    assign_nearest(points, &centers, &mut assignment);
    repair_empty(points, &mut centers, &mut assignment, k);
    let mut trace = vec![inertia(points, &centers, &assignment)];

    let mut iterations = 0;
    let mut next_assignment = vec![0usize; n];
    while iterations < max_iters {
        update_centroids(points, &assignment, &mut centers);
        assign_nearest(points, &centers, &mut next_assignment);
        repair_empty(points, &mut centers, &mut next_assignment, k);
        iterations += 1;
        trace.push(inertia(points, &centers, &next_assignment));
        if next_assignment == assignment {
            break;
        }
        core::mem::swap(&mut assignment, &mut next_assignment);
    }

    let clustering =
        Clustering::from_assignment(assignment).expect("empty clusters were repaired");
    Ok(KMeansOutput {
        clustering,
        centers,
        iterations,
        objective_trace: trace,
    })
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| {
            let d = x - y;
            d * d
        })
        .sum()
}

fn assign_nearest(points: &[Vec<f64>], centers: &[Vec<f64>], assignment: &mut [usize]) {
    for (x, slot) in assignment.iter_mut().enumerate() {
        let mut best = 0;
        let mut best_d = sq_dist(&points[x], &centers[0]);
        for (c, center) in centers.iter().enumerate().skip(1) {
            let d = sq_dist(&points[x], center);
            if d < best_d {
                best_d = d;
                best = c;
            }
        }
        *slot = best;
    }
}

fn update_centroids(points: &[Vec<f64>], assignment: &[usize], centers: &mut [Vec<f64>]) {
    let dim = points[0].len();
    let mut counts = vec![0usize; centers.len()];
    for center in centers.iter_mut() {
        center.iter_mut().for_each(|c| *c = 0.0);
    }
    for (p, &c) in points.iter().zip(assignment.iter()) {
        counts[c] += 1;
        for d in 0..dim {
            centers[c][d] += p[d];
        }
    }
    for (center, &count) in centers.iter_mut().zip(counts.iter()) {
        if count > 0 {
            center.iter_mut().for_each(|c| *c /= count as f64);
        }
    }
}

/// Move the point farthest from its own centroid into each empty cluster,
/// making that point the cluster's centroid.
fn repair_empty(
    points: &[Vec<f64>],
    centers: &mut [Vec<f64>],
    assignment: &mut [usize],
    k: usize,
) {
    loop {
        let mut counts = vec![0usize; k];
        for &c in assignment.iter() {
            counts[c] += 1;
        }
        let Some(empty) = counts.iter().position(|&c| c == 0) else {
            return;
        };
        let mut worst = 0;
        let mut worst_d = f64::NEG_INFINITY;
        for (x, &c) in assignment.iter().enumerate() {
            // Skip points that are alone in their cluster; moving them would
            // just relocate the hole.
            if counts[c] == 1 {
                continue;
            }
            let d = sq_dist(&points[x], &centers[c]);
            if d > worst_d {
                worst_d = d;
                worst = x;
            }
        }
        assignment[worst] = empty;
        centers[empty] = points[worst].clone();
    }
}

fn inertia(points: &[Vec<f64>], centers: &[Vec<f64>], assignment: &[usize]) -> f64 {
    points
        .iter()
        .zip(assignment.iter())
        .map(|(p, &c)| sq_dist(p, &centers[c]))
        .sum()
}

/// Max distance from any point to its own cluster's centroid, the k-center
/// cost of a k-means run.
pub fn kmeans_k_center_cost(
    points: &[Vec<f64>],
    clustering: &Clustering,
    centers: &[Vec<f64>],
) -> f64 {
    points
        .iter()
        .zip(clustering.assignment())
        .map(|(p, &c)| libm::sqrt(sq_dist(p, &centers[c])))
        .fold(0.0, f64::max)
}

/// A k-coloring of a graph metric's vertices. Unlike [`Clustering`], colors
/// may be empty; [`Coloring::to_clustering`] drops the empty ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    /// Color of each vertex, in `0..k`.
    pub colors: Vec<usize>,
    /// Number of colors drawn from.
    pub k: usize,
}

impl Coloring {
    /// Collapse to a clustering over the nonempty colors (preserving color
    /// order); also reports how many colors were empty.
    pub fn to_clustering(&self) -> (Clustering, usize) {
        let mut seen = vec![false; self.k];
        for &c in &self.colors {
            seen[c] = true;
        }
        let empty = seen.iter().filter(|&&s| !s).count();
        let clustering = Clustering::from_labels(&self.colors).expect("n >= 1");
        (clustering, empty)
    }
}

/// Color every vertex of a graph metric independently and uniformly from
/// `0..k`.
pub fn random_coloring(space: &MetricSpace, k: usize, seed: u64) -> Result<Coloring> {
    if space.kind() != SpaceKind::Graph {
        return Err(Error::Input(
            "random coloring requires a graph metric".into(),
        ));
    }
    if k == 0 || k > space.n() {
        return Err(Error::Input(alloc::format!(
            "k = {k} must be between 1 and n = {}",
            space.n()
        )));
    }
    let mut rng = rng_for(seed);
    let colors = (0..space.n()).map(|_| rng.random_range(0..k)).collect();
    Ok(Coloring { colors, k })
}

/// Sums of root distances per color: `X_i = sum over v of color i of
/// d(root, v)` and their total `X`.
#[derive(Debug, Clone, PartialEq)]
pub struct ColorBalanceStats {
    pub per_color_x: Vec<f64>,
    pub total_x: f64,
    pub k: usize,
    pub root: usize,
}

impl ColorBalanceStats {
    /// The balance event of the random-coloring guarantee:
    /// `X/2 <= k * X_i <= 2X` for every color.
    pub fn balanced(&self) -> bool {
        let k = self.k as f64;
        self.per_color_x
            .iter()
            .all(|&xi| self.total_x / 2.0 <= k * xi && k * xi <= 2.0 * self.total_x)
    }
}

/// Compute the per-color root-distance sums of a coloring.
pub fn color_balance(space: &MetricSpace, root: usize, coloring: &Coloring) -> ColorBalanceStats {
    assert!(root < space.n(), "root {root} out of range");
    assert_eq!(coloring.colors.len(), space.n(), "coloring size mismatch");
    let row = space.row(root);
    let mut per_color_x = vec![0.0; coloring.k];
    for (v, &c) in coloring.colors.iter().enumerate() {
        per_color_x[c] += row[v];
    }
    let total_x = per_color_x.iter().sum();
    ColorBalanceStats {
        per_color_x,
        total_x,
        k: coloring.k,
        root,
    }
}
