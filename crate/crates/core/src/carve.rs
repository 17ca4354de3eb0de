//! Greedy k-center seeding, ball carving, and the O(1)-approximate IP-stable
//! k-clustering built from them.
//!
//! Carving picks centers that are pairwise more than `6r` apart, each
//! maximizing the number of points within radius `r`, grows a cluster from
//! each center's ball (or ball plus annulus), and assigns every leftover
//! point to the earliest center within `7r`. Every carved cluster then has
//! diameter at most `14r`, and the mean distance from any point to any other
//! carved cluster is at least `r/4`. Running the carve at `r = r0/15`, where
//! `r0` is the minimum separation of the greedy k-center centers, and merging
//! each carved cluster into its nearest center yields exactly `k` nonempty
//! clusters whose violations under the average objective are bounded by the
//! constant `(4 r0) / (r0/60) = 240`.

use alloc::vec;
use alloc::vec::Vec;

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::metric::MetricSpace;

/// Greedy (farthest-point) k-center solution.
#[derive(Debug, Clone)]
pub struct KCenterResult {
    /// Centers in selection order; the first is the caller-supplied seed.
    pub centers: Vec<usize>,
    /// Minimum pairwise distance among the centers; `f64::INFINITY` for k = 1
    /// where no pair exists.
    pub r0: f64,
    /// Maximum distance from any point to its nearest center. Never exceeds
    /// `r0`: each center was a farthest point when chosen.
    pub covering_radius: f64,
}

/// Diagnostic record of one ball-carving run.
#[derive(Debug, Clone)]
pub struct CarveTrace {
    /// Carving centers in selection order; pairwise distance > `6r`.
    pub centers: Vec<usize>,
    /// `|B(q_i, r)|` at selection time, over the full point set.
    pub ball_sizes: Vec<usize>,
    /// Whether the annulus held at least `ball_sizes[i]` points (the cluster
    /// was seeded from the ball plus annulus picks) or not (the cluster took
    /// the whole `3r`-ball).
    pub dense_annulus: Vec<bool>,
    /// Carving radius.
    pub r: f64,
}

impl CarveTrace {
    /// Number of carved clusters.
    pub fn t(&self) -> usize {
        self.centers.len()
    }
}

/// Farthest-point k-center: starting from `first`, repeatedly add the point
/// maximizing the distance to the chosen centers (ties to the lowest index).
///
/// Fails with a degenerate-input error when fewer than `k` distinct locations
/// exist, since the separation `r0` would collapse to zero.
pub fn greedy_k_center(space: &MetricSpace, k: usize, first: usize) -> Result<KCenterResult> {
    let n = space.n();
    if k == 0 || k > n {
        return Err(Error::Input(alloc::format!(
            "k = {k} must be between 1 and n = {n}"
        )));
    }
    if first >= n {
        return Err(Error::Input(alloc::format!(
            "first center {first} out of range for n = {n}"
        )));
    }
    let mut centers = Vec::with_capacity(k);
    centers.push(first);
    let mut min_dist: Vec<f64> = space.row(first).to_vec();
    let mut r0 = f64::INFINITY;
    while centers.len() < k {
        let mut best = 0;
        let mut best_d = f64::NEG_INFINITY;
        for (x, &d) in min_dist.iter().enumerate() {
            if d > best_d {
                best_d = d;
                best = x;
            }
        }
        if best_d == 0.0 {
            return Err(Error::Degenerate(
                "duplicate points exhaust distinct centers".into(),
            ));
        }
        r0 = r0.min(best_d);
        centers.push(best);
        let row = space.row(best);
        for (x, d) in min_dist.iter_mut().enumerate() {
            if row[x] < *d {
                *d = row[x];
            }
        }
    }
    let covering_radius = min_dist.iter().copied().fold(0.0, f64::max);
    Ok(KCenterResult {
        centers,
        r0,
        covering_radius,
    })
}

/// Ball carving at radius `r`: returns the carved partition and its trace.
///
/// While some point is farther than `6r` from all chosen centers, the next
/// center is such a point with the largest ball `|B(., r)|` (ties to the
/// lowest index). Its cluster is seeded with `B(q, r)` plus, if the annulus
/// `{x : 2r < d(x,q) <= 3r}` holds at least `|B(q, r)|` points, the
/// lowest-index such points — otherwise with all of `B(q, 3r)`. Remaining
/// points join the earliest center within `7r`.
pub fn ball_carving(space: &MetricSpace, r: f64) -> Result<(Clustering, CarveTrace)> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::Input(alloc::format!(
            "carving radius must be positive, got {r}"
        )));
    }
    let n = space.n();
    const UNASSIGNED: usize = usize::MAX;
    let mut assignment = vec![UNASSIGNED; n];
    // Ball sizes at fixed r never change; compute them once.
    let ball_sizes_all: Vec<usize> = (0..n).map(|x| space.ball_size(x, r)).collect();
    let mut dist_to_centers = vec![f64::INFINITY; n];

    let mut centers = Vec::new();
    let mut sizes = Vec::new();
    let mut dense = Vec::new();
    loop {
        let mut q = UNASSIGNED;
        let mut q_ball = 0;
        for x in 0..n {
            if dist_to_centers[x] > 6.0 * r && ball_sizes_all[x] > q_ball {
                q = x;
                q_ball = ball_sizes_all[x];
            }
        }
        if q == UNASSIGNED {
            break;
        }
        let i = centers.len();
        let s_i = q_ball;
        let row = space.row(q);

        // The chosen centers are > 6r apart, so the 3r-balls below are
        // disjoint across centers and nothing is claimed twice.
        let mut annulus = Vec::new();
        for (x, &d) in row.iter().enumerate() {
            if d <= r {
                debug_assert_eq!(assignment[x], UNASSIGNED);
                assignment[x] = i;
            } else if 2.0 * r < d && d <= 3.0 * r {
                annulus.push(x);
            }
        }
        if annulus.len() >= s_i {
            for &x in &annulus[..s_i] {
                debug_assert_eq!(assignment[x], UNASSIGNED);
                assignment[x] = i;
            }
            dense.push(true);
        } else {
            for (x, &d) in row.iter().enumerate() {
                if r < d && d <= 3.0 * r {
                    debug_assert_eq!(assignment[x], UNASSIGNED);
                    assignment[x] = i;
                }
            }
            dense.push(false);
        }
        centers.push(q);
        sizes.push(s_i);
        for (x, d) in dist_to_centers.iter_mut().enumerate() {
            if row[x] < *d {
                *d = row[x];
            }
        }
    }

    for (x, slot) in assignment.iter_mut().enumerate() {
        if *slot == UNASSIGNED {
            *slot = centers
                .iter()
                .position(|&q| space.dist(x, q) <= 7.0 * r)
                .expect("loop exit leaves every point within 6r of a center");
        }
    }

    let clustering = Clustering::from_assignment(assignment)
        .expect("every carving center claims its own ball");
    let trace = CarveTrace {
        centers,
        ball_sizes: sizes,
        dense_annulus: dense,
        r,
    };
    Ok((clustering, trace))
}

/// The O(1)-approximate IP-stable k-clustering: greedy k-center, ball carving
/// at `r0/15`, then each carved cluster merges into the center nearest to it
/// (set distance, ties to the earliest center).
pub fn ip_clustering(space: &MetricSpace, k: usize, first: usize) -> Result<Clustering> {
    Ok(ip_clustering_detailed(space, k, first)?.clustering)
}

/// [`ip_clustering`] plus the k-center result and carve trace, for harnesses
/// that report center-based costs. The trace is absent for the trivial k = 1
/// path, which skips carving.
pub fn ip_clustering_detailed(space: &MetricSpace, k: usize, first: usize) -> Result<IpRun> {
    let k_center = greedy_k_center(space, k, first)?;
    if k == 1 {
        return Ok(IpRun {
            clustering: Clustering::single(space.n()),
            k_center,
            trace: None,
        });
    }
    let r = k_center.r0 / 15.0;
    let (carved, trace) = ball_carving(space, r)?;
    let mut assignment = vec![0usize; space.n()];
    for members in carved.members() {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (i, &c) in k_center.centers.iter().enumerate() {
            let row = space.row(c);
            let d = members.iter().map(|&y| row[y]).fold(f64::INFINITY, f64::min);
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        for &y in members {
            assignment[y] = best;
        }
    }
    let clustering = Clustering::from_assignment(assignment)
        .expect("each carved cluster has diameter < r0, so every center keeps its own");
    Ok(IpRun {
        clustering,
        k_center,
        trace: Some(trace),
    })
}

/// Output of [`ip_clustering_detailed`].
#[derive(Debug, Clone)]
pub struct IpRun {
    pub clustering: Clustering,
    pub k_center: KCenterResult,
    pub trace: Option<CarveTrace>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stability::{max_violation, Objective};

    fn line(points: &[f64]) -> MetricSpace {
        let pts: Vec<Vec<f64>> = points.iter().map(|&x| vec![x]).collect();
        MetricSpace::from_points(&pts).unwrap()
    }

    #[test]
    fn greedy_hand_trace_k2() {
        let s = line(&[0.0, 1.0, 3.0, 7.0]);
        let r = greedy_k_center(&s, 2, 0).unwrap();
        assert_eq!(r.centers, vec![0, 3]); // positions 0 and 7
        assert_eq!(r.r0, 7.0);
        assert_eq!(r.covering_radius, 3.0);
    }

    #[test]
    fn greedy_hand_trace_k4() {
        let s = line(&[0.0, 1.0, 3.0, 7.0]);
        let r = greedy_k_center(&s, 4, 0).unwrap();
        // Positions: 0, 7, then 3 (min-dist 3), then 1 (min-dist 1).
        assert_eq!(r.centers, vec![0, 3, 2, 1]);
        assert_eq!(r.r0, 1.0);
        assert_eq!(r.covering_radius, 0.0);
    }

    #[test]
    fn greedy_single_center() {
        let s = line(&[0.0, 1.0, 3.0, 7.0]);
        let r = greedy_k_center(&s, 1, 2).unwrap();
        assert_eq!(r.centers, vec![2]);
        assert_eq!(r.r0, f64::INFINITY);
        assert_eq!(r.covering_radius, 4.0); // position 7 from position 3
    }

    #[test]
    fn greedy_rejects_exhausted_distinct_locations() {
        let s = line(&[1.0, 1.0, 2.0]);
        assert!(matches!(
            greedy_k_center(&s, 3, 0),
            Err(Error::Degenerate(_))
        ));
        assert!(greedy_k_center(&s, 2, 0).is_ok());
    }

    #[test]
    fn greedy_rejects_bad_parameters() {
        let s = line(&[0.0, 1.0]);
        assert!(greedy_k_center(&s, 0, 0).is_err());
        assert!(greedy_k_center(&s, 3, 0).is_err());
        assert!(greedy_k_center(&s, 1, 5).is_err());
    }

    #[test]
    fn carve_single_point() {
        let s = line(&[4.0]);
        let (c, t) = ball_carving(&s, 1.0).unwrap();
        assert_eq!(c.k(), 1);
        assert_eq!(t.t(), 1);
        assert_eq!(t.ball_sizes, vec![1]);
        assert_eq!(t.dense_annulus, vec![false]);
    }

    #[test]
    fn carve_two_far_points() {
        let s = line(&[0.0, 100.0]);
        let (c, t) = ball_carving(&s, 1.0).unwrap();
        assert_eq!(c.k(), 2);
        assert_eq!(t.dense_annulus, vec![false, false]);
        assert_eq!(c.cluster(0), &[0]);
        assert_eq!(c.cluster(1), &[1]);
    }

    #[test]
    fn carve_hand_trace() {
        // r = 1: the point at 1 has the largest unit ball {0,1,2}; the annulus
        // (2,3] around it is empty so its cluster takes the whole 3-ball.
        let s = line(&[0.0, 1.0, 2.0, 20.0]);
        let (c, t) = ball_carving(&s, 1.0).unwrap();
        assert_eq!(t.centers, vec![1, 3]);
        assert_eq!(t.ball_sizes, vec![3, 1]);
        assert_eq!(c.cluster(0), &[0, 1, 2]);
        assert_eq!(c.cluster(1), &[3]);
    }

    // Dense-annulus branch: at r = 1 every unit ball has 2 points so the
    // lowest index (the point at 0) is carved first with s = 2. Its annulus
    // (2, 3] holds {2.6, 2.95}, at least s points, so the cluster is seeded
    // with the ball plus s annulus points, and the gap point at 1.5 is swept
    // up by the leftover pass (distance 1.5 <= 7r to the first center).
    #[test]
    fn carve_dense_annulus_and_leftover_assignment() {
        let s = line(&[0.0, 0.1, 1.5, 2.6, 2.95]);
        let (c, t) = ball_carving(&s, 1.0).unwrap();
        assert_eq!(t.centers, vec![0]);
        assert_eq!(t.ball_sizes, vec![2]);
        assert_eq!(t.dense_annulus, vec![true]);
        assert_eq!(c.k(), 1);
        assert_eq!(c.cluster(0), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn carve_rejects_nonpositive_radius() {
        let s = line(&[0.0, 1.0]);
        assert!(ball_carving(&s, 0.0).is_err());
        assert!(ball_carving(&s, -1.0).is_err());
    }

    #[test]
    fn carve_centers_are_separated_and_sized() {
        let s = line(&[0.0, 0.5, 1.0, 4.0, 4.2, 9.0, 9.1, 9.2, 30.0]);
        for r in [0.1, 0.3, 0.7, 1.5, 4.0] {
            let (c, t) = ball_carving(&s, r).unwrap();
            for (a, &qa) in t.centers.iter().enumerate() {
                for &qb in &t.centers[a + 1..] {
                    assert!(s.dist(qa, qb) > 6.0 * r);
                }
                assert_eq!(t.ball_sizes[a], s.ball_size(qa, r));
            }
            // Every point within 7r of its carved center.
            for x in 0..s.n() {
                assert!(s.dist(x, t.centers[c.cluster_of(x)]) <= 7.0 * r);
            }
        }
    }

    #[test]
    fn ip_clustering_hand_trace() {
        let s = line(&[0.0, 1.0, 2.0, 20.0]);
        let c = ip_clustering(&s, 2, 0).unwrap();
        assert_eq!(c.cluster(0), &[0, 1, 2]);
        assert_eq!(c.cluster(1), &[3]);
    }

    #[test]
    fn ip_clustering_k1_is_trivial() {
        let s = line(&[0.0, 1.0, 2.0]);
        let run = ip_clustering_detailed(&s, 1, 0).unwrap();
        assert_eq!(run.clustering.k(), 1);
        assert!(run.trace.is_none());
        assert_eq!(run.k_center.r0, f64::INFINITY);
    }

    #[test]
    fn ip_clustering_two_blobs() {
        let mut pts = Vec::new();
        for i in 0..6 {
            pts.push(vec![i as f64 * 0.01]);
        }
        for i in 0..6 {
            pts.push(vec![1000.0 + i as f64 * 0.01]);
        }
        let s = MetricSpace::from_points(&pts).unwrap();
        let c = ip_clustering(&s, 2, 0).unwrap();
        assert_eq!(c.k(), 2);
        assert_eq!(c.cluster(0), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(c.cluster(1), &[6, 7, 8, 9, 10, 11]);
        assert!(max_violation(&s, &c, Objective::Average) <= 1.0);
    }

    #[test]
    fn ip_clustering_k_equals_n() {
        let s = line(&[0.0, 1.0, 3.0, 7.0, 15.0]);
        let c = ip_clustering(&s, 5, 0).unwrap();
        assert_eq!(c.k(), 5);
        assert!(max_violation(&s, &c, Objective::Average) <= 240.0);
    }

    #[test]
    fn ip_clustering_propagates_degenerate_error() {
        let s = line(&[1.0, 1.0, 2.0]);
        assert!(matches!(
            ip_clustering(&s, 3, 0),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn ip_clustering_is_deterministic() {
        let pts: Vec<Vec<f64>> = (0..40)
            .map(|i| vec![(i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()])
            .collect();
        let s = MetricSpace::from_points(&pts).unwrap();
        let a = ip_clustering(&s, 6, 0).unwrap();
        let b = ip_clustering(&s, 6, 0).unwrap();
        assert_eq!(a, b);
        let c = ip_clustering(&s, 6, 3).unwrap();
        assert_eq!(c.k(), 6);
    }
}
