//! Brute-force ground truth for small instances.
//!
//! Enumerates every partition of `n` points into exactly `k` nonempty
//! unlabeled clusters via restricted-growth strings, finds the minimum
//! achievable `MaxVi` (the optimal stability factor `alpha*`), and certifies
//! clusterings against a target factor.

use alloc::vec;
use alloc::vec::Vec;

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::metric::MetricSpace;
use crate::stability::{max_violation, Objective};

/// Default cap on `n`; keeps the partition count under ~10^8. The experiment
/// CLI can raise it explicitly via the `_capped` entry points.
pub const DEFAULT_MAX_N: usize = 14;

/// Streaming enumeration of all partitions of `0..n` into exactly `k`
/// nonempty clusters, in lexicographic restricted-growth-string order.
/// Cluster ids are canonical (numbered by first occurrence), so each
/// unlabeled partition appears exactly once; the total count is the Stirling
/// number S(n, k).
pub fn enumerate_partitions(n: usize, k: usize) -> Result<KPartitions> {
    enumerate_partitions_capped(n, k, DEFAULT_MAX_N)
}

/// [`enumerate_partitions`] with an explicit size cap.
pub fn enumerate_partitions_capped(n: usize, k: usize, max_n: usize) -> Result<KPartitions> {
    if n > max_n {
        return Err(Error::Resource(alloc::format!(
            "n = {n} exceeds the exhaustive-search cap of {max_n}"
        )));
    }
    if n == 0 || k == 0 || k > n {
        return Err(Error::Input(alloc::format!(
            "cannot partition {n} points into {k} nonempty clusters"
        )));
    }
    Ok(KPartitions {
        rgs: Vec::new(),
        maxs: Vec::new(),
        n,
        k,
        done: false,
    })
}

pub struct KPartitions {
    /// Restricted growth string: rgs[0] = 0 and rgs[i] <= max(prefix) + 1.
    rgs: Vec<u8>,
    /// maxs[i] = max(rgs[0..=i]).
    maxs: Vec<u8>,
    n: usize,
    k: usize,
    done: bool,
}

impl KPartitions {
    /// Lexicographically smallest completion of positions `from..n`: zeros
    /// until new cluster ids are forced to reach exactly k.
    fn complete_suffix(&mut self, from: usize) {
        for j in from..self.n {
            let cur_max = self.maxs[j - 1];
            let missing = (self.k - 1) as u8 - cur_max;
            let slots = (self.n - j) as u8;
            self.rgs[j] = if missing == slots { cur_max + 1 } else { 0 };
            self.maxs[j] = self.rgs[j].max(cur_max);
        }
    }

    fn advance(&mut self) -> bool {
        if self.rgs.is_empty() {
            self.rgs = vec![0; self.n];
            self.maxs = vec![0; self.n];
            if self.n > 1 {
                self.complete_suffix(1);
            }
            return true;
        }
        // Find the rightmost position that can still be incremented while
        // leaving room to reach exactly k clusters.
        for i in (1..self.n).rev() {
            let cap = (self.maxs[i - 1] + 1).min((self.k - 1) as u8);
            if self.rgs[i] >= cap {
                continue;
            }
            let v = self.rgs[i] + 1;
            let new_max = v.max(self.maxs[i - 1]);
            // Incrementing never shrinks the running max, so the remaining
            // positions can always still open the missing cluster ids.
            debug_assert!((new_max as usize + 1) + (self.n - 1 - i) >= self.k);
            self.rgs[i] = v;
            self.maxs[i] = new_max;
            self.complete_suffix(i + 1);
            return true;
        }
        false
    }
}

impl Iterator for KPartitions {
    type Item = Clustering;

    fn next(&mut self) -> Option<Clustering> {
        if self.done {
            return None;
        }
        if !self.advance() {
            self.done = true;
            return None;
        }
        let assignment: Vec<usize> = self.rgs.iter().map(|&c| c as usize).collect();
        Some(Clustering::from_assignment(assignment).expect("growth string covers 0..k"))
    }
}

/// Result of the exhaustive search for the best achievable stability factor.
#[derive(Debug, Clone)]
pub struct OracleResult {
    /// Minimum `MaxVi` over all k-partitions.
    pub alpha_star: f64,
    /// First enumerated partition attaining `alpha_star`.
    pub best: Clustering,
    /// Number of partitions evaluated, i.e. S(n, k).
    pub partitions_examined: u64,
}

/// Minimize `MaxVi` over every partition of the space into `k` clusters.
pub fn optimal_alpha(space: &MetricSpace, k: usize, objective: Objective) -> Result<OracleResult> {
    optimal_alpha_capped(space, k, objective, DEFAULT_MAX_N)
}

/// [`optimal_alpha`] with an explicit size cap.
pub fn optimal_alpha_capped(
    space: &MetricSpace,
    k: usize,
    objective: Objective,
    max_n: usize,
) -> Result<OracleResult> {
    let mut best: Option<(f64, Clustering)> = None;
    let mut examined = 0u64;
    for clustering in enumerate_partitions_capped(space.n(), k, max_n)? {
        examined += 1;
        let mv = max_violation(space, &clustering, objective);
        match &best {
            Some((cur, _)) if mv >= *cur => {}
            _ => best = Some((mv, clustering)),
        }
    }
    let (alpha_star, best) = best.expect("at least one k-partition exists");
    Ok(OracleResult {
        alpha_star,
        best,
        partitions_examined: examined,
    })
}

/// First point found violating the `alpha` bound, with the cluster it would
/// rather join.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub point: usize,
    pub other_cluster: usize,
    pub ratio: f64,
}

/// Check whether every point satisfies `f(x, C(x)\{x}) <= alpha * f(x, C')`
/// for every other cluster `C'`. Returns `None` when the clustering is
/// alpha-IP stable, otherwise the first violation in (point, cluster) scan
/// order. Ratios use the same arithmetic as [`crate::stability::violation`],
/// so certifying at `alpha = MaxVi` always succeeds.
pub fn certify(
    space: &MetricSpace,
    clustering: &Clustering,
    objective: Objective,
    alpha: f64,
) -> Option<Witness> {
    assert!(alpha >= 0.0, "negative stability factor {alpha}");
    for x in 0..space.n() {
        let own = clustering.cluster_of(x);
        if clustering.cluster(own).len() == 1 {
            continue;
        }
        let own_members: Vec<usize> = clustering
            .cluster(own)
            .iter()
            .copied()
            .filter(|&y| y != x)
            .collect();
        let num = crate::stability::f_value(space, objective, x, &own_members);
        for c in 0..clustering.k() {
            if c == own {
                continue;
            }
            let den = crate::stability::f_value(space, objective, x, clustering.cluster(c));
            let ratio = if den > 0.0 {
                num / den
            } else if num == 0.0 {
                0.0
            } else {
                f64::INFINITY
            };
            if ratio > alpha {
                return Some(Witness {
                    point: x,
                    other_cluster: c,
                    ratio,
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minmax::min_ip_clustering;
    use crate::stability::stability_report;

    fn line(points: &[f64]) -> MetricSpace {
        let pts: Vec<Vec<f64>> = points.iter().map(|&x| vec![x]).collect();
        MetricSpace::from_points(&pts).unwrap()
    }

    /// Stirling numbers of the second kind via the standard recurrence.
    fn stirling(n: usize, k: usize) -> u64 {
        let mut row = vec![0u64; k + 1];
        row[0] = 1;
        for _ in 1..=n {
            for j in (1..=k).rev() {
                row[j] = j as u64 * row[j] + row[j - 1];
            }
            row[0] = 0;
        }
        row[k]
    }

    #[test]
    fn partition_counts_match_stirling_numbers() {
        assert_eq!(enumerate_partitions(3, 2).unwrap().count(), 3);
        assert_eq!(enumerate_partitions(4, 2).unwrap().count(), 7);
        assert_eq!(enumerate_partitions(6, 3).unwrap().count(), 90);
        assert_eq!(stirling(6, 3), 90);
        for n in 1..=8 {
            for k in 1..=n {
                let count = enumerate_partitions(n, k).unwrap().count() as u64;
                assert_eq!(count, stirling(n, k), "S({n},{k})");
            }
        }
    }

    #[test]
    fn partitions_are_distinct_and_exact() {
        let all: Vec<Clustering> = enumerate_partitions(5, 3).unwrap().collect();
        for c in &all {
            assert_eq!(c.k(), 3);
            assert_eq!(c.n(), 5);
        }
        for (a, ca) in all.iter().enumerate() {
            for cb in &all[a + 1..] {
                assert_ne!(ca, cb);
            }
        }
    }

    #[test]
    fn enumeration_guards() {
        assert!(matches!(
            enumerate_partitions(15, 3),
            Err(Error::Resource(_))
        ));
        assert!(enumerate_partitions_capped(15, 3, 15).is_ok());
        assert!(enumerate_partitions(4, 5).is_err());
        assert!(enumerate_partitions(0, 1).is_err());
        assert!(enumerate_partitions(3, 0).is_err());
    }

    #[test]
    fn far_pairs_admit_alpha_below_one() {
        let s = line(&[0.0, 0.01, 1000.0, 1000.01]);
        let r = optimal_alpha(&s, 2, Objective::Average).unwrap();
        assert!(r.alpha_star < 1.0, "alpha* = {}", r.alpha_star);
        assert_eq!(r.best.cluster(0), &[0, 1]);
        assert_eq!(r.partitions_examined, 7);
    }

    #[test]
    fn min_objective_alpha_never_exceeds_one() {
        let s = line(&[0.3, 1.9, 2.0, 5.1, 5.5, 9.0]);
        for k in 2..=4 {
            let r = optimal_alpha(&s, k, Objective::Minimum).unwrap();
            assert!(r.alpha_star <= 1.0, "k={k}: {}", r.alpha_star);
            let witness = min_ip_clustering(&s, k).unwrap();
            let report = stability_report(&s, &witness, Objective::Minimum);
            assert!(report.max_vi + 1e-12 >= r.alpha_star);
        }
    }

    #[test]
    fn certify_hand_traced_fixture() {
        let s = line(&[0.0, 1.0, 3.0, 7.0]);
        let c = Clustering::from_assignment(vec![0, 0, 1, 1]).unwrap();
        let w = certify(&s, &c, Objective::Average, 1.0).unwrap();
        assert_eq!(w.point, 2);
        assert_eq!(w.other_cluster, 0);
        assert_eq!(w.ratio, 1.6);
        assert!(certify(&s, &c, Objective::Average, 1.6).is_none());
    }

    #[test]
    fn certify_agrees_with_reports_on_all_partitions() {
        let s = line(&[0.0, 0.7, 2.0, 2.2, 6.0]);
        for objective in Objective::ALL {
            for clustering in enumerate_partitions(5, 2).unwrap() {
                let report = stability_report(&s, &clustering, objective);
                assert!(certify(&s, &clustering, objective, report.max_vi).is_none());
                if report.max_vi > 0.0 {
                    let w =
                        certify(&s, &clustering, objective, report.max_vi * (1.0 - 1e-12))
                            .expect("shrunken bound must fail");
                    assert!((w.ratio - report.max_vi) <= 1e-12 * report.max_vi);
                }
            }
        }
    }

    #[test]
    fn alpha_star_is_permutation_invariant() {
        let pts = [0.0, 0.9, 2.5, 6.0, 6.3];
        let s1 = line(&pts);
        let mut rev: Vec<f64> = pts.to_vec();
        rev.reverse();
        let s2 = line(&rev);
        for objective in Objective::ALL {
            let a = optimal_alpha(&s1, 2, objective).unwrap().alpha_star;
            let b = optimal_alpha(&s2, 2, objective).unwrap().alpha_star;
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        }
    }
}
