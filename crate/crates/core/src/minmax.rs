//! Exact Min-IP-stable clustering (Kruskal truncated at k components) and
//! 3-approximate Max-IP-stable clustering (greedy k-center with
//! nearest-center assignment).

use alloc::vec;
use alloc::vec::Vec;

use crate::carve::greedy_k_center;
use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::metric::MetricSpace;

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    /// Union by size; returns false if already joined.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra as usize] >= self.size[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        true
    }
}

/// Exact Min-IP-stable k-clustering: sort all pairs by distance (ties by
/// index pair) and join components Kruskal-style until exactly `k` remain.
///
/// For every point with a non-singleton cluster, the distance to its nearest
/// cluster mate is no larger than the distance to any point outside, so the
/// output is Min-IP stable for every `k` in `1..=n`.
pub fn min_ip_clustering(space: &MetricSpace, k: usize) -> Result<Clustering> {
    let n = space.n();
    if k == 0 || k > n {
        return Err(Error::Input(alloc::format!(
            "k = {k} must be between 1 and n = {n}"
        )));
    }
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i as u32, j as u32));
        }
    }
    edges.sort_unstable_by(|&(ai, aj), &(bi, bj)| {
        space
            .dist(ai as usize, aj as usize)
            .total_cmp(&space.dist(bi as usize, bj as usize))
            .then((ai, aj).cmp(&(bi, bj)))
    });

    let mut uf = UnionFind::new(n);
    let mut components = n;
    for &(i, j) in &edges {
        if components == k {
            break;
        }
        if uf.union(i, j) {
            components -= 1;
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| uf.find(x as u32) as usize).collect();
    Clustering::from_labels(&labels)
}

/// 3-approximate Max-IP-stable k-clustering: run greedy k-center from `first`
/// and assign every point to its nearest center (ties to the earliest-chosen
/// center).
pub fn max_ip_clustering(space: &MetricSpace, k: usize, first: usize) -> Result<Clustering> {
    let kc = greedy_k_center(space, k, first)?;
    let n = space.n();
    let mut assignment = vec![0usize; n];
    let rows: Vec<&[f64]> = kc.centers.iter().map(|&c| space.row(c)).collect();
    for (x, slot) in assignment.iter_mut().enumerate() {
        let mut best = 0;
        let mut best_d = rows[0][x];
        for (i, row) in rows.iter().enumerate().skip(1) {
            if row[x] < best_d {
                best_d = row[x];
                best = i;
            }
        }
        *slot = best;
    }
    Ok(Clustering::from_assignment(assignment)
        .expect("each center is its own nearest point, so no cluster is empty"))
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
    fn min_ip_hand_trace_k2() {
        // Edges by length: (0,1)=1, (1,2)=2, ... merging to {0,1,2} | {3}.
        let s = line(&[0.0, 1.0, 3.0, 7.0]);
        let c = min_ip_clustering(&s, 2).unwrap();
        assert_eq!(c.cluster(0), &[0, 1, 2]);
        assert_eq!(c.cluster(1), &[3]);
    }

    #[test]
    fn min_ip_hand_trace_k3() {
        let s = line(&[0.0, 1.0, 3.0, 7.0]);
        let c = min_ip_clustering(&s, 3).unwrap();
        assert_eq!(c.cluster(0), &[0, 1]);
        assert_eq!(c.cluster(1), &[2]);
        assert_eq!(c.cluster(2), &[3]);
    }

    #[test]
    fn min_ip_extremes() {
        let s = line(&[5.0, 1.0, 9.0, 2.0]);
        assert_eq!(min_ip_clustering(&s, 4).unwrap().k(), 4);
        assert_eq!(min_ip_clustering(&s, 1).unwrap().k(), 1);
        assert!(min_ip_clustering(&s, 5).is_err());
        assert!(min_ip_clustering(&s, 0).is_err());
    }

    #[test]
    fn min_ip_is_min_stable_for_all_k() {
        let pts: Vec<Vec<f64>> = (0..30)
            .map(|i| vec![(i as f64 * 1.7).sin() * 5.0, (i as f64 * 0.9).cos() * 3.0])
            .collect();
        let s = MetricSpace::from_points(&pts).unwrap();
        for k in 1..=30 {
            let c = min_ip_clustering(&s, k).unwrap();
            assert_eq!(c.k(), k);
            let mv = max_violation(&s, &c, Objective::Minimum);
            assert!(mv <= 1.0 + 1e-12, "k={k}: MaxVi(min)={mv}");
        }
    }

    #[test]
    fn min_ip_handles_duplicates_up_to_n() {
        let s = line(&[0.0, 0.0, 0.0, 4.0]);
        for k in 1..=4 {
            let c = min_ip_clustering(&s, k).unwrap();
            assert_eq!(c.k(), k);
            assert!(max_violation(&s, &c, Objective::Minimum) <= 1.0);
        }
    }

    /// Kruskal cross-check: components must match an independently computed
    /// minimum spanning forest truncated at k components (Prim-grown MST,
    /// heaviest edges removed).
    #[test]
    fn min_ip_matches_truncated_mst() {
        let pts: Vec<Vec<f64>> = (0..18)
            .map(|i| vec![(i as f64 * 2.3).sin() * 7.0, (i as f64 * 1.3).cos() * 4.0])
            .collect();
        let s = MetricSpace::from_points(&pts).unwrap();
        let n = s.n();

        // Prim's algorithm.
        let mut in_tree = vec![false; n];
        let mut best = vec![f64::INFINITY; n];
        let mut parent = vec![usize::MAX; n];
        best[0] = 0.0;
        let mut mst_edges: Vec<(f64, usize, usize)> = Vec::new();
        for _ in 0..n {
            let u = (0..n)
                .filter(|&i| !in_tree[i])
                .min_by(|&a, &b| best[a].total_cmp(&best[b]))
                .unwrap();
            in_tree[u] = true;
            if parent[u] != usize::MAX {
                mst_edges.push((best[u], parent[u], u));
            }
            for v in 0..n {
                if !in_tree[v] && s.dist(u, v) < best[v] {
                    best[v] = s.dist(u, v);
                    parent[v] = u;
                }
            }
        }

        for k in 1..=n {
            // Drop the k-1 heaviest MST edges, compute components.
            let mut kept = mst_edges.clone();
            kept.sort_by(|a, b| a.0.total_cmp(&b.0));
            kept.truncate(n - k);
            let mut uf = UnionFind::new(n);
            for &(_, u, v) in &kept {
                uf.union(u as u32, v as u32);
            }
            let labels: Vec<usize> = (0..n).map(|x| uf.find(x as u32) as usize).collect();
            let expect = Clustering::from_labels(&labels).unwrap();
            let got = min_ip_clustering(&s, k).unwrap();
            assert_eq!(got, expect, "k = {k}");
        }
    }

    #[test]
    fn max_ip_hand_trace_with_tie() {
        // Centers 0 and 20; the point at 10 ties and goes to the earlier
        // center.
        let s = line(&[0.0, 10.0, 11.0, 20.0]);
        let c = max_ip_clustering(&s, 2, 0).unwrap();
        assert_eq!(c.cluster(0), &[0, 1]);
        assert_eq!(c.cluster(1), &[2, 3]);
    }

    #[test]
    fn max_ip_k1_is_vacuously_stable() {
        let s = line(&[0.0, 3.0, 8.0]);
        let c = max_ip_clustering(&s, 1, 0).unwrap();
        assert_eq!(c.k(), 1);
        assert_eq!(max_violation(&s, &c, Objective::Maximum), 0.0);
    }

    #[test]
    fn max_ip_is_three_approximate_on_random_cloud() {
        let pts: Vec<Vec<f64>> = (0..50)
            .map(|i| {
                vec![
                    (i as f64 * 0.61).sin() * 9.0,
                    (i as f64 * 1.97).cos() * 9.0,
                ]
            })
            .collect();
        let s = MetricSpace::from_points(&pts).unwrap();
        for k in [2, 5, 9] {
            let c = max_ip_clustering(&s, k, 0).unwrap();
            let mv = max_violation(&s, &c, Objective::Maximum);
            assert!(mv <= 3.0 + 1e-12, "k={k}: MaxVi(max)={mv}");
        }
    }
}
