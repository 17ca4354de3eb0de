//! Finite metric spaces with a materialized distance matrix.
//!
//! All clustering algorithms in this crate consume a [`MetricSpace`]: `n`
//! points, a symmetric `n x n` distance matrix, and per-point rows sorted by
//! distance. The full matrix is always materialized, which caps practical
//! instance sizes around tens of thousands of points.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Relative tolerance used when validating metric axioms; scaled by the
/// maximum distance in the space.
pub const VALIDATION_TOL: f64 = 1e-9;

/// How a [`MetricSpace`] was constructed. Some operations are only defined
/// for particular sources (e.g. random coloring requires a graph metric).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceKind {
    /// Euclidean distances of a point cloud.
    Points,
    /// An explicit user-supplied distance matrix.
    Matrix,
    /// Hop distances of a connected unweighted graph.
    Graph,
}

/// A finite metric space over points `0..n`.
///
/// Immutable after construction; all queries are pure reads and safe to share
/// across threads.
#[derive(Debug, Clone)]
pub struct MetricSpace {
    n: usize,
    /// Row-major `n * n` distance matrix.
    dist: Vec<f64>,
    /// Row-major `n * n`: row `i` holds all point indices sorted by ascending
    /// distance from `i` (ties by index for point/matrix sources).
    sorted: Vec<u32>,
    max_dist: f64,
    kind: SpaceKind,
    label: Option<String>,
}

impl MetricSpace {
    /// Euclidean metric of a point cloud. All points must share a dimension
    /// of at least 1 and have finite coordinates.
    pub fn from_points(points: &[Vec<f64>]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Input("point set is empty".into()));
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(Error::Input("points must have dimension >= 1".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::Input(alloc::format!(
                    "dimension mismatch: point 0 has {dim} coordinates, point {i} has {}",
                    p.len()
                )));
            }
            if let Some(c) = p.iter().find(|c| !c.is_finite()) {
                return Err(Error::Input(alloc::format!(
                    "non-finite coordinate {c} in point {i}"
                )));
            }
        }
        let n = points.len();
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = euclidean(&points[i], &points[j]);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Ok(Self::assemble(n, dist, SpaceKind::Points, None))
    }

    /// Metric from an explicit square matrix.
    ///
    /// The matrix must be symmetric within `1e-9` relative tolerance (it is
    /// symmetrized by averaging), have a zero diagonal and non-negative
    /// entries, and satisfy the triangle inequality within the validation
    /// tolerance. Validation is cubic in `n`, so this constructor is meant
    /// for modest instance sizes.
    pub fn from_matrix(matrix: Vec<Vec<f64>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::Input("matrix is empty".into()));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Input(alloc::format!(
                    "matrix is not square: {n} rows but row {i} has {} entries",
                    row.len()
                )));
            }
        }
        let mut max_abs = 0.0f64;
        for (i, row) in matrix.iter().enumerate() {
            for (j, &d) in row.iter().enumerate() {
                if !d.is_finite() {
                    return Err(Error::Input(alloc::format!(
                        "non-finite entry {d} at ({i}, {j})"
                    )));
                }
                if d < 0.0 {
                    return Err(Error::Input(alloc::format!(
                        "negative entry {d} at ({i}, {j})"
                    )));
                }
                max_abs = max_abs.max(d.abs());
            }
        }
        let sym_tol = VALIDATION_TOL * max_abs;
        for (i, row) in matrix.iter().enumerate() {
            if row[i] != 0.0 {
                return Err(Error::Input(alloc::format!(
                    "nonzero diagonal entry {} at ({i}, {i})",
                    row[i]
                )));
            }
            for j in (i + 1)..n {
                if (row[j] - matrix[j][i]).abs() > sym_tol {
                    return Err(Error::Input(alloc::format!(
                        "asymmetry beyond tolerance: d({i},{j})={} but d({j},{i})={}",
                        row[j], matrix[j][i]
                    )));
                }
            }
        }
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = 0.5 * (matrix[i][j] + matrix[j][i]);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        let space = Self::assemble(n, dist, SpaceKind::Matrix, None);
        space.check_triangle()?;
        Ok(space)
    }

    /// Shortest-path hop metric of a connected unweighted graph, computed by
    /// one breadth-first traversal per vertex.
    pub fn from_graph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("graph has no vertices".into()));
        }
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Input(alloc::format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                continue;
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
            nbrs.dedup();
        }

        let mut dist = vec![0.0; n * n];
        let mut sorted = vec![0u32; n * n];
        let mut hop = vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        for src in 0..n {
            hop.fill(u32::MAX);
            hop[src] = 0;
            queue.clear();
            queue.push_back(src as u32);
            // BFS dequeue order is nondecreasing in distance, which directly
            // yields the sorted row.
            let row_sorted = &mut sorted[src * n..(src + 1) * n];
            let mut visited = 0usize;
            while let Some(u) = queue.pop_front() {
                row_sorted[visited] = u;
                visited += 1;
                for &v in &adj[u as usize] {
                    if hop[v as usize] == u32::MAX {
                        hop[v as usize] = hop[u as usize] + 1;
                        queue.push_back(v);
                    }
                }
            }
            if visited < n {
                let unreachable = (0..n).find(|&v| hop[v] == u32::MAX).unwrap();
                return Err(Error::Input(alloc::format!(
                    "graph is disconnected: no path between {src} and {unreachable}"
                )));
            }
            let row = &mut dist[src * n..(src + 1) * n];
            for (slot, &h) in row.iter_mut().zip(hop.iter()) {
                *slot = h as f64;
            }
        }

        let max_dist = dist.iter().copied().fold(0.0, f64::max);
        Ok(Self {
            n,
            dist,
            sorted,
            max_dist,
            kind: SpaceKind::Graph,
            label: None,
        })
    }

    fn assemble(n: usize, dist: Vec<f64>, kind: SpaceKind, label: Option<String>) -> Self {
        let mut sorted = vec![0u32; n * n];
        for i in 0..n {
            let row = &dist[i * n..(i + 1) * n];
            let out = &mut sorted[i * n..(i + 1) * n];
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = j as u32;
            }
            out.sort_unstable_by(|&a, &b| {
                row[a as usize]
                    .total_cmp(&row[b as usize])
                    .then(a.cmp(&b))
            });
        }
        let max_dist = dist.iter().copied().fold(0.0, f64::max);
        Self {
            n,
            dist,
            sorted,
            max_dist,
            kind,
            label,
        }
    }

    /// Attach a human-readable source description, echoed in reports.
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Largest pairwise distance in the space.
    pub fn max_distance(&self) -> f64 {
        self.max_dist
    }

    /// Distance between points `i` and `j`.
    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    /// Distance row of point `i`, indexed by the other point.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    /// `(distance, point)` pairs of row `i` in ascending distance order.
    pub fn sorted_row(&self, i: usize) -> impl Iterator<Item = (f64, usize)> + '_ {
        let row = self.row(i);
        self.sorted[i * self.n..(i + 1) * self.n]
            .iter()
            .map(move |&j| (row[j as usize], j as usize))
    }

    /// Number of points within distance `radius` of `center` (inclusive, so
    /// the result is at least 1). Binary search over the sorted row.
    pub fn ball_size(&self, center: usize, radius: f64) -> usize {
        assert!(center < self.n, "point index {center} out of range");
        assert!(radius >= 0.0, "negative ball radius {radius}");
        let row = self.row(center);
        self.sorted[center * self.n..(center + 1) * self.n]
            .partition_point(|&j| row[j as usize] <= radius)
    }

    /// Check the metric axioms: symmetry, zero diagonal, non-negativity, and
    /// the triangle inequality within `VALIDATION_TOL * max_distance`.
    pub fn validate(&self) -> Result<()> {
        let tol = VALIDATION_TOL * self.max_dist;
        for i in 0..self.n {
            if self.dist(i, i) != 0.0 {
                return Err(Error::Input(alloc::format!(
                    "nonzero self-distance {} at point {i}",
                    self.dist(i, i)
                )));
            }
            for j in 0..self.n {
                let d = self.dist(i, j);
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::Input(alloc::format!(
                        "invalid distance {d} between {i} and {j}"
                    )));
                }
                if (d - self.dist(j, i)).abs() > tol {
                    return Err(Error::Input(alloc::format!(
                        "asymmetry: d({i},{j})={d} but d({j},{i})={}",
                        self.dist(j, i)
                    )));
                }
            }
        }
        self.check_triangle()
    }

    fn check_triangle(&self) -> Result<()> {
        let tol = VALIDATION_TOL * self.max_dist;
        for i in 0..self.n {
            for m in 0..self.n {
                let d_im = self.dist(i, m);
                for j in 0..self.n {
                    if self.dist(i, j) > d_im + self.dist(m, j) + tol {
                        return Err(Error::Input(alloc::format!(
                            "triangle inequality violated: d({i},{j})={} > d({i},{m})+d({m},{j})={}",
                            self.dist(i, j),
                            d_im + self.dist(m, j)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    let sq: f64 = a
        .iter()
        .zip(b.iter())
        .map(|(x, y)| {
            let d = x - y;
            d * d
        })
        .sum();
    libm::sqrt(sq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(points: &[f64]) -> MetricSpace {
        let pts: Vec<Vec<f64>> = points.iter().map(|&x| vec![x]).collect();
        MetricSpace::from_points(&pts).unwrap()
    }

    #[test]
    fn one_dimensional_distances_are_absolute_differences() {
        let s = line(&[0.0, 3.0, 4.0]);
        let expect = [[0.0, 3.0, 4.0], [3.0, 0.0, 1.0], [4.0, 1.0, 0.0]];
        for (i, row) in expect.iter().enumerate() {
            for (j, &d) in row.iter().enumerate() {
                assert_eq!(s.dist(i, j), d);
            }
        }
    }

    #[test]
    fn three_four_five_triangle() {
        let s = MetricSpace::from_points(&[vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(s.dist(0, 1), 5.0);
    }

    #[test]
    fn random_points_validate() {
        // Fixed multiplicative congruential stream; no need for real RNG here.
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let points: Vec<Vec<f64>> = (0..100).map(|_| (0..5).map(|_| next()).collect()).collect();
        let s = MetricSpace::from_points(&points).unwrap();
        s.validate().unwrap();
        // Spot-check against a direct recomputation of pairwise norms.
        for i in (0..100).step_by(17) {
            for j in (0..100).step_by(13) {
                let direct = super::euclidean(&points[i], &points[j]);
                assert_eq!(s.dist(i, j), direct);
            }
        }
    }

    #[test]
    fn from_points_rejects_bad_input() {
        assert!(matches!(
            MetricSpace::from_points(&[]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            MetricSpace::from_points(&[vec![0.0], vec![0.0, 1.0]]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            MetricSpace::from_points(&[vec![f64::NAN]]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            MetricSpace::from_points(&[vec![], vec![]]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn smallest_matrix_metric() {
        let s = MetricSpace::from_matrix(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(s.n(), 2);
        assert_eq!(s.dist(0, 1), 1.0);
        assert_eq!(s.kind(), SpaceKind::Matrix);
    }

    #[test]
    fn matrix_triangle_violation_is_named() {
        let err = MetricSpace::from_matrix(vec![
            vec![0.0, 1.0, 5.0],
            vec![1.0, 0.0, 1.0],
            vec![5.0, 1.0, 0.0],
        ])
        .unwrap_err();
        match err {
            Error::Input(msg) => assert!(msg.contains("triangle"), "{msg}"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn matrix_rejects_negative_asymmetric_nonzero_diag() {
        assert!(MetricSpace::from_matrix(vec![vec![0.0, -1.0], vec![-1.0, 0.0]]).is_err());
        assert!(MetricSpace::from_matrix(vec![vec![0.0, 1.0], vec![2.0, 0.0]]).is_err());
        assert!(MetricSpace::from_matrix(vec![vec![0.5, 1.0], vec![1.0, 0.0]]).is_err());
        assert!(MetricSpace::from_matrix(vec![vec![0.0, 1.0]]).is_err());
    }

    #[test]
    fn matrix_from_planar_points_is_accepted() {
        let pts = [[0.0, 0.0], [1.0, 0.25], [0.3, 0.9], [0.75, 0.5]];
        let m: Vec<Vec<f64>> = pts
            .iter()
            .map(|a| pts.iter().map(|b| super::euclidean(a, b)).collect())
            .collect();
        let s = MetricSpace::from_matrix(m).unwrap();
        s.validate().unwrap();
    }

    #[test]
    fn path_graph_distances() {
        let s = MetricSpace::from_graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(s.dist(0, 2), 2.0);
        assert_eq!(s.kind(), SpaceKind::Graph);
        s.validate().unwrap();
    }

    #[test]
    fn star_graph_distances() {
        let edges: Vec<(usize, usize)> = (1..5).map(|l| (0, l)).collect();
        let s = MetricSpace::from_graph(5, &edges).unwrap();
        for i in 1..5 {
            assert_eq!(s.dist(0, i), 1.0);
            for j in 1..5 {
                if i != j {
                    assert_eq!(s.dist(i, j), 2.0);
                }
            }
        }
    }

    #[test]
    fn graph_errors() {
        let err = MetricSpace::from_graph(4, &[(0, 1), (2, 3)]).unwrap_err();
        match err {
            Error::Input(msg) => assert!(msg.contains("disconnected"), "{msg}"),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(MetricSpace::from_graph(2, &[(0, 5)]).is_err());
        assert!(MetricSpace::from_graph(0, &[]).is_err());
    }

    #[test]
    fn path_graph_end_to_end_distance() {
        let n = 23;
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let s = MetricSpace::from_graph(n, &edges).unwrap();
        assert_eq!(s.dist(0, n - 1), (n - 1) as f64);
    }

    #[test]
    fn random_tree_matches_single_source_bfs() {
        // Independent oracle: recompute distances with a fresh BFS per source
        // over an adjacency list built directly from the edges.
        let mut state = 99u64;
        let mut next_below = |m: usize| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize % m
        };
        let n = 50;
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (next_below(i), i)).collect();
        let s = MetricSpace::from_graph(n, &edges).unwrap();

        let mut adj = vec![std::vec::Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for src in 0..n {
            let mut d = vec![usize::MAX; n];
            d[src] = 0;
            let mut q = std::collections::VecDeque::from([src]);
            while let Some(u) = q.pop_front() {
                for &v in &adj[u] {
                    if d[v] == usize::MAX {
                        d[v] = d[u] + 1;
                        q.push_back(v);
                    }
                }
            }
            for (v, &hops) in d.iter().enumerate() {
                assert_eq!(s.dist(src, v), hops as f64);
            }
        }
    }

    #[test]
    fn ball_size_examples() {
        let s = line(&[0.0, 1.0, 2.0, 20.0]);
        assert_eq!(s.ball_size(1, 1.0), 3); // {0, 1, 2}
        assert_eq!(s.ball_size(0, 0.0), 1);
        assert_eq!(s.ball_size(0, s.max_distance()), 4);
    }

    #[test]
    fn ball_size_matches_linear_scan() {
        let s = line(&[0.3, 1.4, 1.4, 2.0, 5.5, 9.9, 10.0]);
        for c in 0..s.n() {
            for r in [0.0, 0.1, 0.6, 1.4, 3.3, 8.0, 12.0] {
                let scan = s.row(c).iter().filter(|&&d| d <= r).count();
                assert_eq!(s.ball_size(c, r), scan, "center {c} radius {r}");
            }
        }
    }

    #[test]
    fn sorted_rows_are_permutations_sorted_by_distance() {
        let s = line(&[4.0, 0.0, 7.0, 1.0, 1.0]);
        for i in 0..s.n() {
            let pairs: Vec<(f64, usize)> = s.sorted_row(i).collect();
            assert_eq!(pairs.len(), s.n());
            let mut seen: Vec<usize> = pairs.iter().map(|&(_, j)| j).collect();
            seen.sort_unstable();
            assert_eq!(seen, (0..s.n()).collect::<Vec<_>>());
            for w in pairs.windows(2) {
                assert!(w[0].0 <= w[1].0);
            }
            assert_eq!(pairs[0].0, 0.0);
        }
    }

    #[test]
    fn duplicate_points_are_permitted() {
        let s = line(&[1.0, 1.0, 2.0]);
        assert_eq!(s.dist(0, 1), 0.0);
        s.validate().unwrap();
    }
}
