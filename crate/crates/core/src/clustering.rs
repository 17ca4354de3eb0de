//! Partitions of point indices into nonempty clusters.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A partition of points `0..n` into `k` nonempty clusters, stored both as an
/// assignment vector and as per-cluster member lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clustering {
    assignment: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl Clustering {
    /// Build from an assignment vector whose ids must cover `0..k` for
    /// `k = max id + 1` (every cluster nonempty).
    pub fn from_assignment(assignment: Vec<usize>) -> Result<Self> {
        if assignment.is_empty() {
            return Err(Error::Input("assignment is empty".into()));
        }
        let k = assignment.iter().max().unwrap() + 1;
        let mut members = vec![Vec::new(); k];
        for (point, &c) in assignment.iter().enumerate() {
            members[c].push(point);
        }
        if let Some(empty) = members.iter().position(Vec::is_empty) {
            return Err(Error::Input(alloc::format!(
                "cluster id {empty} has no members"
            )));
        }
        Ok(Self { assignment, members })
    }

    /// Build from arbitrary labels, renumbering cluster ids by first
    /// occurrence so the result is canonical under label permutation.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Input("label vector is empty".into()));
        }
        let max = labels.iter().max().unwrap() + 1;
        let mut remap = vec![usize::MAX; max];
        let mut next = 0;
        let assignment = labels
            .iter()
            .map(|&l| {
                if remap[l] == usize::MAX {
                    remap[l] = next;
                    next += 1;
                }
                remap[l]
            })
            .collect();
        Self::from_assignment(assignment)
    }

    /// The single-cluster partition of `n` points.
    pub fn single(n: usize) -> Self {
        Self::from_assignment(vec![0; n]).expect("n >= 1")
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    /// Number of clusters.
    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn members(&self) -> &[Vec<usize>] {
        &self.members
    }

    /// Cluster id containing point `x`.
    #[inline]
    pub fn cluster_of(&self, x: usize) -> usize {
        self.assignment[x]
    }

    /// Members of cluster `c`, in ascending point order.
    pub fn cluster(&self, c: usize) -> &[usize] {
        &self.members[c]
    }
}
