//! Individually preference-stable (IP-stable) clustering of finite metric spaces.
//!
//! A clustering is IP stable when every point is, on average, closer to its own
//! cluster than to any other cluster. This crate provides:
//!
//! - [`metric::MetricSpace`]: finite metrics from point clouds, explicit
//!   distance matrices, or unweighted graphs, with cached sorted rows and
//!   logarithmic ball counting.
//! - [`carve`]: the O(1)-approximate IP-stable k-clustering built from
//!   greedy k-center seeding and ball carving.
//! - [`minmax`]: an exact Min-IP-stable clustering (truncated Kruskal) and a
//!   3-approximate Max-IP-stable clustering (greedy k-center + nearest center).
//! - [`stability`]: violation metrics (Vi, MaxVi, MeanVi, unstable counts)
//!   under average/minimum/maximum objectives, plus clustering cost reports.
//! - [`oracle`]: exhaustive small-instance search for the optimal stability
//!   factor, and certification of a clustering against a target factor.
//! - [`baselines`]: k-means++ with Lloyd iterations and random graph coloring.
//! - [`datagen`]: seeded synthetic instance generators.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats, and the
//! experiment CLI live in the companion `ipstab` crate.
//!
//! ```
//! use ipstab_core::{carve, minmax, stability, MetricSpace, Objective};
//!
//! let points = vec![vec![0.0], vec![0.2], vec![5.0], vec![5.1]];
//! let space = MetricSpace::from_points(&points)?;
//!
//! let clustering = carve::ip_clustering(&space, 2, 0)?;
//! let report = stability::stability_report(&space, &clustering, Objective::Average);
//! assert!(report.max_vi <= 1.0);
//!
//! let exact = minmax::min_ip_clustering(&space, 2)?;
//! assert!(stability::max_violation(&space, &exact, Objective::Minimum) <= 1.0);
//! # Ok::<(), ipstab_core::Error>(())
//! ```

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod baselines;
pub mod carve;
pub mod clustering;
pub mod datagen;
mod error;
pub mod metric;
pub mod minmax;
pub mod oracle;
pub mod stability;

pub use clustering::Clustering;
pub use error::{Error, Result};
pub use metric::MetricSpace;
pub use stability::Objective;
