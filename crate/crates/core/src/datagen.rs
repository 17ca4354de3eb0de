//! Seeded synthetic instance generators for experiments and adversarial
//! tests. Everything here is a pure function of its parameters and seed.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Points drawn i.i.d. uniformly from the unit cube `[0,1]^dim`.
pub fn gen_random_euclidean(n: usize, dim: usize, seed: u64) -> Vec<Vec<f64>> {
    assert!(n >= 1 && dim >= 1, "need n >= 1 and dim >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| (0..dim).map(|_| rng.random::<f64>()).collect())
        .collect()
}

/// Random attachment tree: vertex `i >= 1` attaches to a uniform earlier
/// vertex, giving `n - 1` edges and a connected graph.
pub fn gen_random_tree(n: usize, seed: u64) -> Vec<(usize, usize)> {
    assert!(n >= 1, "need n >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (1..n).map(|i| (rng.random_range(0..i), i)).collect()
}

/// Length of the path in [`gen_star_path`]: `k * ceil(log2 k)`.
pub fn star_path_len(k: usize) -> usize {
    assert!(k >= 2);
    let ceil_log2 = if k.is_power_of_two() {
        k.ilog2()
    } else {
        k.ilog2() + 1
    };
    k * ceil_log2 as usize
}

/// A star joined to a path: vertex 0 is the star center, vertices
/// `1..=path_len` form a path hanging off it, and the remaining
/// `n - path_len - 1` vertices are direct leaves of the center. This is the
/// topology on which random coloring degrades once `k` outgrows the
/// square-root regime.
pub fn gen_star_path(n: usize, k: usize) -> Result<Vec<(usize, usize)>> {
    if k < 2 {
        return Err(Error::Input(alloc::format!("need k >= 2, got {k}")));
    }
    let path = star_path_len(k);
    if n <= path + 1 {
        return Err(Error::Input(alloc::format!(
            "n = {n} too small: need more than path length {path} plus the center"
        )));
    }
    let mut edges = Vec::with_capacity(n - 1);
    for i in 1..=path {
        edges.push((i - 1, i));
    }
    for leaf in (path + 1)..n {
        edges.push((0, leaf));
    }
    Ok(edges)
}

/// Collinear instance family on which a single k-means++ initialization
/// fails with constant probability per gadget: `num_gadgets` gadgets of four
/// points, consecutive gadgets spaced `100 * num_gadgets * beta` apart,
/// intended for `k = 2 * num_gadgets` clusters.
///
/// Each gadget holds a tight pair (gap `1/beta`) straddling the midpoint
/// between two satellites at unit distance: `{0, 1 - h, 1 + h, 2}` with
/// `h = 1/(2 beta)`. When D^2 seeding drops a gadget's two centers on both
/// satellites (constant probability per gadget), Lloyd converges to the
/// split `{0, 1-h} | {1+h, 2}` and stays there: that fixpoint separates the
/// tight pair into two populated clusters, so the pair's min-objective
/// violation is `(1-h)/(2h)`, of order `beta`, and its average-objective
/// violation is about 1.9. Seedings that start from a pair member converge
/// to the stable `{satellite} | {rest}` split instead.
pub fn gen_kmeanspp_hard(num_gadgets: usize, beta: f64, seed: u64) -> Result<Vec<Vec<f64>>> {
    if num_gadgets == 0 {
        return Err(Error::Input("need at least one gadget".into()));
    }
    if beta.is_nan() || beta <= 1.0 {
        return Err(Error::Input(alloc::format!("need beta > 1, got {beta}")));
    }
    let _ = seed; // construction is deterministic; accepted for interface uniformity
    let h = 0.5 / beta;
    let spacing = 100.0 * num_gadgets as f64 * beta;
    let mut points = Vec::with_capacity(4 * num_gadgets);
    for g in 0..num_gadgets {
        let base = g as f64 * spacing;
        points.push(vec![base]);
        points.push(vec![base + 1.0 - h]);
        points.push(vec![base + 1.0 + h]);
        points.push(vec![base + 2.0]);
    }
    Ok(points)
}

/// One-dimensional Gaussian blobs (unit variance) with centers `separation`
/// apart on a line.
pub fn gen_separated_blobs(
    n_per_blob: usize,
    blobs: usize,
    separation: f64,
    seed: u64,
) -> Result<Vec<Vec<f64>>> {
    if n_per_blob == 0 || blobs == 0 {
        return Err(Error::Input("need at least one point per blob".into()));
    }
    if separation.is_nan() || separation <= 0.0 {
        return Err(Error::Input(alloc::format!(
            "separation must be positive, got {separation}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(n_per_blob * blobs);
    for b in 0..blobs {
        let center = b as f64 * separation;
        for _ in 0..n_per_blob {
            points.push(vec![center + standard_normal(&mut rng)]);
        }
    }
    Ok(points)
}

/// Box-Muller draw from N(0, 1) using only portable libm primitives.
fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>(); // (0, 1]: keep the log finite
    let u2: f64 = rng.random();
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * core::f64::consts::PI * u2)
}
