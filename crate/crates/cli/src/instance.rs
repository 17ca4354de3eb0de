//! Instance specification: either a data file interpreted under a metric
//! kind, or a named synthetic generator with `key=value` parameters.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use ipstab_core::{datagen, MetricSpace};

use crate::error::{AppError, AppResult};
use crate::io::{self, HeaderMode, LoadOptions};

/// How an input file is turned into a metric space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MetricKind {
    #[default]
    Euclidean,
    Matrix,
    Graph,
}

impl std::str::FromStr for MetricKind {
    type Err = AppError;
    fn from_str(s: &str) -> AppResult<Self> {
        match s {
            "euclidean" => Ok(MetricKind::Euclidean),
            "matrix" => Ok(MetricKind::Matrix),
            "graph" => Ok(MetricKind::Graph),
            other => Err(AppError::Config(format!(
                "unknown metric '{other}' (expected euclidean|matrix|graph)"
            ))),
        }
    }
}

/// Everything needed to materialize an instance.
#[derive(Debug, Clone)]
pub enum InstanceSpec {
    CsvPoints {
        path: PathBuf,
        options: LoadOptions,
    },
    MatrixFile {
        path: PathBuf,
    },
    GraphFile {
        path: PathBuf,
    },
    RandomEuclidean {
        n: usize,
        dim: usize,
        seed: u64,
    },
    RandomTree {
        n: usize,
        seed: u64,
    },
    StarPath {
        n: usize,
        k: usize,
    },
    KmeansppHard {
        gadgets: usize,
        beta: f64,
        seed: u64,
    },
    SeparatedBlobs {
        n_per_blob: usize,
        blobs: usize,
        separation: f64,
        seed: u64,
    },
}

/// A materialized instance: the metric space, raw coordinates when the
/// instance is Euclidean, and a provenance string echoed into reports.
#[derive(Debug, Clone)]
pub struct Instance {
    pub space: MetricSpace,
    pub points: Option<Vec<Vec<f64>>>,
    pub provenance: String,
}

impl InstanceSpec {
    /// Whether the realized instance carries coordinates (needed by
    /// k-means++) without materializing it.
    pub fn has_points(&self) -> bool {
        matches!(
            self,
            InstanceSpec::CsvPoints { .. }
                | InstanceSpec::RandomEuclidean { .. }
                | InstanceSpec::KmeansppHard { .. }
                | InstanceSpec::SeparatedBlobs { .. }
        )
    }

    /// Whether the realized instance is a graph metric (needed by random
    /// coloring).
    pub fn is_graph(&self) -> bool {
        matches!(
            self,
            InstanceSpec::GraphFile { .. } | InstanceSpec::RandomTree { .. } | InstanceSpec::StarPath { .. }
        )
    }

    /// Build the spec from CLI flags.
    pub fn from_flags(
        input: Option<&Path>,
        gen: Option<&str>,
        gen_args: &str,
        metric: MetricKind,
        options: LoadOptions,
    ) -> AppResult<InstanceSpec> {
        match (input, gen) {
            (Some(path), None) => Ok(match metric {
                MetricKind::Euclidean => InstanceSpec::CsvPoints {
                    path: path.to_owned(),
                    options,
                },
                MetricKind::Matrix => InstanceSpec::MatrixFile {
                    path: path.to_owned(),
                },
                MetricKind::Graph => InstanceSpec::GraphFile {
                    path: path.to_owned(),
                },
            }),
            (None, Some(kind)) => Self::from_generator(kind, gen_args),
            (Some(_), Some(_)) => Err(AppError::Config(
                "--input and --gen are mutually exclusive".into(),
            )),
            (None, None) => Err(AppError::Config(
                "an instance is required: pass --input FILE or --gen KIND".into(),
            )),
        }
    }

    fn from_generator(kind: &str, gen_args: &str) -> AppResult<InstanceSpec> {
        let args = GenArgs::parse(gen_args)?;
        let spec = match kind {
            "random-euclidean" => InstanceSpec::RandomEuclidean {
                n: args.get_usize("n", 100)?,
                dim: args.get_usize("dim", 2)?,
                seed: args.get_u64("seed", 0)?,
            },
            "random-tree" => InstanceSpec::RandomTree {
                n: args.get_usize("n", 100)?,
                seed: args.get_u64("seed", 0)?,
            },
            "star-path" => InstanceSpec::StarPath {
                n: args.get_usize("n", 1024)?,
                k: args.get_usize("k", 16)?,
            },
            "kmeanspp-hard" => InstanceSpec::KmeansppHard {
                gadgets: args.get_usize("gadgets", 50)?,
                beta: args.get_f64("beta", 50.0)?,
                seed: args.get_u64("seed", 0)?,
            },
            "separated-blobs" => InstanceSpec::SeparatedBlobs {
                n_per_blob: args.get_usize("n-per-blob", 20)?,
                blobs: args.get_usize("blobs", 2)?,
                separation: args.get_f64("separation", 100.0)?,
                seed: args.get_u64("seed", 0)?,
            },
            other => {
                return Err(AppError::Config(format!(
                    "unknown generator '{other}' (expected random-euclidean|random-tree|star-path|kmeanspp-hard|separated-blobs)"
                )))
            }
        };
        args.reject_unused()?;
        Ok(spec)
    }

    /// Load or generate the instance.
    pub fn materialize(&self) -> AppResult<Instance> {
        let Instance {
            space,
            points,
            provenance,
        } = self.materialize_inner()?;
        Ok(Instance {
            space: space.with_label(provenance.as_str()),
            points,
            provenance,
        })
    }

    fn materialize_inner(&self) -> AppResult<Instance> {
        match self {
            InstanceSpec::CsvPoints { path, options } => {
                let load = io::load_csv_with(path, options)?;
                let space = MetricSpace::from_points(&load.points)?;
                Ok(Instance {
                    space,
                    provenance: format!(
                        "csv-points({}, rows={}, cols={}{})",
                        path.display(),
                        load.rows,
                        load.cols_kept,
                        if options.normalize { ", normalized" } else { "" }
                    ),
                    points: Some(load.points),
                })
            }
            InstanceSpec::MatrixFile { path } => {
                let matrix = io::load_matrix_csv(path)?;
                let n = matrix.len();
                let space = MetricSpace::from_matrix(matrix)?;
                Ok(Instance {
                    space,
                    points: None,
                    provenance: format!("matrix-file({}, n={n})", path.display()),
                })
            }
            InstanceSpec::GraphFile { path } => {
                let (n, edges) = io::load_graph(path)?;
                let space = MetricSpace::from_graph(n, &edges)?;
                Ok(Instance {
                    space,
                    points: None,
                    provenance: format!("graph-file({}, n={n}, m={})", path.display(), edges.len()),
                })
            }
            InstanceSpec::RandomEuclidean { n, dim, seed } => {
                if *n == 0 || *dim == 0 {
                    return Err(AppError::Config("need n >= 1 and dim >= 1".into()));
                }
                let points = datagen::gen_random_euclidean(*n, *dim, *seed);
                Ok(Instance {
                    space: MetricSpace::from_points(&points)?,
                    points: Some(points),
                    provenance: format!("random-euclidean(n={n}, dim={dim}, seed={seed})"),
                })
            }
            InstanceSpec::RandomTree { n, seed } => {
                if *n == 0 {
                    return Err(AppError::Config("need n >= 1".into()));
                }
                let edges = datagen::gen_random_tree(*n, *seed);
                Ok(Instance {
                    space: MetricSpace::from_graph(*n, &edges)?,
                    points: None,
                    provenance: format!("random-tree(n={n}, seed={seed})"),
                })
            }
            InstanceSpec::StarPath { n, k } => {
                let edges = datagen::gen_star_path(*n, *k)?;
                Ok(Instance {
                    space: MetricSpace::from_graph(*n, &edges)?,
                    points: None,
                    provenance: format!("star-path(n={n}, k={k})"),
                })
            }
            InstanceSpec::KmeansppHard {
                gadgets,
                beta,
                seed,
            } => {
                let points = datagen::gen_kmeanspp_hard(*gadgets, *beta, *seed)?;
                Ok(Instance {
                    space: MetricSpace::from_points(&points)?,
                    points: Some(points),
                    provenance: format!("kmeanspp-hard(gadgets={gadgets}, beta={beta}, seed={seed})"),
                })
            }
            InstanceSpec::SeparatedBlobs {
                n_per_blob,
                blobs,
                separation,
                seed,
            } => {
                let points =
                    datagen::gen_separated_blobs(*n_per_blob, *blobs, *separation, *seed)?;
                Ok(Instance {
                    space: MetricSpace::from_points(&points)?,
                    points: Some(points),
                    provenance: format!(
                        "separated-blobs(n_per_blob={n_per_blob}, blobs={blobs}, separation={separation}, seed={seed})"
                    ),
                })
            }
        }
    }
}

/// `key=value` list parser for `--gen-args`.
struct GenArgs {
    values: BTreeMap<String, String>,
    used: std::cell::RefCell<Vec<String>>,
}

impl GenArgs {
    fn parse(s: &str) -> AppResult<GenArgs> {
        let mut values = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(|| {
                AppError::Config(format!("bad generator argument '{part}' (expected key=value)"))
            })?;
            values.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(GenArgs {
            values,
            used: std::cell::RefCell::new(Vec::new()),
        })
    }

    fn get<T: std::str::FromStr>(&self, key: &str, default: T) -> AppResult<T> {
        self.used.borrow_mut().push(key.to_string());
        match self.values.get(key) {
            None => Ok(default),
            Some(raw) => raw.parse().map_err(|_| {
                AppError::Config(format!("cannot parse generator argument {key}={raw}"))
            }),
        }
    }

    fn get_usize(&self, key: &str, default: usize) -> AppResult<usize> {
        self.get(key, default)
    }

    fn get_u64(&self, key: &str, default: u64) -> AppResult<u64> {
        self.get(key, default)
    }

    fn get_f64(&self, key: &str, default: f64) -> AppResult<f64> {
        self.get(key, default)
    }

    fn reject_unused(&self) -> AppResult<()> {
        let used = self.used.borrow();
        for key in self.values.keys() {
            if !used.contains(key) {
                return Err(AppError::Config(format!(
                    "unknown generator argument '{key}'"
                )));
            }
        }
        Ok(())
    }
}

/// Convenience constructor used by tests and the oracle command.
pub fn csv_options(
    header: HeaderMode,
    drop_non_numeric: bool,
    columns: Option<Vec<usize>>,
    normalize: bool,
) -> LoadOptions {
    LoadOptions {
        header,
        drop_non_numeric,
        columns,
        normalize,
    }
}
