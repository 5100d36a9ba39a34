use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{io_err, HarnessError, Manifest};
use crate::baselines::{greedy_largest_first, tabucol, TabuConfig};
use crate::coloring::{Coloring, SolverTag};
use crate::diffusion::{self, DiffusionConfig, RNG_NAME};
use crate::evaluation::clash_report;
use crate::graph::{parse_dimacs, Graph};

/// Hyperparameter templates; `k` and `seed` are overridden per run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub diffusion: DiffusionConfig,
    pub tabu: TabuConfig,
}

/// Exact solver settings of one run, enough to repeat it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SolverParams {
    Greedy { k: usize },
    Heat(DiffusionConfig),
    Tabucol {
        k: usize,
        #[serde(flatten)]
        config: TabuConfig,
    },
}

impl SolverParams {
    fn for_run(solver: SolverTag, k: usize, seed: Option<u64>, cfg: &BenchConfig) -> Result<Self, HarnessError> {
        let seed = seed.unwrap_or(0);
        match solver {
            SolverTag::Greedy => Ok(SolverParams::Greedy { k }),
            SolverTag::Heat => {
                let d = cfg.diffusion.clone().with_k(k).with_seed(seed);
                d.validate().map_err(|e| HarnessError::Config(e.to_string()))?;
                Ok(SolverParams::Heat(d))
            }
            SolverTag::Tabucol => Ok(SolverParams::Tabucol {
                k,
                config: cfg.tabu.clone().with_seed(seed),
            }),
            SolverTag::Oracle => Err(HarnessError::Config("the oracle is not a benchmark solver".into())),
        }
    }

    pub fn solver(&self) -> SolverTag {
        match self {
            SolverParams::Greedy { .. } => SolverTag::Greedy,
            SolverParams::Heat(_) => SolverTag::Heat,
            SolverParams::Tabucol { .. } => SolverTag::Tabucol,
        }
    }

    /// Runs the solver; returns the coloring and the iterations it used.
    pub fn run(&self, g: &Graph) -> Result<(Coloring, usize), HarnessError> {
        match self {
            SolverParams::Greedy { k } => Ok((greedy_largest_first(g, *k), g.n())),
            SolverParams::Heat(cfg) => {
                let (c, _trace) = diffusion::solve(g, cfg).map_err(|e| HarnessError::Config(e.to_string()))?;
                Ok((c, cfg.iterations))
            }
            SolverParams::Tabucol { k, config, .. } => {
                let out = tabucol(g, *k, config);
                Ok((out.coloring, out.iterations))
            }
        }
    }
}

/// Outcome of one solver run on one graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub solver: SolverTag,
    /// `None` for deterministic solvers.
    pub seed: Option<u64>,
    /// Generator behind `seed`.
    pub rng: Option<String>,
    pub params: SolverParams,
    pub clash_percent: f64,
    pub clashing_edges: usize,
    pub wall_time_ms: f64,
    pub iterations: usize,
}

impl RunRecord {
    fn sort_key(&self) -> (&str, SolverTag, Option<u64>) {
        (&self.graph, self.solver, self.seed)
    }
}

/// A named graph with the color budget to run it at.
#[derive(Debug, Clone)]
pub struct BenchGraph {
    pub name: String,
    pub graph: Graph,
    pub k: usize,
}

pub fn load_graph(path: &Path) -> Result<Graph, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let graph = parse_dimacs(&text).map_err(|source| HarnessError::Graph {
        path: path.to_path_buf(),
        source,
    })?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(graph.with_name(name))
}

fn collect_graphs(graph_dir: &Path, manifest: &Manifest) -> Result<Vec<BenchGraph>, HarnessError> {
    let mut paths: Vec<_> = std::fs::read_dir(graph_dir)
        .map_err(io_err(graph_dir))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "col"))
        .collect();
    paths.sort();

    let mut graphs = Vec::new();
    for path in paths {
        let stem = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
        let file_name = path.file_name().unwrap_or_default().to_string_lossy().into_owned();
        let Some(k) = manifest.get(&stem).or_else(|| manifest.get(&file_name)) else {
            log::warn!("{}: not in manifest, skipped", path.display());
            continue;
        };
        let graph = load_graph(&path)?;
        graphs.push(BenchGraph { name: stem, graph, k });
    }
    Ok(graphs)
}

/// Runs every `(graph, solver, seed)` combination for the `.col` files in
/// `graph_dir` that the manifest names. Greedy runs once per graph.
/// Records come back sorted by graph name, solver and seed regardless of
/// the order the parallel workers finish in.
pub fn run_benchmark(
    graph_dir: &Path,
    manifest: &Manifest,
    solvers: &[SolverTag],
    seeds: &[u64],
    cfg: &BenchConfig,
) -> Result<Vec<RunRecord>, HarnessError> {
    let graphs = collect_graphs(graph_dir, manifest)?;
    run_on_graphs(&graphs, solvers, seeds, cfg)
}

pub fn run_on_graphs(
    graphs: &[BenchGraph],
    solvers: &[SolverTag],
    seeds: &[u64],
    cfg: &BenchConfig,
) -> Result<Vec<RunRecord>, HarnessError> {
    let mut solvers = solvers.to_vec();
    solvers.sort();
    solvers.dedup();
    let mut seeds = seeds.to_vec();
    seeds.sort();
    seeds.dedup();

    let mut jobs = Vec::new();
    for bg in graphs {
        if bg.graph.m() == 0 {
            log::warn!("{}: no edges, clash percentage undefined, skipped", bg.name);
            continue;
        }
        for &solver in &solvers {
            if solver.is_stochastic() {
                for &seed in &seeds {
                    jobs.push((bg, SolverParams::for_run(solver, bg.k, Some(seed), cfg)?, Some(seed)));
                }
            } else {
                jobs.push((bg, SolverParams::for_run(solver, bg.k, None, cfg)?, None));
            }
        }
    }
    if jobs.is_empty() {
        return Err(HarnessError::EmptyGraphSet);
    }

    let mut records = jobs
        .into_par_iter()
        .map(|(bg, params, seed)| {
            let start = Instant::now();
            let (coloring, iterations) = params.run(&bg.graph)?;
            let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
            let report = clash_report(&bg.graph, &coloring)?;
            Ok(RunRecord {
                graph: bg.name.clone(),
                n: bg.graph.n(),
                m: bg.graph.m(),
                k: bg.k,
                solver: params.solver(),
                seed,
                rng: seed.map(|_| RNG_NAME.to_string()),
                params,
                clash_percent: report.clash_percent,
                clashing_edges: report.clashing_edges,
                wall_time_ms,
                iterations,
            })
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(records)
}
