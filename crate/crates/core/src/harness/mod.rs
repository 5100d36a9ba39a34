//! Benchmark orchestration: manifests, run records, reports and plots.

use std::path::PathBuf;

use thiserror::Error;

use crate::evaluation::EvalError;
use crate::graph::GraphError;

mod bench;
mod manifest;
mod plot;
mod report;

pub use bench::{load_graph, run_benchmark, run_on_graphs, BenchConfig, BenchGraph, RunRecord, SolverParams};
pub use manifest::{load_manifest, parse_manifest, Manifest};
pub use plot::{emit_plots, render_boxplot, render_scatter};
pub use report::{read_fig2, read_fig3, runs_csv, write_report, Fig2Row, ReportFiles};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Graph {
        path: PathBuf,
        #[source]
        source: GraphError,
    },
    #[error("manifest line {line}: {reason}")]
    Manifest { line: usize, reason: String },
    #[error("no benchmark graphs matched the manifest")]
    EmptyGraphSet,
    #[error(transparent)]
    UnknownSolver(#[from] crate::coloring::UnknownSolver),
    #[error("invalid solver configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("nothing to plot: {0}")]
    EmptyPlotData(&'static str),
}

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> HarnessError {
    let path = path.into();
    move |source| HarnessError::Io { path, source }
}
