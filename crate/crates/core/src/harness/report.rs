//! Report files written by `bench`:
//!
//! | file        | columns |
//! |-------------|---------|
//! | `runs.csv`  | graph, n, m, k, solver, seed, rng, clashing_edges, clash_percent, iterations, wall_time_ms, params |
//! | `runs.json` | array of full run records |
//! | `fig2.csv`  | edges, clash_percent, solver |
//! | `fig3.csv`  | solver, runs, mean, median, q1, q3, min, max |
//!
//! Percentages and statistics carry four decimals; `params` is the compact
//! JSON snapshot of the solver settings.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{io_err, HarnessError, RunRecord};
use crate::coloring::SolverTag;
use crate::evaluation::{aggregate, SolverStats};

pub const RUNS_COLUMNS: [&str; 12] = [
    "graph",
    "n",
    "m",
    "k",
    "solver",
    "seed",
    "rng",
    "clashing_edges",
    "clash_percent",
    "iterations",
    "wall_time_ms",
    "params",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fig2Row {
    pub edges: usize,
    pub clash_percent: f64,
    pub solver: SolverTag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportFiles {
    pub runs_csv: PathBuf,
    pub runs_json: PathBuf,
    pub fig2_csv: PathBuf,
    pub fig3_csv: PathBuf,
}

fn pct(v: f64) -> String {
    format!("{v:.4}")
}

fn to_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, HarnessError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| HarnessError::Csv(csv::Error::from(e.into_error())))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// `runs.csv` contents.
pub fn runs_csv(records: &[RunRecord]) -> Result<String, HarnessError> {
    let mut rows = Vec::with_capacity(records.len());
    for r in records {
        rows.push(vec![
            r.graph.clone(),
            r.n.to_string(),
            r.m.to_string(),
            r.k.to_string(),
            r.solver.to_string(),
            r.seed.map(|s| s.to_string()).unwrap_or_default(),
            r.rng.clone().unwrap_or_default(),
            r.clashing_edges.to_string(),
            pct(r.clash_percent),
            r.iterations.to_string(),
            format!("{:.3}", r.wall_time_ms),
            serde_json::to_string(&r.params)?,
        ]);
    }
    to_csv(&RUNS_COLUMNS, rows)
}

fn fig2_csv(records: &[RunRecord]) -> Result<String, HarnessError> {
    let rows = records
        .iter()
        .map(|r| vec![r.m.to_string(), pct(r.clash_percent), r.solver.to_string()]);
    to_csv(&["edges", "clash_percent", "solver"], rows)
}

fn fig3_csv(stats: &[SolverStats]) -> Result<String, HarnessError> {
    let rows = stats.iter().map(|s| {
        vec![
            s.solver.to_string(),
            s.runs.to_string(),
            pct(s.mean),
            pct(s.median),
            pct(s.q1),
            pct(s.q3),
            pct(s.min),
            pct(s.max),
        ]
    });
    to_csv(&["solver", "runs", "mean", "median", "q1", "q3", "min", "max"], rows)
}

/// Writes the four report files into `out_dir`, creating it if needed.
pub fn write_report(records: &[RunRecord], out_dir: &Path) -> Result<ReportFiles, HarnessError> {
    let stats = aggregate(records)?;
    let runs = runs_csv(records)?;
    let json = serde_json::to_string_pretty(records)? + "\n";
    let fig2 = fig2_csv(records)?;
    let fig3 = fig3_csv(&stats)?;

    std::fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    let files = ReportFiles {
        runs_csv: out_dir.join("runs.csv"),
        runs_json: out_dir.join("runs.json"),
        fig2_csv: out_dir.join("fig2.csv"),
        fig3_csv: out_dir.join("fig3.csv"),
    };
    for (path, body) in [
        (&files.runs_csv, runs),
        (&files.runs_json, json),
        (&files.fig2_csv, fig2),
        (&files.fig3_csv, fig3),
    ] {
        std::fs::write(path, body).map_err(io_err(path))?;
    }
    Ok(files)
}

pub fn read_fig2(path: &Path) -> Result<Vec<Fig2Row>, HarnessError> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| map_open(e, path))?;
    Ok(reader.deserialize().collect::<Result<Vec<Fig2Row>, _>>()?)
}

pub fn read_fig3(path: &Path) -> Result<Vec<SolverStats>, HarnessError> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| map_open(e, path))?;
    Ok(reader.deserialize().collect::<Result<Vec<SolverStats>, _>>()?)
}

fn map_open(e: csv::Error, path: &Path) -> HarnessError {
    match e.into_kind() {
        csv::ErrorKind::Io(source) => HarnessError::Io {
            path: path.to_path_buf(),
            source,
        },
        other => HarnessError::Csv(csv::Error::from(std::io::Error::other(format!("{other:?}")))),
    }
}
