//! Clash metrics, an exact k-colorability oracle for small graphs, and
//! per-solver summary statistics.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Coloring, SolverTag};
use crate::graph::Graph;
use crate::harness::RunRecord;

pub const DEFAULT_ORACLE_BOUND: usize = 30;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("coloring has {got} entries but graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("clash percentage is undefined for a graph without edges")]
    NoEdges,
    #[error("graph has {n} vertices, above the oracle bound of {bound}")]
    TooLarge { n: usize, bound: usize },
    #[error("no run records to aggregate")]
    NoRecords,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClashReport {
    pub clashing_edges: usize,
    pub total_edges: usize,
    pub clash_percent: f64,
}

/// An edge clashes when both endpoints share a color or either endpoint
/// carries the dummy color. Each edge counts at most once.
pub fn is_clashing(a: Option<usize>, b: Option<usize>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => x == y,
        _ => true,
    }
}

/// Number of clashing edges; defined for edgeless graphs too.
pub fn clashing_edges(g: &Graph, c: &Coloring) -> Result<usize, EvalError> {
    check_len(g, c)?;
    let a = c.assignment();
    Ok(g.edges()
        .iter()
        .filter(|&&(u, v)| is_clashing(a[u], a[v]))
        .count())
}

pub fn clash_report(g: &Graph, c: &Coloring) -> Result<ClashReport, EvalError> {
    let clashing = clashing_edges(g, c)?;
    if g.m() == 0 {
        return Err(EvalError::NoEdges);
    }
    Ok(ClashReport {
        clashing_edges: clashing,
        total_edges: g.m(),
        clash_percent: 100.0 * clashing as f64 / g.m() as f64,
    })
}

fn check_len(g: &Graph, c: &Coloring) -> Result<(), EvalError> {
    if c.len() != g.n() {
        return Err(EvalError::LengthMismatch {
            expected: g.n(),
            got: c.len(),
        });
    }
    Ok(())
}

/// Exhaustive backtracking search for a proper coloring with at most `k`
/// colors. Returns the witness when one exists.
///
/// Vertices are visited in order of decreasing degree. Color symmetry is
/// broken by never opening more than one new color at a time, which fixes
/// the first vertex to color 0.
pub fn exact_k_colorable(g: &Graph, k: usize, bound: usize) -> Result<Option<Coloring>, EvalError> {
    if g.n() > bound {
        return Err(EvalError::TooLarge { n: g.n(), bound });
    }
    if k == 0 {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.neighbors(v).len()), v));
    let mut colors = vec![usize::MAX; g.n()];
    if !backtrack(g, k, &order, 0, 0, &mut colors) {
        return Ok(None);
    }
    let witness = Coloring::from_colors(colors, k, SolverTag::Oracle);
    debug_assert_eq!(clashing_edges(g, &witness), Ok(0));
    Ok(Some(witness))
}

fn backtrack(g: &Graph, k: usize, order: &[usize], depth: usize, used: usize, colors: &mut [usize]) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    let limit = (used + 1).min(k);
    for c in 0..limit {
        if g.neighbors(v).iter().any(|&w| colors[w] == c) {
            continue;
        }
        colors[v] = c;
        if backtrack(g, k, order, depth + 1, used.max(c + 1), colors) {
            return true;
        }
    }
    colors[v] = usize::MAX;
    false
}

/// Smallest `k >= 1` for which the oracle finds a proper coloring.
pub fn chromatic_number(g: &Graph, bound: usize) -> Result<usize, EvalError> {
    if g.n() > bound {
        return Err(EvalError::TooLarge { n: g.n(), bound });
    }
    (1..=g.n())
        .find(|&k| matches!(exact_k_colorable(g, k, bound), Ok(Some(_))))
        .ok_or(EvalError::TooLarge { n: g.n(), bound })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverStats {
    pub solver: SolverTag,
    pub runs: usize,
    pub mean: f64,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    pub min: f64,
    pub max: f64,
}

impl SolverStats {
    /// Summary of one solver's clash percentages. `None` for an empty slice.
    pub fn from_values(solver: SolverTag, values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        Some(Self {
            solver,
            runs: sorted.len(),
            mean: sorted.iter().sum::<f64>() / sorted.len() as f64,
            median: quantile(&sorted, 0.5),
            q1: quantile(&sorted, 0.25),
            q3: quantile(&sorted, 0.75),
            min: sorted[0],
            max: sorted[sorted.len() - 1],
        })
    }
}

/// Linear interpolation between order statistics at position `(n-1)p`.
/// `sorted` must be ascending and nonempty.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Per-solver statistics of clash percentage, ordered by solver tag.
pub fn aggregate(records: &[RunRecord]) -> Result<Vec<SolverStats>, EvalError> {
    if records.is_empty() {
        return Err(EvalError::NoRecords);
    }
    let mut by_solver: BTreeMap<SolverTag, Vec<f64>> = BTreeMap::new();
    for r in records {
        by_solver.entry(r.solver).or_default().push(r.clash_percent);
    }
    Ok(by_solver
        .into_iter()
        .filter_map(|(tag, values)| SolverStats::from_values(tag, &values))
        .collect())
}
