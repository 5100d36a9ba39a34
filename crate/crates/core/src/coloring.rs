use std::fmt;

use serde::{Deserialize, Serialize};

/// Which solver produced a coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverTag {
    Greedy,
    Heat,
    Tabucol,
    /// Witness from the exact backtracking oracle.
    Oracle,
}

impl SolverTag {
    /// The solvers the benchmark harness can run.
    pub const ALL: [SolverTag; 3] = [SolverTag::Greedy, SolverTag::Heat, SolverTag::Tabucol];

    pub fn as_str(self) -> &'static str {
        match self {
            SolverTag::Greedy => "greedy",
            SolverTag::Heat => "heat",
            SolverTag::Tabucol => "tabucol",
            SolverTag::Oracle => "oracle",
        }
    }

    pub fn is_stochastic(self) -> bool {
        !matches!(self, SolverTag::Greedy | SolverTag::Oracle)
    }
}

impl fmt::Display for SolverTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown solver tag {0:?} (expected heat, greedy or tabucol)")]
pub struct UnknownSolver(pub String);

impl std::str::FromStr for SolverTag {
    type Err = UnknownSolver;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "greedy" => Ok(SolverTag::Greedy),
            "heat" => Ok(SolverTag::Heat),
            "tabucol" => Ok(SolverTag::Tabucol),
            _ => Err(UnknownSolver(s.to_string())),
        }
    }
}

/// A per-vertex color assignment over `0..k`. `None` is the dummy color,
/// used by the greedy solver for vertices it could not color within budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    assignment: Vec<Option<usize>>,
    k: usize,
    solver: SolverTag,
}

impl Coloring {
    /// Panics if any assigned color is `>= k`.
    pub fn new(assignment: Vec<Option<usize>>, k: usize, solver: SolverTag) -> Self {
        assert!(
            assignment.iter().flatten().all(|&c| c < k),
            "color outside budget {k}"
        );
        Self { assignment, k, solver }
    }

    /// Coloring with no dummy vertices.
    pub fn from_colors(colors: Vec<usize>, k: usize, solver: SolverTag) -> Self {
        Self::new(colors.into_iter().map(Some).collect(), k, solver)
    }

    pub fn assignment(&self) -> &[Option<usize>] {
        &self.assignment
    }

    pub fn color(&self, v: usize) -> Option<usize> {
        self.assignment[v]
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn solver(&self) -> SolverTag {
        self.solver
    }

    pub fn dummy_count(&self) -> usize {
        self.assignment.iter().filter(|c| c.is_none()).count()
    }
}
