//! Graph coloring by heat-diffusion gradient descent.
//!
//! - [`graph`]: graphs, DIMACS `.col` I/O and interval graphs
//! - [`diffusion`]: the heat-diffusion solver
//! - [`baselines`]: greedy largest-first and TabuCol
//! - [`evaluation`]: clash metrics, exact oracle, summary statistics
//! - [`harness`]: benchmark runs, reports and plots

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baselines;
pub mod coloring;
pub mod diffusion;
pub mod evaluation;
pub mod graph;
pub mod harness;

pub use coloring::{Coloring, SolverTag};
pub use graph::Graph;
