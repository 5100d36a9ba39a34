//! Heat-diffusion solver for k-coloring.
//!
//! The solver keeps a location matrix `theta` in `[0,1]^{n x k}`. Each step
//! draws a uniform sample `x` of the same shape, smooths the location as
//! `G = erf((theta - x) / sqrt(2 tau))`, and evaluates the clash target
//!
//! ```text
//! f(G) = sum(A * S S^T),   S = row_softmax(G / alpha)
//! ```
//!
//! where `A` is the symmetric adjacency matrix. The closed-form gradient of
//! `f` with respect to `theta` is followed by projected gradient descent and
//! `tau` is annealed towards `tau_min`. Rows of `theta` decode to colors by
//! argmax.

use std::f64::consts::PI;

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Coloring, SolverTag};
use crate::evaluation;
use crate::graph::Graph;

/// Name of the generator recorded alongside every seed.
pub const RNG_NAME: &str = "chacha8";

#[derive(Debug, Error, PartialEq)]
pub enum DiffusionError {
    #[error("diffusion time must be positive, got {0}")]
    NonPositiveTau(f64),
    #[error("softmax temperature must be positive, got {0}")]
    NonPositiveAlpha(f64),
    #[error("matrix is {got:?} but the graph needs {expected:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum TauSchedule {
    #[default]
    Linear,
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ThetaInit {
    #[default]
    Uniform,
    ConstantHalf,
}

/// Where the softmax of the target is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Composition {
    /// `f(erf((theta - x) / sqrt(2 tau)))`, the heat-smoothed target.
    #[default]
    SmoothThenSoftmax,
    /// `f(theta)` directly: plain projected gradient descent on the softmax
    /// relaxation with no sampling or smoothing.
    SoftmaxOfTheta,
}

/// Every hyperparameter of a heat-diffusion run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiffusionConfig {
    pub k: usize,
    pub iterations: usize,
    pub tau0: f64,
    pub tau_min: f64,
    pub schedule: TauSchedule,
    pub alpha: f64,
    pub eta: f64,
    pub samples: usize,
    pub seed: u64,
    pub theta_init: ThetaInit,
    pub composition: Composition,
}

impl Default for DiffusionConfig {
    fn default() -> Self {
        Self {
            k: 3,
            iterations: 1000,
            tau0: 1.0,
            tau_min: 0.01,
            schedule: TauSchedule::Linear,
            alpha: 1.0,
            eta: 0.5,
            samples: 1,
            seed: 0,
            theta_init: ThetaInit::Uniform,
            composition: Composition::SmoothThenSoftmax,
        }
    }
}

impl DiffusionConfig {
    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), DiffusionError> {
        let bad = |msg: String| Err(DiffusionError::InvalidConfig(msg));
        if self.k < 1 {
            return bad("k must be at least 1".into());
        }
        if self.iterations < 1 {
            return bad("iterations must be at least 1".into());
        }
        if !(self.tau_min > 0.0 && self.tau0 >= self.tau_min) {
            return bad(format!(
                "need tau0 >= tau_min > 0, got tau0={} tau_min={}",
                self.tau0, self.tau_min
            ));
        }
        if !(self.alpha > 0.0) {
            return Err(DiffusionError::NonPositiveAlpha(self.alpha));
        }
        if !(self.eta > 0.0) {
            return bad(format!("eta must be positive, got {}", self.eta));
        }
        if self.samples < 1 {
            return bad("samples must be at least 1".into());
        }
        Ok(())
    }
}

/// Solver location and the annealing clock.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaState {
    pub theta: Array2<f64>,
    pub iteration: usize,
    pub tau: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SolveTrace {
    /// Target value at each step's sample, before the update.
    pub target: Vec<f64>,
    /// Clashing edges of the decoded coloring after each step.
    pub clashes: Vec<usize>,
    pub best_clashes: usize,
    /// Step after which the best coloring was observed.
    pub best_iteration: usize,
}

fn init_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for the per-step samples; a separate stream from the
/// initialization so that changing `theta_init` leaves the samples alone.
fn sample_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    rng
}

pub fn init_theta(n: usize, k: usize, cfg: &DiffusionConfig) -> ThetaState {
    let theta = match cfg.theta_init {
        ThetaInit::ConstantHalf => Array2::from_elem((n, k), 0.5),
        ThetaInit::Uniform => {
            let mut rng = init_rng(cfg.seed);
            Array2::from_shape_simple_fn((n, k), || rng.random::<f64>())
        }
    };
    ThetaState {
        theta,
        iteration: 0,
        tau: cfg.tau0,
    }
}

/// `G_ij = erf((theta_ij - x_ij) / sqrt(2 tau))`.
pub fn heat_smooth(theta: &Array2<f64>, x: &Array2<f64>, tau: f64) -> Result<Array2<f64>, DiffusionError> {
    if !(tau > 0.0) {
        return Err(DiffusionError::NonPositiveTau(tau));
    }
    if theta.dim() != x.dim() {
        return Err(DiffusionError::ShapeMismatch {
            expected: theta.dim(),
            got: x.dim(),
        });
    }
    let scale = (2.0 * tau).sqrt();
    Ok(ndarray::Zip::from(theta)
        .and(x)
        .map_collect(|&t, &s| libm::erf((t - s) / scale)))
}

/// Row-wise `softmax(G / alpha)` with max subtraction.
pub fn row_softmax(g: &Array2<f64>, alpha: f64) -> Result<Array2<f64>, DiffusionError> {
    if !(alpha > 0.0) {
        return Err(DiffusionError::NonPositiveAlpha(alpha));
    }
    let mut out = g.as_standard_layout().into_owned();
    for mut row in out.rows_mut() {
        softmax_in_place(row.as_slice_mut().expect("standard layout"), alpha);
    }
    Ok(out)
}

fn softmax_in_place(row: &mut [f64], alpha: f64) {
    let max = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut sum = 0.0;
    for v in row.iter_mut() {
        *v = ((*v - max) / alpha).exp();
        sum += *v;
    }
    for v in row.iter_mut() {
        *v /= sum;
    }
}

fn check_rows(g: &Graph, m: &Array2<f64>) -> Result<(), DiffusionError> {
    if m.nrows() != g.n() {
        return Err(DiffusionError::ShapeMismatch {
            expected: (g.n(), m.ncols()),
            got: m.dim(),
        });
    }
    Ok(())
}

/// `f = sum_{i,j} A_ij <S_i, S_j>`, i.e. twice the sum over undirected edges.
pub fn target_value(g: &Graph, s: &Array2<f64>) -> Result<f64, DiffusionError> {
    check_rows(g, s)?;
    let s = s.as_standard_layout();
    Ok(edge_overlap(g, s.as_slice().expect("standard layout"), s.ncols()))
}

fn edge_overlap(g: &Graph, s: &[f64], k: usize) -> f64 {
    let total: f64 = g
        .edges()
        .iter()
        .map(|&(u, v)| dot(row(s, k, u), row(s, k, v)))
        .sum();
    2.0 * total
}

fn row(data: &[f64], k: usize, i: usize) -> &[f64] {
    &data[i * k..(i + 1) * k]
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact gradient of `theta -> f(softmax(erf((theta - x)/sqrt(2 tau)) / alpha))`.
pub fn target_gradient(
    g: &Graph,
    theta: &Array2<f64>,
    x: &Array2<f64>,
    tau: f64,
    alpha: f64,
) -> Result<Array2<f64>, DiffusionError> {
    smoothed_value_and_gradient(g, theta, x, tau, alpha).map(|(_, grad)| grad)
}

/// Target value and gradient of the heat-smoothed objective in one pass.
pub fn smoothed_value_and_gradient(
    g: &Graph,
    theta: &Array2<f64>,
    x: &Array2<f64>,
    tau: f64,
    alpha: f64,
) -> Result<(f64, Array2<f64>), DiffusionError> {
    check_rows(g, theta)?;
    let smoothed = heat_smooth(theta, x, tau)?;
    let (f, mut grad) = softmax_value_and_gradient(g, &smoothed, alpha)?;
    // d erf(z)/d theta = 2/sqrt(pi) exp(-z^2) / sqrt(2 tau)
    let scale = (2.0 * tau).sqrt();
    let coef = 2.0 / PI.sqrt() / scale;
    ndarray::Zip::from(&mut grad)
        .and(theta)
        .and(x)
        .for_each(|d, &t, &s| {
            let z = (t - s) / scale;
            *d *= coef * (-z * z).exp();
        });
    Ok((f, grad))
}

/// Value and gradient of `M -> f(softmax(M / alpha))` with respect to `M`.
pub fn softmax_value_and_gradient(
    g: &Graph,
    m: &Array2<f64>,
    alpha: f64,
) -> Result<(f64, Array2<f64>), DiffusionError> {
    check_rows(g, m)?;
    let s = row_softmax(m, alpha)?;
    let (n, k) = s.dim();
    let s = s.as_slice().expect("standard layout");
    let f = edge_overlap(g, s, k);
    let mut grad = Array2::<f64>::zeros((n, k));
    let out = grad.as_slice_mut().expect("standard layout");
    let mut d_s = vec![0.0; k];
    for i in 0..n {
        // df/dS_i = 2 * sum of neighbour rows
        d_s.iter_mut().for_each(|v| *v = 0.0);
        for &j in g.neighbors(i) {
            for (acc, &sj) in d_s.iter_mut().zip(row(s, k, j)) {
                *acc += 2.0 * sj;
            }
        }
        let si = row(s, k, i);
        let mean = dot(&d_s, si);
        for c in 0..k {
            out[i * k + c] = si[c] * (d_s[c] - mean) / alpha;
        }
    }
    Ok((f, grad))
}

/// Diffusion time at step `t`, from `tau0` at `t = 0` to `tau_min` at
/// `t = iterations - 1`. Steps past the end stay at `tau_min`.
pub fn tau_schedule(cfg: &DiffusionConfig, t: usize) -> f64 {
    if cfg.iterations <= 1 {
        return cfg.tau0;
    }
    if t >= cfg.iterations - 1 {
        return cfg.tau_min;
    }
    let frac = t as f64 / (cfg.iterations - 1) as f64;
    match cfg.schedule {
        TauSchedule::Linear => cfg.tau0 + (cfg.tau_min - cfg.tau0) * frac,
        TauSchedule::Geometric => cfg.tau0 * (cfg.tau_min / cfg.tau0).powf(frac),
    }
}

/// One projected gradient step. Returns the target value at the sample (the
/// mean over samples when `samples > 1`).
pub fn step<R: Rng + ?Sized>(
    g: &Graph,
    state: &mut ThetaState,
    cfg: &DiffusionConfig,
    rng: &mut R,
) -> Result<f64, DiffusionError> {
    check_rows(g, &state.theta)?;
    let dim = state.theta.dim();
    let (target, grad) = match cfg.composition {
        Composition::SmoothThenSoftmax => {
            let mut f_sum = 0.0;
            let mut grad_sum = Array2::<f64>::zeros(dim);
            for _ in 0..cfg.samples {
                let x = Array2::from_shape_simple_fn(dim, || rng.random::<f64>());
                let (f, grad) = smoothed_value_and_gradient(g, &state.theta, &x, state.tau, cfg.alpha)?;
                f_sum += f;
                grad_sum += &grad;
            }
            let m = cfg.samples as f64;
            (f_sum / m, grad_sum / m)
        }
        Composition::SoftmaxOfTheta => softmax_value_and_gradient(g, &state.theta, cfg.alpha)?,
    };
    ndarray::Zip::from(&mut state.theta)
        .and(&grad)
        .for_each(|t, &d| *t = (*t - cfg.eta * d).clamp(0.0, 1.0));
    state.iteration += 1;
    state.tau = tau_schedule(cfg, state.iteration);
    Ok(target)
}

/// Argmax of each row; ties go to the lowest color index.
pub fn decode(theta: &Array2<f64>) -> Coloring {
    let colors = theta
        .rows()
        .into_iter()
        .map(|r| {
            let mut best = 0;
            for (c, &v) in r.iter().enumerate() {
                if v > r[best] {
                    best = c;
                }
            }
            best
        })
        .collect();
    Coloring::from_colors(colors, theta.ncols(), SolverTag::Heat)
}

/// Runs `cfg.iterations` steps and returns the best decoded coloring seen
/// (fewest clashes, earliest on ties) together with the full trace.
pub fn solve(g: &Graph, cfg: &DiffusionConfig) -> Result<(Coloring, SolveTrace), DiffusionError> {
    cfg.validate()?;
    let mut state = init_theta(g.n(), cfg.k, cfg);
    let mut rng = sample_rng(cfg.seed);
    let mut trace = SolveTrace {
        target: Vec::with_capacity(cfg.iterations),
        clashes: Vec::with_capacity(cfg.iterations),
        best_clashes: usize::MAX,
        best_iteration: 0,
    };
    let mut best = decode(&state.theta);
    for _ in 0..cfg.iterations {
        let f = step(g, &mut state, cfg, &mut rng)?;
        let coloring = decode(&state.theta);
        let clashes = evaluation::clashing_edges(g, &coloring).expect("decoded coloring covers every vertex");
        trace.target.push(f);
        trace.clashes.push(clashes);
        if clashes < trace.best_clashes {
            trace.best_clashes = clashes;
            trace.best_iteration = state.iteration;
            best = coloring;
        }
    }
    Ok((best, trace))
}
