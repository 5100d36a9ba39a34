//! Test-only oracles shared by the integration suites.
#![allow(dead_code)]

use heatcolor::diffusion::{heat_smooth, row_softmax};
use heatcolor::Graph;
use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixtures_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// Smoothed target evaluated with an explicit dense adjacency matrix,
/// `sum(A * S S^T)`, avoiding the solver's edge-list path.
pub fn dense_target(g: &Graph, theta: &Array2<f64>, x: &Array2<f64>, tau: f64, alpha: f64) -> f64 {
    let s = row_softmax(&heat_smooth(theta, x, tau).unwrap(), alpha).unwrap();
    dense_overlap(g, &s)
}

pub fn dense_overlap(g: &Graph, s: &Array2<f64>) -> f64 {
    let n = g.n();
    let mut a = Array2::<f64>::zeros((n, n));
    for &(u, v) in g.edges() {
        a[[u, v]] = 1.0;
        a[[v, u]] = 1.0;
    }
    (&a * &s.dot(&s.t())).sum()
}

/// Central differences of `f` at `theta` with step `h`.
pub fn central_differences(theta: &Array2<f64>, h: f64, f: impl Fn(&Array2<f64>) -> f64) -> Array2<f64> {
    let mut out = Array2::zeros(theta.dim());
    let mut probe = theta.clone();
    for idx in ndarray::indices(theta.dim()) {
        let base = theta[idx];
        probe[idx] = base + h;
        let up = f(&probe);
        probe[idx] = base - h;
        let down = f(&probe);
        probe[idx] = base;
        out[idx] = (up - down) / (2.0 * h);
    }
    out
}

/// `max |a - b| / max |b|`; for an all-zero reference, the absolute error.
pub fn max_relative_error(analytic: &Array2<f64>, reference: &Array2<f64>) -> f64 {
    let diff = analytic
        .iter()
        .zip(reference)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let scale = reference.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

pub struct GradientInstance {
    pub graph: Graph,
    pub theta: Array2<f64>,
    pub x: Array2<f64>,
    pub tau: f64,
    pub alpha: f64,
}

/// Random instance with `n <= 12`, `k <= 4`, `tau` in `[0.05, 2]` and
/// `alpha` in `[0.2, 2]`.
pub fn random_gradient_instance(seed: u64) -> GradientInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=12);
    let k = rng.random_range(2..=4);
    let p = rng.random_range(0.2..0.8);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.random_bool(p))
        .collect();
    let graph = Graph::from_edges(n, edges).unwrap();
    GradientInstance {
        graph,
        theta: Array2::from_shape_simple_fn((n, k), || rng.random::<f64>()),
        x: Array2::from_shape_simple_fn((n, k), || rng.random::<f64>()),
        tau: rng.random_range(0.05..=2.0),
        alpha: rng.random_range(0.2..=2.0),
    }
}

/// Every simple graph on `n` labelled vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..(1 << pairs.len())).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        Graph::from_edges(n, edges).unwrap()
    })
}

/// Every assignment of `k` colors to `n` vertices.
pub fn all_assignments(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..k.pow(n as u32)).map(move |code| (0..n).map(|i| code / k.pow(i as u32) % k).collect())
}

pub fn one_hot(colors: &[usize], k: usize) -> Array2<f64> {
    let mut m = Array2::zeros((colors.len(), k));
    for (v, &c) in colors.iter().enumerate() {
        m[[v, c]] = 1.0;
    }
    m
}
