//! Standard graph families and a seeded generator for graphs with a planted
//! chromatic number.

use std::collections::BTreeSet;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError};

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).map(|g| g.with_name(format!("K{n}")))
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    let edges = (0..n).map(|u| (u, (u + 1) % n));
    Graph::from_edges(n, edges).map(|g| g.with_name(format!("C{n}")))
}

/// Star with centre 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Result<Graph, GraphError> {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
        .map(|g| g.with_name(format!("star{leaves}")))
}

/// Outer 5-cycle 0..5, inner pentagram 5..10, spokes i -> i+5.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    Graph::from_edges(10, edges)
        .expect("static edge list")
        .with_name("petersen")
}

/// Mycielski construction applied to `g`: triangle-free stays triangle-free
/// and the chromatic number grows by one.
pub fn mycielski(g: &Graph) -> Result<Graph, GraphError> {
    let n = g.n();
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    for &(u, v) in g.edges() {
        edges.push((u, n + v));
        edges.push((v, n + u));
    }
    edges.extend((0..n).map(|u| (n + u, 2 * n)));
    Graph::from_edges(2 * n + 1, edges)
}

/// Random bipartite graph with sides `0..left` and `left..left+right`; each
/// cross pair is an edge with probability `p`. At least one edge is always
/// present, so the chromatic number is exactly 2.
pub fn random_bipartite(left: usize, right: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..left {
        for v in left..left + right {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    if edges.is_empty() && left > 0 && right > 0 {
        edges.push((0, left));
    }
    Graph::from_edges(left + right, edges)
        .map(|g| g.with_name(format!("bipartite{left}x{right}_s{seed}")))
}

/// Graph on `n` vertices with exactly `m` edges whose chromatic number is
/// exactly `k`, in the style of Leighton's scheduling benchmarks.
///
/// Vertices are split evenly into `k` hidden classes and edges only join
/// different classes, so `k` colors suffice. One clique containing a vertex
/// of every class is planted first, so fewer colors cannot. The remaining
/// edges come from random cliques of size `2..=k` over distinct classes.
/// `m` must be at least `k(k-1)/2` and at most the number of cross-class
/// pairs.
pub fn planted_coloring(n: usize, k: usize, m: usize, seed: u64) -> Result<Graph, GraphError> {
    assert!(k >= 1 && n >= k, "need at least one vertex per class");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let classes: Vec<Vec<usize>> = (0..k)
        .map(|c| order.iter().copied().skip(c).step_by(k).collect())
        .collect();

    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    let total: usize = sizes.iter().sum();
    let cross_pairs = (total * total - sizes.iter().map(|s| s * s).sum::<usize>()) / 2;
    assert!(
        m >= k * (k - 1) / 2 && m <= cross_pairs,
        "edge count {m} infeasible for n={n}, k={k}"
    );

    let mut edges = BTreeSet::new();
    let plant = |members: &[usize], edges: &mut BTreeSet<(usize, usize)>| {
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if edges.len() == m {
                    return;
                }
                edges.insert((u.min(v), u.max(v)));
            }
        }
    };

    let spanning: Vec<usize> = classes.iter().map(|members| members[rng.random_range(0..members.len())]).collect();
    plant(&spanning, &mut edges);
    while edges.len() < m {
        let size = if k == 1 { 1 } else { rng.random_range(2..=k) };
        let members: Vec<usize> = index::sample(&mut rng, k, size)
            .into_iter()
            .map(|c| classes[c][rng.random_range(0..classes[c].len())])
            .collect();
        plant(&members, &mut edges);
    }
    Graph::from_edges(n, edges).map(|g| g.with_name(format!("planted_{n}_{k}_{m}_s{seed}")))
}
