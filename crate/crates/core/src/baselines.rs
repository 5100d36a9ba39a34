//! Comparison solvers: greedy largest-first with a dummy color, and TabuCol.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{Coloring, SolverTag};
use crate::graph::Graph;

/// Greedy coloring in largest-first order (decreasing degree, ties by
/// ascending vertex index). Each vertex takes the smallest of the `k` colors
/// not used by an already colored neighbour, or the dummy color when all
/// `k` are blocked. Dummy neighbours block nothing.
pub fn greedy_largest_first(g: &Graph, k: usize) -> Coloring {
    assert!(k >= 1, "color budget must be at least 1");
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.neighbors(v).len()), v));

    let mut assignment: Vec<Option<usize>> = vec![None; g.n()];
    let mut blocked = vec![usize::MAX; k];
    for (stamp, &v) in order.iter().enumerate() {
        for &w in g.neighbors(v) {
            if let Some(c) = assignment[w] {
                blocked[c] = stamp;
            }
        }
        assignment[v] = (0..k).find(|&c| blocked[c] != stamp);
    }
    Coloring::new(assignment, k, SolverTag::Greedy)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TabuConfig {
    pub max_iters: usize,
    pub tenure_base: usize,
    pub tenure_scale: f64,
    pub seed: u64,
}

impl Default for TabuConfig {
    fn default() -> Self {
        Self {
            max_iters: 100_000,
            tenure_base: 7,
            tenure_scale: 0.6,
            seed: 0,
        }
    }
}

impl TabuConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TabuOutcome {
    pub coloring: Coloring,
    /// Conflicting edges of the returned coloring.
    pub conflicts: usize,
    pub initial_conflicts: usize,
    pub iterations: usize,
    /// `(iteration, best conflicts)` each time the incumbent improved,
    /// starting with `(0, initial_conflicts)`.
    pub improvements: Vec<(usize, usize)>,
}

/// TabuCol local search for a k-coloring with the fewest conflicting edges.
///
/// Starts from a uniform random assignment. Each iteration scans every
/// recoloring `(v, c)` of a conflicted vertex and takes the best non-tabu
/// move (ties broken uniformly at random), or a tabu move when it beats the
/// best objective seen so far. Moving `v` away from `c_old` makes
/// `(v, c_old)` tabu for `tenure_base + floor(tenure_scale * conflicts)`
/// iterations. Stops at zero conflicts or after `max_iters` iterations.
pub fn tabucol(g: &Graph, k: usize, cfg: &TabuConfig) -> TabuOutcome {
    assert!(k >= 1, "color budget must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let initial: Vec<usize> = (0..g.n()).map(|_| rng.random_range(0..k)).collect();
    let mut search = TabuSearch::new(g, k, initial);
    let initial_conflicts = search.conflicts;
    let mut best = search.colors.clone();
    let mut best_conflicts = search.conflicts;
    let mut improvements = vec![(0, best_conflicts)];
    let mut iterations = 0;

    while best_conflicts > 0 && iterations < cfg.max_iters {
        iterations += 1;
        let Some((v, c)) = search.pick_move(iterations, best_conflicts, &mut rng) else {
            if k == 1 {
                break;
            }
            continue;
        };
        search.apply(v, c, iterations, cfg);
        if search.conflicts < best_conflicts {
            best_conflicts = search.conflicts;
            best.clone_from(&search.colors);
            improvements.push((iterations, best_conflicts));
        }
    }

    TabuOutcome {
        coloring: Coloring::from_colors(best, k, SolverTag::Tabucol),
        conflicts: best_conflicts,
        initial_conflicts,
        iterations,
        improvements,
    }
}

/// Incremental state: `gamma[v * k + c]` counts neighbours of `v` colored `c`.
struct TabuSearch<'g> {
    g: &'g Graph,
    k: usize,
    colors: Vec<usize>,
    gamma: Vec<u32>,
    tabu_until: Vec<usize>,
    conflicts: usize,
    conflicted: IndexedSet,
}

impl<'g> TabuSearch<'g> {
    fn new(g: &'g Graph, k: usize, colors: Vec<usize>) -> Self {
        let n = g.n();
        let mut gamma = vec![0u32; n * k];
        for &(u, v) in g.edges() {
            gamma[u * k + colors[v]] += 1;
            gamma[v * k + colors[u]] += 1;
        }
        let conflicts = g.edges().iter().filter(|&&(u, v)| colors[u] == colors[v]).count();
        let mut conflicted = IndexedSet::new(n);
        for v in 0..n {
            if gamma[v * k + colors[v]] > 0 {
                conflicted.insert(v);
            }
        }
        Self {
            g,
            k,
            colors,
            gamma,
            tabu_until: vec![0; n * k],
            conflicts,
            conflicted,
        }
    }

    fn pick_move<R: Rng>(&self, iter: usize, best_conflicts: usize, rng: &mut R) -> Option<(usize, usize)> {
        let k = self.k;
        let mut chosen = None;
        let mut best_delta = i64::MAX;
        let mut ties = 0u32;
        for &v in self.conflicted.items() {
            let cur = self.colors[v];
            let here = self.gamma[v * k + cur] as i64;
            for c in (0..k).filter(|&c| c != cur) {
                let delta = self.gamma[v * k + c] as i64 - here;
                let tabu = self.tabu_until[v * k + c] >= iter;
                let aspirates = (self.conflicts as i64 + delta) < best_conflicts as i64;
                if tabu && !aspirates {
                    continue;
                }
                if delta < best_delta {
                    best_delta = delta;
                    chosen = Some((v, c));
                    ties = 1;
                } else if delta == best_delta {
                    ties += 1;
                    if rng.random_range(0..ties) == 0 {
                        chosen = Some((v, c));
                    }
                }
            }
        }
        chosen
    }

    fn apply(&mut self, v: usize, new: usize, iter: usize, cfg: &TabuConfig) {
        let k = self.k;
        let old = self.colors[v];
        let delta = self.gamma[v * k + new] as i64 - self.gamma[v * k + old] as i64;
        self.conflicts = (self.conflicts as i64 + delta) as usize;
        self.colors[v] = new;
        for &u in self.g.neighbors(v) {
            self.gamma[u * k + old] -= 1;
            self.gamma[u * k + new] += 1;
            self.refresh(u);
        }
        self.refresh(v);
        let tenure = cfg.tenure_base + (cfg.tenure_scale * self.conflicts as f64).floor() as usize;
        self.tabu_until[v * k + old] = iter + tenure;
    }

    fn refresh(&mut self, v: usize) {
        if self.gamma[v * self.k + self.colors[v]] > 0 {
            self.conflicted.insert(v);
        } else {
            self.conflicted.remove(v);
        }
    }

    #[cfg(test)]
    fn assert_consistent(&self) {
        let fresh = TabuSearch::new(self.g, self.k, self.colors.clone());
        assert_eq!(fresh.gamma, self.gamma);
        assert_eq!(fresh.conflicts, self.conflicts);
        let mut a = fresh.conflicted.items().to_vec();
        let mut b = self.conflicted.items().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }
}

/// Set of `0..n` with O(1) insert, remove and dense iteration.
struct IndexedSet {
    items: Vec<usize>,
    position: Vec<usize>,
}

impl IndexedSet {
    const ABSENT: usize = usize::MAX;

    fn new(n: usize) -> Self {
        Self {
            items: Vec::new(),
            position: vec![Self::ABSENT; n],
        }
    }

    fn insert(&mut self, v: usize) {
        if self.position[v] == Self::ABSENT {
            self.position[v] = self.items.len();
            self.items.push(v);
        }
    }

    fn remove(&mut self, v: usize) {
        let pos = self.position[v];
        if pos == Self::ABSENT {
            return;
        }
        let last = self.items.pop().expect("nonempty");
        if last != v {
            self.items[pos] = last;
            self.position[last] = pos;
        }
        self.position[v] = Self::ABSENT;
    }

    fn items(&self) -> &[usize] {
        &self.items
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluation::{clash_report, clashing_edges};
    use crate::graph::families;

    fn assert_partially_proper(g: &Graph, c: &Coloring) {
        for &(u, v) in g.edges() {
            if let (Some(a), Some(b)) = (c.color(u), c.color(v)) {
                assert_ne!(a, b, "edge {u}-{v}");
            }
        }
    }

    #[test]
    fn greedy_star() {
        let g = families::star(4).unwrap();
        let c = greedy_largest_first(&g, 2);
        assert_eq!(c.assignment(), &[Some(0), Some(1), Some(1), Some(1), Some(1)]);
        assert_eq!(clashing_edges(&g, &c), Ok(0));
    }

    #[test]
    fn greedy_triangle_overflows_into_dummy() {
        let g = families::complete(3).unwrap();
        let c = greedy_largest_first(&g, 2);
        assert_eq!(c.assignment(), &[Some(0), Some(1), None]);
        let r = clash_report(&g, &c).unwrap();
        assert_eq!(r.clashing_edges, 2);
        assert!((r.clash_percent - 66.67).abs() < 0.01);
    }

    #[test]
    fn greedy_edgeless_single_color() {
        let g = Graph::edgeless(5).unwrap();
        let c = greedy_largest_first(&g, 1);
        assert!(c.assignment().iter().all(|&a| a == Some(0)));
    }

    #[test]
    fn greedy_is_deterministic_and_partially_proper() {
        for seed in 0..10 {
            let g = families::planted_coloring(80, 6, 700, seed).unwrap();
            for k in 1..=7 {
                let c = greedy_largest_first(&g, k);
                assert_eq!(c, greedy_largest_first(&g, k));
                assert_partially_proper(&g, &c);
                assert_eq!(c.len(), g.n());
                assert!(c.assignment().iter().flatten().all(|&x| x < k));
            }
        }
    }

    #[test]
    fn tabu_bipartite_and_complete() {
        let c6 = families::cycle(6).unwrap();
        let out = tabucol(&c6, 2, &TabuConfig { max_iters: 10_000, ..Default::default() });
        assert_eq!(out.conflicts, 0);
        assert_eq!(clashing_edges(&c6, &out.coloring), Ok(0));

        let k4 = families::complete(4).unwrap();
        for seed in 0..10 {
            let out = tabucol(&k4, 4, &TabuConfig { max_iters: 10_000, seed, ..Default::default() });
            assert_eq!(out.conflicts, 0, "seed {seed}");
        }
    }

    #[test]
    fn tabu_single_color_on_edge() {
        let k2 = families::complete(2).unwrap();
        let out = tabucol(&k2, 1, &TabuConfig::default());
        assert_eq!(out.conflicts, 1);
        assert_eq!(out.coloring.dummy_count(), 0);
    }

    #[test]
    fn tabu_incumbent_never_worsens() {
        for seed in 0..5 {
            let g = families::planted_coloring(100, 8, 1200, seed).unwrap();
            let out = tabucol(&g, 7, &TabuConfig { max_iters: 3000, seed, ..Default::default() });
            assert!(out.conflicts <= out.initial_conflicts);
            assert!(out.improvements.windows(2).all(|w| w[1].1 < w[0].1 && w[1].0 > w[0].0));
            assert_eq!(out.improvements.last().unwrap().1, out.conflicts);
            assert_eq!(clashing_edges(&g, &out.coloring), Ok(out.conflicts));
            assert_eq!(out.coloring.dummy_count(), 0);
        }
    }

    #[test]
    fn tabu_is_deterministic() {
        let g = families::planted_coloring(60, 5, 500, 1).unwrap();
        let cfg = TabuConfig { max_iters: 2000, seed: 3, ..Default::default() };
        assert_eq!(tabucol(&g, 5, &cfg), tabucol(&g, 5, &cfg));
    }

    #[test]
    fn incremental_counts_match_recount() {
        let g = families::planted_coloring(30, 4, 120, 2).unwrap();
        let cfg = TabuConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let initial = (0..g.n()).map(|_| rng.random_range(0..3)).collect();
        let mut search = TabuSearch::new(&g, 3, initial);
        for iter in 1..500 {
            if let Some((v, c)) = search.pick_move(iter, 0, &mut rng) {
                search.apply(v, c, iter, &cfg);
            }
            search.assert_consistent();
        }
    }
}
