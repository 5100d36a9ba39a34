//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

mod common;

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use heatcolor::baselines::{greedy_largest_first, tabucol, TabuConfig};
use heatcolor::diffusion::{self, target_gradient, target_value, DiffusionConfig};
use heatcolor::evaluation::{self, aggregate, chromatic_number, clash_report, exact_k_colorable, DEFAULT_ORACLE_BOUND};
use heatcolor::graph::{build_interval_graph, families, parse_dimacs, serialize_dimacs, IntervalRequest};
use heatcolor::harness::{run_benchmark, BenchConfig, Manifest};
use heatcolor::{Coloring, Graph, SolverTag};

use common::*;

type Outcome = Result<String, String>;

struct Criterion {
    id: &'static str,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gradient_correctness() -> Outcome {
    const H: f64 = 1e-6;
    const TOL: f64 = 1e-5;
    let mut worst: f64 = 0.0;
    for seed in 0..50 {
        let inst = random_gradient_instance(seed);
        let analytic =
            target_gradient(&inst.graph, &inst.theta, &inst.x, inst.tau, inst.alpha).map_err(|e| e.to_string())?;
        let fd = central_differences(&inst.theta, H, |t| dense_target(&inst.graph, t, &inst.x, inst.tau, inst.alpha));
        let err = max_relative_error(&analytic, &fd);
        worst = worst.max(err);
        ensure(err <= TOL, || {
            format!(
                "instance {seed} (n={}, k={}, tau={:.3}, alpha={:.3}): relative error {err:.2e}",
                inst.graph.n(),
                inst.theta.ncols(),
                inst.tau,
                inst.alpha
            )
        })?;
    }
    Ok(format!("50 instances, worst relative error {worst:.2e} <= {TOL:.0e}"))
}

fn hard_assignment_bridge() -> Outcome {
    let mut checked = 0usize;
    for n in 1..=5 {
        let graphs: Vec<Graph> = all_graphs(n).collect();
        for k in 1..=3 {
            for colors in all_assignments(n, k) {
                let hot = one_hot(&colors, k);
                let coloring = Coloring::from_colors(colors.clone(), k, SolverTag::Heat);
                for g in &graphs {
                    let f = target_value(g, &hot).map_err(|e| e.to_string())?;
                    let clashes = evaluation::clashing_edges(g, &coloring).map_err(|e| e.to_string())?;
                    ensure((f - 2.0 * clashes as f64).abs() <= 1e-9, || {
                        format!("n={n} k={k} colors={colors:?} edges={:?}: f={f}, clashes={clashes}", g.edges())
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (graph, coloring) pairs"))
}

fn oracle_ground_truth() -> Outcome {
    let cases = [
        ("K5", families::complete(5).unwrap(), 5),
        ("C5", families::cycle(5).unwrap(), 3),
        ("petersen", families::petersen(), 3),
        ("C6", families::cycle(6).unwrap(), 2),
        ("edgeless10", Graph::edgeless(10).unwrap(), 1),
    ];
    for (name, g, expected) in &cases {
        let chi = chromatic_number(g, DEFAULT_ORACLE_BOUND).map_err(|e| e.to_string())?;
        ensure(chi == *expected, || format!("{name}: got {chi}, expected {expected}"))?;
    }
    Ok("K5=5 C5=3 petersen=3 C6=2 edgeless10=1".into())
}

fn small_instances() -> Vec<(&'static str, Graph, usize)> {
    vec![
        ("K4", families::complete(4).unwrap(), 4),
        ("C5", families::cycle(5).unwrap(), 3),
        ("petersen", families::petersen(), 3),
        ("bipartite20", families::random_bipartite(10, 10, 0.3, 7).unwrap(), 2),
    ]
}

fn heat_small_instances() -> Outcome {
    let mut summary = Vec::new();
    for (name, g, k) in small_instances() {
        let mut solved = 0;
        for seed in 0..10 {
            let cfg = DiffusionConfig::default().with_k(k).with_seed(seed);
            let (c, _) = diffusion::solve(&g, &cfg).map_err(|e| e.to_string())?;
            if evaluation::clashing_edges(&g, &c).unwrap() == 0 {
                solved += 1;
            }
        }
        ensure(solved >= 9, || format!("{name} k={k}: {solved}/10 seeds clash-free"))?;
        summary.push(format!("{name} {solved}/10"));
    }
    Ok(summary.join(", "))
}

fn tabu_small_instances() -> Outcome {
    let mut summary = Vec::new();
    for (name, g, k) in small_instances() {
        let mut solved = 0;
        for seed in 0..10 {
            let cfg = TabuConfig {
                max_iters: 100_000,
                ..TabuConfig::default()
            }
            .with_seed(seed);
            if tabucol(&g, k, &cfg).conflicts == 0 {
                solved += 1;
            }
        }
        ensure(solved == 10, || format!("{name} k={k}: {solved}/10 seeds conflict-free"))?;
        summary.push(format!("{name} {solved}/10"));
    }
    Ok(summary.join(", "))
}

fn greedy_overflow() -> Outcome {
    let g = families::complete(3).unwrap();
    let c = greedy_largest_first(&g, 2);
    let report = clash_report(&g, &c).map_err(|e| e.to_string())?;
    ensure(c.dummy_count() == 1, || format!("{} dummy vertices", c.dummy_count()))?;
    ensure((report.clash_percent - 66.67).abs() <= 0.01, || {
        format!("clash percent {:.4}", report.clash_percent)
    })?;
    Ok(format!("1 dummy, {:.4}% clashing", report.clash_percent))
}

/// Planted-coloring graphs sized like the le450 family.
const SUITE: [(usize, usize, usize); 5] = [
    (450, 5, 5714),
    (450, 15, 8168),
    (450, 15, 16680),
    (450, 25, 8260),
    (450, 25, 17343),
];

fn qualitative_ordering() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut manifest = Manifest::default();
    for (i, &(n, k, m)) in SUITE.iter().enumerate() {
        let g = families::planted_coloring(n, k, m, i as u64 + 1).unwrap();
        let name = format!("le{n}_{k}_{i}");
        std::fs::write(dir.path().join(format!("{name}.col")), serialize_dimacs(&g)).map_err(|e| e.to_string())?;
        manifest.insert(name, k);
    }
    let records = run_benchmark(dir.path(), &manifest, &SolverTag::ALL, &[1, 2, 3, 4, 5], &BenchConfig::default())
        .map_err(|e| e.to_string())?;
    let stats = aggregate(&records).map_err(|e| e.to_string())?;
    let mean = |s: SolverTag| stats.iter().find(|x| x.solver == s).map(|x| x.mean).unwrap_or(f64::NAN);
    let (tabu, heat, greedy) = (mean(SolverTag::Tabucol), mean(SolverTag::Heat), mean(SolverTag::Greedy));
    let line = format!("mean clash %: tabucol {tabu:.4} <= heat {heat:.4} <= greedy {greedy:.4}");
    ensure(records.len() == SUITE.len() * 11, || format!("{} records", records.len()))?;
    ensure(tabu <= heat && heat <= greedy, || line.clone())?;
    Ok(line)
}

fn strip_wall_time(csv: &str) -> String {
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let drop = headers.iter().position(|h| h == "wall_time_ms").expect("wall_time_ms column");
    let mut out = String::new();
    for rec in std::iter::once(Ok(headers)).chain(reader.records()) {
        let rec = rec.unwrap();
        let fields: Vec<&str> = rec.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, f)| f).collect();
        out.push_str(&fields.join("\u{1f}"));
        out.push('\n');
    }
    out
}

fn bench_once(out: &Path) -> Result<String, String> {
    let fixtures = fixtures_dir();
    let status = Command::new(env!("CARGO_BIN_EXE_heatcolor"))
        .arg("bench")
        .arg(&fixtures)
        .arg("--manifest")
        .arg(fixtures.join("manifest.csv"))
        .arg("--out")
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(status.status.success(), || String::from_utf8_lossy(&status.stderr).into_owned())?;
    std::fs::read_to_string(out.join("runs.csv")).map_err(|e| e.to_string())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let a = bench_once(&dir.path().join("a"))?;
    let b = bench_once(&dir.path().join("b"))?;
    let rows = a.lines().count() - 1;
    ensure(rows > 0, || "empty runs.csv".into())?;
    ensure(strip_wall_time(&a) == strip_wall_time(&b), || "runs.csv differs between executions".into())?;
    Ok(format!("{rows} rows identical outside wall_time_ms"))
}

fn parser_round_trip() -> Outcome {
    let mut count = 0;
    let mut entries: Vec<_> = std::fs::read_dir(fixtures_dir())
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "col"))
        .collect();
    entries.sort();
    for path in &entries {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let g = parse_dimacs(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let canonical = serialize_dimacs(&g);
        let again = parse_dimacs(&canonical).map_err(|e| e.to_string())?;
        ensure(again == g, || format!("{}: graph changed on round trip", path.display()))?;
        ensure(serialize_dimacs(&again) == canonical, || {
            format!("{}: serialization not idempotent", path.display())
        })?;
        count += 1;
    }
    ensure(count > 0, || "no fixtures found".into())?;
    Ok(format!("{count} fixtures"))
}

fn interval_fixture() -> Outcome {
    let requests = [
        IntervalRequest::new("1", 2.0, 4.0),
        IntervalRequest::new("2", 10.0, 14.0),
        IntervalRequest::new("3", 2.0, 8.0),
        IntervalRequest::new("4", 10.0, 20.0),
        IntervalRequest::new("5", 6.0, 17.0),
        IntervalRequest::new("6", 18.0, 24.0),
    ];
    let g = build_interval_graph(&requests).map_err(|e| e.to_string())?;
    let expected = [(0, 2), (1, 3), (1, 4), (2, 4), (3, 4), (3, 5)];
    ensure(g.edges() == expected, || format!("edges {:?}", g.edges()))?;
    ensure(exact_k_colorable(&g, 3, DEFAULT_ORACLE_BOUND).map_err(|e| e.to_string())?.is_some(), || {
        "oracle says not 3-colorable".into()
    })?;
    // Resources A = {1, 5}, B = {2, 3, 6}, C = {4}.
    let resources = Coloring::from_colors(vec![0, 1, 1, 2, 0, 1], 3, SolverTag::Oracle);
    ensure(evaluation::clashing_edges(&g, &resources).unwrap() == 0, || {
        "resource assignment clashes".into()
    })?;
    let bundled = std::fs::read_to_string(fixtures_dir().join("intervals6.col")).map_err(|e| e.to_string())?;
    ensure(parse_dimacs(&bundled).map_err(|e| e.to_string())? == g, || {
        "intervals6.col differs from the built graph".into()
    })?;
    Ok("6 edges, 3-colorable".into())
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: "AC1", name: "gradient correctness", budget: Duration::from_secs(5), run: gradient_correctness },
        Criterion { id: "AC2", name: "hard-assignment bridge", budget: Duration::from_secs(10), run: hard_assignment_bridge },
        Criterion { id: "AC3", name: "oracle ground truth", budget: Duration::from_secs(1), run: oracle_ground_truth },
        Criterion { id: "AC4", name: "heat diffusion small instances", budget: Duration::from_secs(30), run: heat_small_instances },
        Criterion { id: "AC5", name: "tabucol small instances", budget: Duration::from_secs(10), run: tabu_small_instances },
        Criterion { id: "AC6", name: "greedy overflow", budget: Duration::from_secs(1), run: greedy_overflow },
        Criterion { id: "AC7", name: "qualitative ordering", budget: Duration::from_secs(30 * 60), run: qualitative_ordering },
        Criterion { id: "AC8", name: "determinism", budget: Duration::from_secs(10 * 60), run: determinism },
        Criterion { id: "AC9", name: "parser round-trip", budget: Duration::from_secs(1), run: parser_round_trip },
        Criterion { id: "AC10", name: "interval-graph fixture", budget: Duration::from_secs(1), run: interval_fixture },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.budget => Err(format!("{detail}; over runtime budget")),
            other => other,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "{status} {} {}: {detail} ({:.2}s, budget {}s)",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
        if outcome.is_err() {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
