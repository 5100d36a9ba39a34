use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use heatcolor::baselines::TabuConfig;
use heatcolor::diffusion::{DiffusionConfig, TauSchedule};
use heatcolor::evaluation::{self, chromatic_number, exact_k_colorable, DEFAULT_ORACLE_BOUND};
use heatcolor::harness::{
    emit_plots, load_graph, load_manifest, read_fig2, read_fig3, run_benchmark, write_report, BenchConfig,
    SolverParams,
};
use heatcolor::SolverTag;

#[derive(Parser)]
#[command(name = "heatcolor", version, about = "Heat-diffusion graph coloring and baselines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color one DIMACS graph with one solver
    Solve {
        file: PathBuf,
        #[arg(long, default_value = "heat")]
        solver: SolverTag,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the color of every vertex (1-indexed, 0 for dummy)
        #[arg(long)]
        print_coloring: bool,
        #[command(flatten)]
        params: SolverArgs,
    },
    /// Run solvers over a directory of `.col` files
    Bench {
        dir: PathBuf,
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "heat,greedy,tabucol")]
        solvers: Vec<SolverTag>,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5")]
        seeds: Vec<u64>,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        params: SolverArgs,
    },
    /// Exact chromatic number, or k-colorability with `--k`, for small graphs
    Oracle {
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        bound: usize,
    },
    /// Render fig2.svg and fig3.svg from a bench output directory
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Schedule {
    Linear,
    Geometric,
}

#[derive(Args)]
struct SolverArgs {
    /// Heat-diffusion iterations
    #[arg(long = "T")]
    iterations: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    tau0: Option<f64>,
    #[arg(long = "tau-min")]
    tau_min: Option<f64>,
    #[arg(long, value_enum)]
    schedule: Option<Schedule>,
    #[arg(long)]
    samples: Option<usize>,
    /// TabuCol iteration budget
    #[arg(long)]
    tabu_iters: Option<usize>,
    #[arg(long)]
    tenure_base: Option<usize>,
    #[arg(long)]
    tenure_scale: Option<f64>,
}

impl SolverArgs {
    fn bench_config(&self) -> BenchConfig {
        let d = DiffusionConfig::default();
        let t = TabuConfig::default();
        BenchConfig {
            diffusion: DiffusionConfig {
                iterations: self.iterations.unwrap_or(d.iterations),
                alpha: self.alpha.unwrap_or(d.alpha),
                eta: self.eta.unwrap_or(d.eta),
                tau0: self.tau0.unwrap_or(d.tau0),
                tau_min: self.tau_min.unwrap_or(d.tau_min),
                schedule: match self.schedule {
                    Some(Schedule::Linear) => TauSchedule::Linear,
                    Some(Schedule::Geometric) => TauSchedule::Geometric,
                    None => d.schedule,
                },
                samples: self.samples.unwrap_or(d.samples),
                ..d
            },
            tabu: TabuConfig {
                max_iters: self.tabu_iters.unwrap_or(t.max_iters),
                tenure_base: self.tenure_base.unwrap_or(t.tenure_base),
                tenure_scale: self.tenure_scale.unwrap_or(t.tenure_scale),
                ..t
            },
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve {
            file,
            solver,
            k,
            seed,
            print_coloring,
            params,
        } => {
            if k < 1 {
                bail!("--k must be at least 1");
            }
            let g = load_graph(&file)?;
            let cfg = params.bench_config();
            let params = match solver {
                SolverTag::Greedy => SolverParams::Greedy { k },
                SolverTag::Heat => {
                    let d = cfg.diffusion.with_k(k).with_seed(seed);
                    d.validate()?;
                    SolverParams::Heat(d)
                }
                SolverTag::Tabucol => SolverParams::Tabucol {
                    k,
                    config: cfg.tabu.with_seed(seed),
                },
                SolverTag::Oracle => bail!("use the `oracle` subcommand for exact coloring"),
            };
            let (coloring, iterations) = params.run(&g)?;
            let clashing = evaluation::clashing_edges(&g, &coloring)?;
            let percent = if g.m() > 0 {
                format!("{:.4}", 100.0 * clashing as f64 / g.m() as f64)
            } else {
                "n/a".to_string()
            };
            println!(
                "graph={} n={} m={} k={k} solver={solver} seed={seed} clashing_edges={clashing} clash_percent={percent} iterations={iterations} dummy={}",
                g.name().unwrap_or(""),
                g.n(),
                g.m(),
                coloring.dummy_count()
            );
            if print_coloring {
                for (v, c) in coloring.assignment().iter().enumerate() {
                    println!("{} {}", v + 1, c.map_or(0, |c| c + 1));
                }
            }
        }
        Command::Bench {
            dir,
            manifest,
            solvers,
            seeds,
            out,
            params,
        } => {
            let manifest = load_manifest(&manifest)?;
            let records = run_benchmark(&dir, &manifest, &solvers, &seeds, &params.bench_config())?;
            let files = write_report(&records, &out)?;
            println!("{} runs written to {}", records.len(), files.runs_csv.display());
        }
        Command::Oracle { file, k, bound } => {
            let g = load_graph(&file)?;
            match k {
                Some(k) => match exact_k_colorable(&g, k, bound)? {
                    Some(witness) => {
                        println!("{k}-colorable: yes");
                        let colors: Vec<String> = witness
                            .assignment()
                            .iter()
                            .map(|c| (c.expect("oracle witness has no dummy") + 1).to_string())
                            .collect();
                        println!("witness: {}", colors.join(" "));
                    }
                    None => println!("{k}-colorable: no"),
                },
                None => println!("chromatic number: {}", chromatic_number(&g, bound)?),
            }
        }
        Command::Plot { input, out } => {
            let fig2 = read_fig2(&input.join("fig2.csv")).context("reading fig2.csv")?;
            let fig3 = read_fig3(&input.join("fig3.csv")).context("reading fig3.csv")?;
            let (a, b) = emit_plots(&fig2, &fig3, &out)?;
            println!("wrote {} and {}", a.display(), b.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
