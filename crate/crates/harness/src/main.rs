use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use firefly_core::benchmarks;
use firefly_harness::compare::{compare_variants_with, render_table};
use firefly_harness::output::emit_results_to;
use firefly_harness::{parse_config, run_experiment_with, Execution, ExperimentConfig, HarnessError, Result};

#[derive(Parser)]
#[command(name = "firefly", version, about = "Seeded firefly-algorithm experiments")]
struct Cli {
    /// Output directory, overriding `output_dir` in the config.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Base seed, overriding `base_seed` in the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Run repetitions one after another instead of in parallel.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute one experiment and write its result files.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run several experiments on the same benchmark and tabulate them.
    Compare {
        #[arg(long, num_args = 1.., required = true)]
        configs: Vec<PathBuf>,
    },
    /// Print the benchmark registry.
    ListBenchmarks,
}

fn load(path: &Path, seed: Option<u64>) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut cfg = parse_config(&text)?;
    if let Some(s) = seed {
        cfg.base_seed = s;
        cfg.validate()?;
    }
    Ok(cfg)
}

fn execute(cli: Cli) -> Result<()> {
    let execution = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match cli.command {
        Command::Run { config } => {
            let cfg = load(&config, cli.seed)?;
            let dir = cli.out.unwrap_or_else(|| cfg.output_dir.clone());
            let (stats, reports) = run_experiment_with(&cfg, execution)?;
            let written = emit_results_to(&stats, &reports, &cfg, &dir)?;
            println!(
                "{} on {} (dim {}): mean best {:e}, success rate {}",
                cfg.variant, cfg.benchmark, cfg.dim, stats.mean_best, stats.success_rate
            );
            println!("wrote {} files to {}", written.len(), dir.display());
        }
        Command::Compare { configs } => {
            let cfgs = configs
                .iter()
                .map(|p| load(p, cli.seed))
                .collect::<Result<Vec<_>>>()?;
            let table = render_table(&compare_variants_with(&cfgs, execution)?);
            print!("{table}");
            if let Some(dir) = cli.out {
                fs::create_dir_all(&dir).map_err(|source| HarnessError::Io {
                    path: dir.clone(),
                    source,
                })?;
                let path = dir.join("comparison.csv");
                fs::write(&path, &table).map_err(|source| HarnessError::Io { path, source })?;
            }
        }
        Command::ListBenchmarks => {
            for name in benchmarks::NAMES {
                let (lo, hi) = benchmarks::bounds(name).expect("registered name has bounds");
                let dims = if name == "four_peaks" { "2" } else { "any" };
                println!("{name}\t[{lo}, {hi}]\tdim {dims}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
