use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use correlab::lhv::{IntegrationConfig, Method};
use correlab::scenario::{
    correlation_curve, paper_check, run_scenario, ResolvedSource, RunOptions, ScenarioError,
    SourceSpec, OUT_DIR_ENV,
};

#[derive(Parser)]
#[command(name = "correlab", version, about = "Two-qubit correlation laboratory")]
struct Cli {
    /// Worker threads for Monte Carlo integration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    MonteCarlo,
    SphereQuadrature,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scenario file and write its reports.
    Run {
        scenario: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<u64>,
        /// Report path; relative paths resolve against the output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = OUT_DIR_ENV)]
        out_dir: Option<PathBuf>,
    },
    /// Recompute the 60° singlet counterexample against pinned values.
    PaperCheck,
    /// Tabulate P(z, θ) for θ on a grid of planar angles.
    Curve {
        /// State, density or model name; repeat for several columns.
        #[arg(long = "source", required = true)]
        sources: Vec<String>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        start: f64,
        #[arg(long, default_value_t = 180.0, allow_negative_numbers = true)]
        stop: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        step: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::MonteCarlo)]
        method: MethodArg,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn fail(err: ScenarioError) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    match cli.command {
        Command::Run {
            scenario,
            seed,
            samples,
            out,
            out_dir,
        } => {
            let opts = RunOptions {
                seed,
                sample_count: samples,
                output: out,
                out_dir,
            };
            match run_scenario(&scenario, &opts) {
                Ok(outcome) => {
                    println!("{}", outcome.report_path.display());
                    println!("{}", outcome.correlations_path.display());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::PaperCheck => {
            let report = paper_check();
            print!("{}", report.render());
            ExitCode::from(report.exit_code() as u8)
        }
        Command::Curve {
            sources,
            start,
            stop,
            step,
            method,
            samples,
            seed,
            out,
        } => {
            let resolved: Result<Vec<ResolvedSource>, ScenarioError> = sources
                .iter()
                .map(|s| SourceSpec::from_name(s)?.resolve())
                .collect();
            let resolved = match resolved {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            let cfg = IntegrationConfig {
                method: match method {
                    MethodArg::MonteCarlo => Method::MonteCarlo,
                    MethodArg::SphereQuadrature => Method::SphereQuadrature,
                },
                sample_count: samples,
                seed,
                ..IntegrationConfig::default()
            };
            let table = match correlation_curve(&resolved, start, stop, step, &cfg) {
                Ok(t) => t.render(),
                Err(e) => return fail(e),
            };
            match out {
                Some(path) => match std::fs::write(&path, table) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(source) => fail(ScenarioError::Io { path, source }),
                },
                None => {
                    print!("{table}");
                    ExitCode::SUCCESS
                }
            }
        }
    }
}
