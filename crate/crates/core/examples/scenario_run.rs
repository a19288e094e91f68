//! Runs a scenario file and prints where its reports went.
//!
//! cargo run --release --example scenario_run -- crates/core/scenarios/sign_model.toml

use std::path::PathBuf;

use correlab::scenario::{render_human, run_scenario, RunOptions};

fn main() {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios/singlet_sixty.toml")
        });
    let opts = RunOptions {
        out_dir: Some(std::env::temp_dir().join("correlab-example")),
        ..RunOptions::default()
    };
    match run_scenario(&path, &opts) {
        Ok(outcome) => {
            print!("{}", render_human(&outcome.evaluation));
            println!("\nreport:       {}", outcome.report_path.display());
            println!("correlations: {}", outcome.correlations_path.display());
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
