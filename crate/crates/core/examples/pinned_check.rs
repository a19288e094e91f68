//! Pinned-value check of the 60° singlet counterexample.
//!
//! cargo run --example pinned_check

fn main() {
    let report = correlab::scenario::paper_check();
    print!("{}", report.render());
    std::process::exit(report.exit_code());
}
