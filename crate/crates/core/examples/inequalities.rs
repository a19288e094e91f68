//! Three-setting inequalities on quantum and hidden-variable correlations.
//!
//! cargo run --release --example inequalities

use correlab::inequality::{bound_check, evaluate_triple, CorrelationSource};
use correlab::lhv::{IntegrationConfig, SignModel};
use correlab::quantum::sixty_degree_triple;
use correlab::singlet;

fn main() -> correlab::Result<()> {
    let psi = singlet();
    let model = SignModel::new();
    let cfg = IntegrationConfig::quadrature(512);
    let [a, b, c] = sixty_degree_triple();

    for (label, source) in [
        ("singlet", CorrelationSource::State(&psi)),
        ("sign model", CorrelationSource::Model(&model)),
    ] {
        let eval = evaluate_triple(source, &a, &b, &c, Some(&cfg))?;
        println!(
            "{label}: P(a,b) = {:+.6}  P(a,c) = {:+.6}  P(b,c) = {:+.6}",
            eval.p_ab.value, eval.p_ac.value, eval.p_bc.value
        );
        for r in &eval.reports {
            println!(
                "  {:<18} {:.6} <= {:.6}  margin {:+.6}  tol {:.1e}  {}",
                r.name,
                r.lhs,
                r.rhs,
                r.margin,
                r.tolerance,
                if r.satisfied { "satisfied" } else { "violated" }
            );
        }
        let bounds = bound_check(&[eval.p_ab.value, eval.p_ac.value, eval.p_bc.value], 1e-9)?;
        println!("  all |P| <= 1: {}\n", bounds.all_in_bounds);
    }
    Ok(())
}
