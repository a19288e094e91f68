//! The 60° singlet counterexample: the rearrangement identity that holds
//! for local hidden variables fails for quantum correlations.
//!
//! cargo run --example sixty_degree_counterexample

use correlab::quantum::{qm_correlation, rearrangement_check, sixty_degree_triple};
use correlab::singlet;

fn main() -> correlab::Result<()> {
    let psi = singlet();
    let [a, b, c] = sixty_degree_triple();
    println!("a = {a}\nb = {b}\nc = {c}\n");
    for (label, x, y) in [("P(a,b)", &a, &b), ("P(a,c)", &a, &c), ("P(b,c)", &b, &c)] {
        println!("{label} = {:+.12}", qm_correlation(&psi, x, y));
    }

    let r = rearrangement_check(&psi, &a, &b, &c, &c, 1e-9)?;
    println!(
        "\nP(a,b) - P(a,c)                           = {:+.12}",
        r.lhs
    );
    println!(
        "P(a,b)(1 + P(c,c)) - P(a,c)(1 + P(c,b))   = {:+.12}",
        r.rhs_plus
    );
    println!(
        "P(a,b)(1 - P(c,c)) - P(a,c)(1 - P(c,b))   = {:+.12}",
        r.rhs_minus
    );
    println!(
        "identity holds (+): {}   (-): {}",
        r.equal_plus, r.equal_minus
    );
    Ok(())
}
