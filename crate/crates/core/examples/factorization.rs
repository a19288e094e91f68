//! Joint outcome tables from projective measurements: product states
//! factorize into marginals, the singlet only by the chain rule.
//!
//! cargo run --example factorization

use correlab::lhv::{factorization_check, joint_outcome_table};
use correlab::spin::{SPIN_DOWN, SPIN_UP};
use correlab::{product_state, singlet, Direction};
use num_complex::Complex64;

fn main() -> correlab::Result<()> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let tilted = [Complex64::new(h, 0.0), Complex64::new(0.0, h)];
    let states = [
        ("singlet", singlet()),
        ("up ⊗ down", product_state(SPIN_UP, SPIN_DOWN)?),
        ("tilted ⊗ up", product_state(tilted, SPIN_UP)?),
    ];
    let a = Direction::planar_degrees(20.0);
    let b = Direction::planar_degrees(75.0);
    for (label, psi) in &states {
        let table = joint_outcome_table(psi, &a, &b)?;
        let report = factorization_check(&table, 1e-9)?;
        let p = table.probabilities();
        println!("{label}");
        println!("  p(+,+) = {:.6}  p(+,-) = {:.6}", p[0][0], p[0][1]);
        println!("  p(-,+) = {:.6}  p(-,-) = {:.6}", p[1][0], p[1][1]);
        println!(
            "  product residual {:.3e}  chain-rule residual {:.3e}  factorizes: {}\n",
            report.product_residual, report.chain_rule_residual, report.product_factorizes
        );
    }
    Ok(())
}
