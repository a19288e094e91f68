//! Quantum correlations `⟨ψ|σ·a ⊗ σ·b|ψ⟩` for the named two-qubit states,
//! and for a Werner mixture, against the planar angle between settings.
//!
//! cargo run --example singlet_correlations

use correlab::quantum::{qm_correlation, qm_correlation_density, qm_marginal, Side};
use correlab::spin::{state_by_name, STATE_NAMES};
use correlab::{DensityMatrix, Direction};

fn main() -> correlab::Result<()> {
    let a = Direction::Z;
    let angles = [0.0, 30.0, 60.0, 90.0, 120.0, 180.0];

    print!("{:<10}", "state");
    for deg in angles {
        print!("{:>10}", format!("{deg}°"));
    }
    println!("{:>10}", "<σ_A·z>");
    for name in STATE_NAMES {
        let psi = state_by_name(name)?;
        print!("{name:<10}");
        for deg in angles {
            print!(
                "{:>10.5}",
                qm_correlation(&psi, &a, &Direction::planar_degrees(deg))
            );
        }
        println!("{:>10.5}", qm_marginal(&psi, &a, Side::A));
    }

    let rho = DensityMatrix::werner(0.5)?;
    print!("{:<10}", "werner½");
    for deg in angles {
        print!(
            "{:>10.5}",
            qm_correlation_density(&rho, &a, &Direction::planar_degrees(deg))?
        );
    }
    println!();
    println!("\nsinglet oracle: -cos θ");
    Ok(())
}
