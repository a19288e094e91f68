//! The singlet correlation written as a sum over the four basis products:
//! the diagonal terms alone vanish, the cross terms restore `-a·b`.
//! The same diagonal sum arises from a marginal-product model over the
//! basis-state family.
//!
//! cargo run --example basis_mixture_expansion

use correlab::lhv::{
    bell_product_expectation, singlet_basis_mixture_expectation, singlet_qm_decomposition,
    IntegrationConfig, LambdaConditionedFamily,
};
use correlab::quantum::qm_correlation;
use correlab::{singlet, Direction};

fn main() -> correlab::Result<()> {
    let psi = singlet();
    let family = LambdaConditionedFamily::singlet_basis_mixture();
    let exact = IntegrationConfig::quadrature(8);
    let a = Direction::Z;
    println!(
        "{:>6} {:>14} {:>14} {:>14} {:>14}",
        "θ", "diagonal sum", "model", "with crosses", "quantum"
    );
    for deg in [0.0, 45.0, 60.0, 90.0, 135.0, 180.0] {
        let b = Direction::planar_degrees(deg);
        let model = bell_product_expectation(&psi, &family, &a, &b, &exact)?;
        println!(
            "{:>6} {:>14.10} {:>14.10} {:>14.10} {:>14.10}",
            deg,
            singlet_basis_mixture_expectation(&a, &b),
            model.mean,
            singlet_qm_decomposition(&a, &b),
            qm_correlation(&psi, &a, &b)
        );
    }
    Ok(())
}
