//! Local hidden-variable correlations of the sign model by seeded Monte
//! Carlo and by sphere quadrature, next to the closed form `-1 + 2θ/π`.
//!
//! cargo run --release --example lhv_integration

use correlab::lhv::{lhv_correlation, IntegrationConfig, SignModel};
use correlab::Direction;

fn main() -> correlab::Result<()> {
    let model = SignModel::new();
    let a = Direction::Z;
    let mc = IntegrationConfig::monte_carlo(1_000_000, 2024);
    let quad = IntegrationConfig::quadrature(1024);

    println!(
        "{:>6} {:>12} {:>12} {:>10} {:>12} {:>12}",
        "θ", "closed form", "monte carlo", "σ", "quadrature", "-cos θ"
    );
    for deg in [0.0, 30.0, 60.0, 90.0, 120.0, 150.0, 180.0_f64] {
        let b = Direction::planar_degrees(deg);
        let m = lhv_correlation(&model, &a, &b, &mc)?;
        let q = lhv_correlation(&model, &a, &b, &quad)?;
        println!(
            "{:>6} {:>12.6} {:>12.6} {:>10.2e} {:>12.6} {:>12.6}",
            deg,
            SignModel::closed_form(deg.to_radians()),
            m.mean,
            m.std_error,
            q.mean,
            -deg.to_radians().cos()
        );
    }
    Ok(())
}
