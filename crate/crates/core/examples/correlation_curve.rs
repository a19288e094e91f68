//! Correlation against angle for the singlet, a Werner state and the
//! shipped hidden-variable models, as a tab-separated table.
//!
//! cargo run --release --example correlation_curve > curve.tsv

use correlab::lhv::IntegrationConfig;
use correlab::scenario::{correlation_curve, ResolvedSource, ScenarioError, SourceSpec};

fn main() -> Result<(), ScenarioError> {
    let sources = [
        "singlet",
        "werner:0.7",
        "sign",
        "constant",
        "marginal-product",
    ]
    .into_iter()
    .map(|name| SourceSpec::from_name(name)?.resolve())
    .collect::<Result<Vec<ResolvedSource>, _>>()?;
    let cfg = IntegrationConfig::quadrature(256);
    let table = correlation_curve(&sources, 0.0, 180.0, 15.0, &cfg)?;
    print!("{}", table.render());
    Ok(())
}
