//! Bell-type inequalities over three correlation values `P(a,b)`, `P(a,c)`,
//! `P(b,c)`, and a driver that obtains those values from any source.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lhv::{lhv_correlation, HiddenVariableModel, IntegrationConfig, Method};
use crate::quantum::{qm_correlation, qm_correlation_density};
use crate::spin::{DensityMatrix, Direction, TwoQubitState};

/// Tolerance for verdicts on exactly computed correlations.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub const BELL_ORIGINAL: &str = "bell_original";
pub const GENERALIZED_BELL: &str = "generalized_bell";
pub const THREE_TERM_BOUND: &str = "three_term_bound";
pub const CHSH_EXTENSION: &str = "chsh_extension";

/// One inequality `lhs ≤ rhs` evaluated on concrete correlations.
/// `satisfied` holds iff `margin = rhs − lhs ≥ −tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    pub margin: f64,
    pub tolerance: f64,
    pub inputs: Vec<f64>,
}

impl InequalityReport {
    fn new(name: &str, lhs: f64, rhs: f64, tolerance: f64, inputs: Vec<f64>) -> Self {
        let margin = rhs - lhs;
        InequalityReport {
            name: name.to_string(),
            lhs,
            rhs,
            satisfied: margin >= -tolerance,
            margin,
            tolerance,
            inputs,
        }
    }
}

fn check_tolerance(tolerance: f64) -> Result<()> {
    if tolerance.is_finite() && tolerance > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tolerance))
    }
}

fn check_correlations(values: &[f64], tolerance: f64) -> Result<()> {
    check_tolerance(tolerance)?;
    for &value in values {
        if !value.is_finite() || value.abs() > 1.0 + tolerance {
            return Err(Error::CorrelationOutOfRange { value, tolerance });
        }
    }
    Ok(())
}

/// `|P(a,b) − P(a,c)| ≤ 1 + P(b,c)`, the three-setting form for models with
/// perfect anticorrelation at equal settings.
pub fn bell_original(p_ab: f64, p_ac: f64, p_bc: f64, tolerance: f64) -> Result<InequalityReport> {
    check_correlations(&[p_ab, p_ac, p_bc], tolerance)?;
    Ok(InequalityReport::new(
        BELL_ORIGINAL,
        (p_ab - p_ac).abs(),
        1.0 + p_bc,
        tolerance,
        vec![p_ab, p_ac, p_bc],
    ))
}

/// `|P(a,b) − P(a,c)| ≤ 3 − |P(b,c)|`, which follows from each correlation
/// lying in `[-1, 1]` and so holds for every quantum state.
pub fn generalized_bell(
    p_ab: f64,
    p_ac: f64,
    p_bc: f64,
    tolerance: f64,
) -> Result<InequalityReport> {
    check_correlations(&[p_ab, p_ac, p_bc], tolerance)?;
    Ok(InequalityReport::new(
        GENERALIZED_BELL,
        (p_ab - p_ac).abs(),
        3.0 - p_bc.abs(),
        tolerance,
        vec![p_ab, p_ac, p_bc],
    ))
}

/// `|P(a,b) − P(a,c)| + |P(b,c)| ≤ 3`. Reporting only: out-of-range inputs
/// are not an error here.
pub fn three_term_bound(
    p_ab: f64,
    p_ac: f64,
    p_bc: f64,
    tolerance: f64,
) -> Result<InequalityReport> {
    check_tolerance(tolerance)?;
    Ok(InequalityReport::new(
        THREE_TERM_BOUND,
        (p_ab - p_ac).abs() + p_bc.abs(),
        3.0,
        tolerance,
        vec![p_ab, p_ac, p_bc],
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundEntry {
    pub value: f64,
    pub in_bounds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub entries: Vec<BoundEntry>,
    pub all_in_bounds: bool,
    /// The three-term composite; present when exactly three values are given,
    /// read as `(P(a,b), P(a,c), P(b,c))`.
    pub composite: Option<InequalityReport>,
    pub tolerance: f64,
}

/// Flags every value outside `[-1 − tolerance, 1 + tolerance]`.
pub fn bound_check(correlations: &[f64], tolerance: f64) -> Result<BoundReport> {
    check_tolerance(tolerance)?;
    let entries: Vec<BoundEntry> = correlations
        .iter()
        .map(|&value| BoundEntry {
            value,
            in_bounds: value.is_finite() && value.abs() <= 1.0 + tolerance,
        })
        .collect();
    let composite = match correlations {
        &[p_ab, p_ac, p_bc] => Some(three_term_bound(p_ab, p_ac, p_bc, tolerance)?),
        _ => None,
    };
    Ok(BoundReport {
        all_in_bounds: entries.iter().all(|e| e.in_bounds),
        entries,
        composite,
        tolerance,
    })
}

/// Four-setting CHSH form `|E(a,b) − E(a,b′) + E(a′,b) + E(a′,b′)| ≤ 2`.
///
/// Provided as an extension; it is not one of the three-setting checks run
/// by default.
pub mod extension {
    use super::*;

    pub fn chsh(
        e_ab: f64,
        e_ab2: f64,
        e_a2b: f64,
        e_a2b2: f64,
        tolerance: f64,
    ) -> Result<InequalityReport> {
        check_correlations(&[e_ab, e_ab2, e_a2b, e_a2b2], tolerance)?;
        Ok(InequalityReport::new(
            CHSH_EXTENSION,
            (e_ab - e_ab2 + e_a2b + e_a2b2).abs(),
            2.0,
            tolerance,
            vec![e_ab, e_ab2, e_a2b, e_a2b2],
        ))
    }
}

/// Where correlations come from.
#[derive(Clone, Copy)]
pub enum CorrelationSource<'a> {
    State(&'a TwoQubitState),
    Density(&'a DensityMatrix),
    Model(&'a dyn HiddenVariableModel),
}

impl CorrelationSource<'_> {
    pub fn is_statistical(&self) -> bool {
        matches!(self, CorrelationSource::Model(_))
    }
}

/// A correlation value with its uncertainty: zero for exact sources, the
/// standard error for Monte Carlo, and the difference to a half-resolution
/// rule for quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Correlation {
    pub value: f64,
    pub uncertainty: f64,
    pub sample_count: Option<u64>,
    pub method: Option<Method>,
}

pub fn correlate(
    source: CorrelationSource<'_>,
    a: &Direction,
    b: &Direction,
    cfg: Option<&IntegrationConfig>,
) -> Result<Correlation> {
    match source {
        CorrelationSource::State(psi) => Ok(Correlation {
            value: qm_correlation(psi, a, b),
            uncertainty: 0.0,
            sample_count: None,
            method: None,
        }),
        CorrelationSource::Density(rho) => Ok(Correlation {
            value: qm_correlation_density(rho, a, b)?,
            uncertainty: 0.0,
            sample_count: None,
            method: None,
        }),
        CorrelationSource::Model(model) => {
            let cfg = cfg.ok_or(Error::MissingIntegrationConfig)?;
            let est = lhv_correlation(model, a, b, cfg)?;
            let uncertainty = match cfg.method {
                Method::MonteCarlo => est.std_error,
                Method::SphereQuadrature => {
                    let coarse = IntegrationConfig {
                        sample_count: (cfg.sample_count / 2).max(crate::lhv::MIN_QUADRATURE_NODES),
                        ..cfg.clone()
                    };
                    (est.mean - lhv_correlation(model, a, b, &coarse)?.mean).abs()
                }
            };
            Ok(Correlation {
                value: est.mean,
                uncertainty,
                sample_count: Some(est.sample_count),
                method: Some(est.method),
            })
        }
    }
}

/// Verdict tolerance for inputs with the given uncertainties:
/// `confidence_sigma` times their quadrature sum, never below
/// [`DEFAULT_TOLERANCE`].
pub fn statistical_tolerance(uncertainties: &[f64], confidence_sigma: f64) -> f64 {
    let combined = uncertainties.iter().map(|u| u * u).sum::<f64>().sqrt();
    (confidence_sigma * combined).max(DEFAULT_TOLERANCE)
}

/// Correlations for a direction triple and the three reports built on them,
/// in the order original, generalized, three-term bound.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleEvaluation {
    pub p_ab: Correlation,
    pub p_ac: Correlation,
    pub p_bc: Correlation,
    pub reports: Vec<InequalityReport>,
}

pub fn evaluate_triple(
    source: CorrelationSource<'_>,
    a: &Direction,
    b: &Direction,
    c: &Direction,
    cfg: Option<&IntegrationConfig>,
) -> Result<TripleEvaluation> {
    if source.is_statistical() && cfg.is_none() {
        return Err(Error::MissingIntegrationConfig);
    }
    let p_ab = correlate(source, a, b, cfg)?;
    let p_ac = correlate(source, a, c, cfg)?;
    let p_bc = correlate(source, b, c, cfg)?;
    let tolerance = match cfg {
        Some(cfg) if source.is_statistical() => statistical_tolerance(
            &[p_ab.uncertainty, p_ac.uncertainty, p_bc.uncertainty],
            cfg.confidence_sigma,
        ),
        _ => DEFAULT_TOLERANCE,
    };
    let (x, y, z) = (p_ab.value, p_ac.value, p_bc.value);
    let reports = vec![
        bell_original(x, y, z, tolerance)?,
        generalized_bell(x, y, z, tolerance)?,
        three_term_bound(x, y, z, tolerance)?,
    ];
    Ok(TripleEvaluation {
        p_ab,
        p_ac,
        p_bc,
        reports,
    })
}

/// All three-setting reports for `(a, b, c)`.
pub fn evaluate_all(
    source: CorrelationSource<'_>,
    a: &Direction,
    b: &Direction,
    c: &Direction,
    cfg: Option<&IntegrationConfig>,
) -> Result<Vec<InequalityReport>> {
    Ok(evaluate_triple(source, a, b, c, cfg)?.reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lhv::SignModel;
    use crate::quantum::sixty_degree_triple;
    use crate::spin::singlet;
    use approx::assert_abs_diff_eq;

    const TOL: f64 = DEFAULT_TOLERANCE;

    #[test]
    fn original_examples() {
        let r = bell_original(-0.5, 0.5, -0.5, TOL).unwrap();
        assert_eq!((r.lhs, r.rhs, r.satisfied), (1.0, 0.5, false));
        let r = bell_original(0.0, 0.0, 0.0, TOL).unwrap();
        assert_eq!((r.lhs, r.rhs, r.satisfied), (0.0, 1.0, true));
        let r = bell_original(-1.0, -1.0, -1.0, TOL).unwrap();
        assert_eq!((r.lhs, r.rhs, r.satisfied), (0.0, 0.0, true));
    }

    #[test]
    fn generalized_examples() {
        let r = generalized_bell(-0.5, 0.5, -0.5, TOL).unwrap();
        assert_eq!((r.lhs, r.rhs, r.satisfied, r.margin), (1.0, 2.5, true, 1.5));
        let r = generalized_bell(1.0, -1.0, 1.0, TOL).unwrap();
        assert_eq!((r.lhs, r.rhs, r.satisfied, r.margin), (2.0, 2.0, true, 0.0));
        let r = generalized_bell(0.0, 0.0, 0.0, TOL).unwrap();
        assert_eq!((r.lhs, r.rhs, r.satisfied), (0.0, 3.0, true));
    }

    #[test]
    fn out_of_range_inputs_error() {
        assert!(matches!(
            bell_original(1.2, 0.0, 0.0, TOL),
            Err(Error::CorrelationOutOfRange { .. })
        ));
        assert!(generalized_bell(0.0, f64::NAN, 0.0, TOL).is_err());
        assert!(generalized_bell(1.0 + 1e-12, 0.0, 0.0, TOL).is_ok());
        assert!(bell_original(0.0, 0.0, 0.0, -1.0).is_err());
    }

    #[test]
    fn bound_check_examples() {
        let r = bound_check(&[-0.5, 0.5, -0.5], TOL).unwrap();
        assert!(r.all_in_bounds);
        let composite = r.composite.unwrap();
        assert_eq!(composite.lhs, 1.5);
        assert!(composite.satisfied);
        let r = bound_check(&[1.2], TOL).unwrap();
        assert!(!r.all_in_bounds && !r.entries[0].in_bounds);
        assert!(r.composite.is_none());
        let r = bound_check(&[-1.0, 1.0], TOL).unwrap();
        assert!(r.all_in_bounds);
    }

    #[test]
    fn chsh_extension_tsirelson() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let r = extension::chsh(s, -s, s, s, TOL).unwrap();
        assert_abs_diff_eq!(r.lhs, 2.0 * 2f64.sqrt(), epsilon = 1e-12);
        assert!(!r.satisfied);
        assert!(extension::chsh(0.5, 0.5, 0.5, 0.5, TOL).unwrap().satisfied);
    }

    #[test]
    fn evaluate_singlet_sixty() {
        let [a, b, c] = sixty_degree_triple();
        let psi = singlet();
        let reports = evaluate_all(CorrelationSource::State(&psi), &a, &b, &c, None).unwrap();
        assert_eq!(reports.len(), 3);
        assert_eq!(reports[0].name, BELL_ORIGINAL);
        assert!(!reports[0].satisfied);
        assert!(reports[1].satisfied);
        assert_abs_diff_eq!(reports[1].margin, 1.5, epsilon = 1e-9);
        assert!(reports[2].satisfied);
    }

    #[test]
    fn model_source_needs_config() {
        let m = SignModel::new();
        let d = Direction::Z;
        assert!(matches!(
            evaluate_all(CorrelationSource::Model(&m), &d, &d, &d, None),
            Err(Error::MissingIntegrationConfig)
        ));
    }

    #[test]
    fn quadrature_source_reports_discretization_uncertainty() {
        let m = SignModel::new();
        let [a, b, _] = sixty_degree_triple();
        let cfg = IntegrationConfig::quadrature(64);
        let c = correlate(CorrelationSource::Model(&m), &a, &b, Some(&cfg)).unwrap();
        assert!(c.uncertainty > 0.0 && c.uncertainty < 0.05, "{c:?}");
    }
}
