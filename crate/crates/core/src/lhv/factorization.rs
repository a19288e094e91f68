//! Factorizing a joint outcome distribution: as a product of marginals, or
//! by the chain rule `P(A,B) = P(A|B)·P(B)`.

use crate::error::{Error, Result};
use crate::spin::{pauli_dot, tensor, ComplexMatrix, Direction, TwoQubitState, STRUCTURAL_TOL};

/// Joint probabilities `p[i][j]`, index 0 for outcome `+1` and 1 for `−1`;
/// `i` is A's outcome, `j` is B's.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointOutcomeTable {
    p: [[f64; 2]; 2],
}

impl JointOutcomeTable {
    pub fn new(p: [[f64; 2]; 2]) -> Result<Self> {
        if p.iter().flatten().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidTable(format!(
                "entries must be non-negative: {p:?}"
            )));
        }
        let total: f64 = p.iter().flatten().sum();
        if (total - 1.0).abs() > STRUCTURAL_TOL {
            return Err(Error::InvalidTable(format!("entries sum to {total}")));
        }
        Ok(JointOutcomeTable { p })
    }

    pub fn probabilities(&self) -> &[[f64; 2]; 2] {
        &self.p
    }

    pub fn marginal_a(&self) -> [f64; 2] {
        [self.p[0][0] + self.p[0][1], self.p[1][0] + self.p[1][1]]
    }

    pub fn marginal_b(&self) -> [f64; 2] {
        [self.p[0][0] + self.p[1][0], self.p[0][1] + self.p[1][1]]
    }

    /// `Σ A·B·p(A,B)`.
    pub fn correlation(&self) -> f64 {
        self.p[0][0] + self.p[1][1] - self.p[0][1] - self.p[1][0]
    }
}

/// Outcome distribution of measuring `σ·a` on A and `σ·b` on B, from the
/// projectors `(I ± σ·d)/2`.
pub fn joint_outcome_table(
    state: &TwoQubitState,
    a: &Direction,
    b: &Direction,
) -> Result<JointOutcomeTable> {
    let id = ComplexMatrix::identity(2);
    let half = num_complex::Complex64::new(0.5, 0.0);
    let projector = |d: &Direction, sign: f64| {
        id.add(&pauli_dot(d).scale(num_complex::Complex64::new(sign, 0.0)))
            .map(|m| m.scale(half))
    };
    let mut p = [[0.0; 2]; 2];
    for (i, sa) in [1.0, -1.0].into_iter().enumerate() {
        for (j, sb) in [1.0, -1.0].into_iter().enumerate() {
            let op = tensor(&projector(a, sa)?, &projector(b, sb)?)?;
            p[i][j] = state.contract(&op).re.max(0.0);
        }
    }
    // renormalize away rounding drift
    let total: f64 = p.iter().flatten().sum();
    for row in &mut p {
        for x in row {
            *x /= total;
        }
    }
    JointOutcomeTable::new(p)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorizationReport {
    /// `product_residual ≤ tolerance`.
    pub product_factorizes: bool,
    /// `max |p(A,B) − p(A|B)·p_B(B)|` over cells with `p_B(B) > 0`.
    pub chain_rule_residual: f64,
    /// `max |p(A,B) − p_A(A)·p_B(B)|`.
    pub product_residual: f64,
    pub tolerance: f64,
}

pub fn factorization_check(
    joint: &JointOutcomeTable,
    tolerance: f64,
) -> Result<FactorizationReport> {
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(Error::InvalidTolerance(tolerance));
    }
    let p = joint.probabilities();
    let (pa, pb) = (joint.marginal_a(), joint.marginal_b());
    let mut product_residual: f64 = 0.0;
    let mut chain_rule_residual: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            product_residual = product_residual.max((p[i][j] - pa[i] * pb[j]).abs());
            if pb[j] > 0.0 {
                let conditional = p[i][j] / pb[j];
                chain_rule_residual =
                    chain_rule_residual.max((p[i][j] - conditional * pb[j]).abs());
            }
        }
    }
    Ok(FactorizationReport {
        product_factorizes: product_residual <= tolerance,
        chain_rule_residual,
        product_residual,
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::singlet;
    use approx::assert_abs_diff_eq;

    #[test]
    fn uniform_table_factorizes() {
        let t = JointOutcomeTable::new([[0.25; 2]; 2]).unwrap();
        let r = factorization_check(&t, 1e-12).unwrap();
        assert!(r.product_factorizes);
        assert_eq!(r.product_residual, 0.0);
        assert_eq!(r.chain_rule_residual, 0.0);
    }

    #[test]
    fn anticorrelated_table_does_not() {
        let t = JointOutcomeTable::new([[0.0, 0.5], [0.5, 0.0]]).unwrap();
        let r = factorization_check(&t, 1e-12).unwrap();
        assert!(!r.product_factorizes);
        assert_eq!(r.product_residual, 0.25);
        assert_eq!(r.chain_rule_residual, 0.0);
        assert_eq!(t.correlation(), -1.0);
    }

    #[test]
    fn zero_marginal_cells_are_skipped() {
        let t = JointOutcomeTable::new([[0.6, 0.0], [0.4, 0.0]]).unwrap();
        let r = factorization_check(&t, 1e-12).unwrap();
        assert!(r.chain_rule_residual.is_finite());
        assert!(r.product_factorizes);
    }

    #[test]
    fn table_validation() {
        assert!(JointOutcomeTable::new([[0.5, 0.5], [0.5, 0.0]]).is_err());
        assert!(JointOutcomeTable::new([[1.1, -0.1], [0.0, 0.0]]).is_err());
        assert!(
            factorization_check(&JointOutcomeTable::new([[0.25; 2]; 2]).unwrap(), 0.0).is_err()
        );
    }

    #[test]
    fn singlet_table_against_closed_form() {
        let a = Direction::Z;
        for deg in [0.0, 30.0, 60.0, 90.0, 135.0, 180.0_f64] {
            let th = deg.to_radians();
            let b = Direction::planar_degrees(deg);
            let t = joint_outcome_table(&singlet(), &a, &b).unwrap();
            let same = (th / 2.0).sin().powi(2) / 2.0;
            let diff = (th / 2.0).cos().powi(2) / 2.0;
            let p = t.probabilities();
            assert_abs_diff_eq!(p[0][0], same, epsilon = 1e-12);
            assert_abs_diff_eq!(p[1][1], same, epsilon = 1e-12);
            assert_abs_diff_eq!(p[0][1], diff, epsilon = 1e-12);
            assert_abs_diff_eq!(p[1][0], diff, epsilon = 1e-12);
            let r = factorization_check(&t, 1e-9).unwrap();
            // brute force over the four cells with marginals ½
            let brute = [same, diff, diff, same]
                .iter()
                .map(|x| (x - 0.25).abs())
                .fold(0.0, f64::max);
            assert_abs_diff_eq!(r.product_residual, brute, epsilon = 1e-12);
            assert_abs_diff_eq!(r.product_residual, th.cos().abs() / 4.0, epsilon = 1e-12);
            assert!(r.chain_rule_residual < 1e-15);
        }
    }
}
