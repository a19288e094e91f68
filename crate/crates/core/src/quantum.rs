//! Quantum-mechanical correlation functions.

use crate::error::{Error, Result};
use crate::spin::{
    pauli_dot, tensor, ComplexMatrix, DensityMatrix, Direction, TwoQubitState, IMAG_RESIDUE_TOL,
};

/// Default tolerance when comparing the two sides of the rearrangement.
pub const DEFAULT_REARRANGEMENT_TOL: f64 = 1e-9;

/// Which particle a single-particle observable acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

fn joint_operator(a: &Direction, b: &Direction) -> ComplexMatrix {
    tensor(&pauli_dot(a), &pauli_dot(b)).expect("2x2 operands")
}

/// `⟨Ψ|(σ_A·a)(σ_B·b)|Ψ⟩`.
pub fn qm_correlation(state: &TwoQubitState, a: &Direction, b: &Direction) -> f64 {
    let value = state.contract(&joint_operator(a, b));
    debug_assert!(value.im.abs() < IMAG_RESIDUE_TOL);
    value.re
}

/// Single-particle expectation `⟨Ψ|σ·d ⊗ I|Ψ⟩` (side A) or `⟨Ψ|I ⊗ σ·d|Ψ⟩` (side B).
pub fn qm_marginal(state: &TwoQubitState, d: &Direction, side: Side) -> f64 {
    let id = ComplexMatrix::identity(2);
    let op = match side {
        Side::A => tensor(&pauli_dot(d), &id),
        Side::B => tensor(&id, &pauli_dot(d)),
    }
    .expect("2x2 operands");
    state.contract(&op).re
}

/// `tr[ρ (σ_A·a)(σ_B·b)]`.
pub fn qm_correlation_density(rho: &DensityMatrix, a: &Direction, b: &Direction) -> Result<f64> {
    let value = rho.trace_with(&joint_operator(a, b))?;
    if value.im.abs() > IMAG_RESIDUE_TOL {
        return Err(Error::ImaginaryResidue {
            residue: value.im.abs(),
        });
    }
    Ok(value.re)
}

/// Both sides of the term-by-term rearrangement
/// `E(a,b) − E(a,b′) = E(a,b)[1 ± E(a′,b′)] − E(a,b′)[1 ± E(a′,b)]`
/// evaluated with quantum correlations `E`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RearrangementReport {
    pub lhs: f64,
    pub rhs_plus: f64,
    pub rhs_minus: f64,
    pub equal_plus: bool,
    pub equal_minus: bool,
    pub tolerance: f64,
}

pub fn rearrangement_check(
    state: &TwoQubitState,
    a: &Direction,
    b: &Direction,
    a2: &Direction,
    b2: &Direction,
    tolerance: f64,
) -> Result<RearrangementReport> {
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(Error::InvalidTolerance(tolerance));
    }
    let e_ab = qm_correlation(state, a, b);
    let e_ab2 = qm_correlation(state, a, b2);
    let e_a2b2 = qm_correlation(state, a2, b2);
    let e_a2b = qm_correlation(state, a2, b);

    let lhs = e_ab - e_ab2;
    let rhs_plus = e_ab * (1.0 + e_a2b2) - e_ab2 * (1.0 + e_a2b);
    let rhs_minus = e_ab * (1.0 - e_a2b2) - e_ab2 * (1.0 - e_a2b);
    Ok(RearrangementReport {
        lhs,
        rhs_plus,
        rhs_minus,
        equal_plus: (lhs - rhs_plus).abs() <= tolerance,
        equal_minus: (lhs - rhs_minus).abs() <= tolerance,
        tolerance,
    })
}

/// Coplanar triple with `a∠b = b∠c = 60°` and `a∠c = 120°`, in the xz-plane.
pub fn sixty_degree_triple() -> [Direction; 3] {
    [
        Direction::planar_degrees(0.0),
        Direction::planar_degrees(60.0),
        Direction::planar_degrees(120.0),
    ]
}
