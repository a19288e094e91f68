//! The singlet correlation written out term by term in the `↑/↓` basis,
//! once as a mixture of basis products and once with the quantum cross terms.

use num_complex::Complex64;

use crate::spin::{braket, pauli_dot, Direction, IMAG_RESIDUE_TOL, SPIN_DOWN, SPIN_UP};

/// `½[⟨↑|σa|↑⟩⟨↓|σb|↓⟩ + ⟨↓|σa|↓⟩⟨↓|σb|↓⟩ + ⟨↑|σa|↑⟩⟨↑|σb|↑⟩ + ⟨↓|σa|↓⟩⟨↑|σb|↑⟩]`
///
/// Only diagonal bra-kets appear, so every term is a product of marginals.
/// The sum factors as `½·tr(σ·a)·tr(σ·b)` and is therefore zero.
pub fn singlet_basis_mixture_expectation(a: &Direction, b: &Direction) -> f64 {
    let (sa, sb) = (pauli_dot(a), pauli_dot(b));
    let a_up = braket(&SPIN_UP, &sa, &SPIN_UP);
    let a_dn = braket(&SPIN_DOWN, &sa, &SPIN_DOWN);
    let b_up = braket(&SPIN_UP, &sb, &SPIN_UP);
    let b_dn = braket(&SPIN_DOWN, &sb, &SPIN_DOWN);
    let sum = a_up * b_dn + a_dn * b_dn + a_up * b_up + a_dn * b_up;
    0.5 * sum.re
}

/// `½[⟨↑|σa|↑⟩⟨↓|σb|↓⟩ − ⟨↑|σa|↓⟩⟨↓|σb|↑⟩ − ⟨↓|σa|↑⟩⟨↑|σb|↓⟩ + ⟨↓|σa|↓⟩⟨↑|σb|↑⟩]`
///
/// Equals `⟨singlet|(σ·a)⊗(σ·b)|singlet⟩`.
pub fn singlet_qm_decomposition(a: &Direction, b: &Direction) -> f64 {
    let (sa, sb) = (pauli_dot(a), pauli_dot(b));
    let (u, d) = (&SPIN_UP, &SPIN_DOWN);
    let sum: Complex64 = braket(u, &sa, u) * braket(d, &sb, d)
        - braket(u, &sa, d) * braket(d, &sb, u)
        - braket(d, &sa, u) * braket(u, &sb, d)
        + braket(d, &sa, d) * braket(u, &sb, u);
    debug_assert!(sum.im.abs() < IMAG_RESIDUE_TOL);
    0.5 * sum.re
}
