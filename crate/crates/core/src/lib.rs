//! Two-qubit correlation laboratory.
//!
//! Computes spin correlations of two spin-1/2 particles in two ways and
//! puts them side by side:
//!
//! * as an integral over a local hidden variable of the product of local
//!   outcomes ([`lhv`]);
//! * as a quantum operator expectation on a pure state or a density
//!   matrix ([`quantum`]).
//!
//! [`inequality`] evaluates the original three-setting Bell inequality, the
//! generalized form `|P(a,b) − P(a,c)| ≤ 3 − |P(b,c)|` and the three-term
//! bound it rests on, against correlations from any of those sources.
//! [`scenario`] drives batch runs from text scenario files and backs the
//! `correlab` binary.

pub mod error;
pub mod inequality;
pub mod lhv;
pub mod quantum;
pub mod scenario;
pub mod spin;

pub use error::{Error, Result};
pub use spin::{
    density_from_pure, expectation, pauli_dot, product_state, singlet, tensor, ComplexMatrix,
    DensityMatrix, Direction, TwoQubitState,
};
