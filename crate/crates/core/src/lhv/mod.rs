//! Local hidden-variable expectation values.

mod expansion;
mod factorization;
mod family;
mod integrate;
mod model;
pub mod quadrature;
mod zoo;

pub use expansion::{singlet_basis_mixture_expectation, singlet_qm_decomposition};
pub use factorization::{
    factorization_check, joint_outcome_table, FactorizationReport, JointOutcomeTable,
};
pub use family::{family_by_name, FamilyMember, LambdaConditionedFamily, MarginalFn, FAMILY_NAMES};
pub use integrate::{
    bell_product_expectation, lhv_correlation, sample_rng, CorrelationEstimate, IntegrationConfig,
    Method, CHUNK_SIZE, MIN_QUADRATURE_NODES,
};
pub use model::{
    ConstantModel, HiddenVariable, HiddenVariableModel, LambdaSpace, MarginalProductModel,
    QuadratureRule, SignModel,
};
pub use zoo::{model_by_name, shipped_models, MODEL_NAMES};
