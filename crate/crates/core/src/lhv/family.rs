use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quantum::{qm_marginal, Side};
use crate::spin::{singlet, Direction, TwoQubitState};

pub type MarginalFn = Arc<dyn Fn(&Direction) -> f64 + Send + Sync>;

/// What a single λ contributes: a state whose single-particle expectations
/// are taken, or the two marginal functions directly.
#[derive(Clone)]
pub enum FamilyMember {
    /// The state being evaluated.
    Parent,
    Conditional(TwoQubitState),
    Marginals {
        a: MarginalFn,
        b: MarginalFn,
    },
}

impl fmt::Debug for FamilyMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyMember::Parent => write!(f, "Parent"),
            FamilyMember::Conditional(s) => f.debug_tuple("Conditional").field(s).finish(),
            FamilyMember::Marginals { .. } => write!(f, "Marginals(..)"),
        }
    }
}

/// Maps each λ of a discrete λ-space to the single-particle expectations
/// `⟨Ψ|σ_A·a|Ψ⟩(λ)` and `⟨Ψ|σ_B·b|Ψ⟩(λ)`.
///
/// A family may be anchored to the state it decomposes; it then refuses to
/// be applied to any other state.
#[derive(Debug, Clone)]
pub struct LambdaConditionedFamily {
    name: String,
    members: Vec<(f64, FamilyMember)>,
    anchor: Option<TwoQubitState>,
}

impl LambdaConditionedFamily {
    pub fn new(
        name: impl Into<String>,
        members: Vec<(f64, FamilyMember)>,
        anchor: Option<TwoQubitState>,
    ) -> Result<Self> {
        let name = name.into();
        if members.is_empty() {
            return Err(Error::InvalidConfig(format!(
                "family `{name}` has no members"
            )));
        }
        if let Some((w, _)) = members.iter().find(|(w, _)| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidConfig(format!(
                "family `{name}` has invalid weight {w}"
            )));
        }
        Ok(LambdaConditionedFamily {
            name,
            members,
            anchor,
        })
    }

    /// A single λ of weight 1 carrying the evaluated state itself.
    pub fn one_point() -> Self {
        LambdaConditionedFamily {
            name: "one-point".into(),
            members: vec![(1.0, FamilyMember::Parent)],
            anchor: None,
        }
    }

    /// The singlet's four-term basis expansion, coefficients taken
    /// literally: weight ½ on each of `↑↓, ↓↓, ↑↑, ↓↑` (total mass 2).
    pub fn singlet_basis_mixture() -> Self {
        let member = |i| (0.5, FamilyMember::Conditional(TwoQubitState::basis(i)));
        LambdaConditionedFamily {
            name: "basis-mixture".into(),
            members: vec![member(1), member(3), member(0), member(2)],
            anchor: Some(singlet()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[(f64, FamilyMember)] {
        &self.members
    }

    pub fn weights(&self) -> Vec<f64> {
        self.members.iter().map(|(w, _)| *w).collect()
    }

    pub fn anchor(&self) -> Option<&TwoQubitState> {
        self.anchor.as_ref()
    }

    /// Errors unless `state` equals the anchor up to a global phase.
    pub fn check_applies(&self, state: &TwoQubitState) -> Result<()> {
        match &self.anchor {
            Some(anchor) if (anchor.fidelity(state) - 1.0).abs() > 1e-9 => {
                Err(Error::FamilyMismatch {
                    family: self.name.clone(),
                    reason: format!(
                        "built for {:?}, overlap with the given state is {}",
                        anchor.amplitudes(),
                        anchor.fidelity(state)
                    ),
                })
            }
            _ => Ok(()),
        }
    }

    /// Single-particle expectation on `side` for member `index`.
    pub fn marginal(&self, index: usize, parent: &TwoQubitState, d: &Direction, side: Side) -> f64 {
        match &self.members[index].1 {
            FamilyMember::Parent => qm_marginal(parent, d, side),
            FamilyMember::Conditional(s) => qm_marginal(s, d, side),
            FamilyMember::Marginals { a, b } => match side {
                Side::A => a(d),
                Side::B => b(d),
            },
        }
    }
}

/// Registered family names.
pub const FAMILY_NAMES: &[&str] = &["one-point", "basis-mixture"];

pub fn family_by_name(name: &str) -> Result<LambdaConditionedFamily> {
    match name {
        "one-point" => Ok(LambdaConditionedFamily::one_point()),
        "basis-mixture" => Ok(LambdaConditionedFamily::singlet_basis_mixture()),
        other => Err(Error::UnknownName {
            kind: "family",
            name: other.into(),
            available: FAMILY_NAMES.iter().map(|s| s.to_string()).collect(),
        }),
    }
}
