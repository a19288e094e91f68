use std::fmt;

use rand::distr::weighted::WeightedIndex;
use rand::Rng;
use rand_distr::{Distribution, UnitSphere};

use super::family::LambdaConditionedFamily;
use super::quadrature::SphereRule;
use crate::error::{Error, Result};
use crate::quantum::Side;
use crate::spin::{Direction, TwoQubitState, INPUT_TOL};

/// A point of some model's λ-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HiddenVariable {
    Sphere(Direction),
    Discrete(usize),
}

impl fmt::Display for HiddenVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HiddenVariable::Sphere(d) => write!(f, "sphere{d}"),
            HiddenVariable::Discrete(i) => write!(f, "point #{i}"),
        }
    }
}

/// A λ-space together with its measure ρ(λ).
#[derive(Debug, Clone)]
pub enum LambdaSpace {
    /// Unit sphere with the uniform probability measure.
    UnitSphere,
    /// Finitely many points with non-negative weights. The weights are used
    /// as printed and need not sum to one.
    Discrete {
        weights: Vec<f64>,
        sampler: WeightedIndex<f64>,
    },
}

impl LambdaSpace {
    pub fn discrete(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidConfig(format!(
                "discrete lambda weights must be finite and non-negative, got {weights:?}"
            )));
        }
        let sampler = WeightedIndex::new(&weights)
            .map_err(|e| Error::InvalidConfig(format!("discrete lambda weights: {e}")))?;
        Ok(LambdaSpace::Discrete { weights, sampler })
    }

    /// `∫ dλ ρ(λ)`.
    pub fn total_mass(&self) -> f64 {
        match self {
            LambdaSpace::UnitSphere => 1.0,
            LambdaSpace::Discrete { weights, .. } => weights.iter().sum(),
        }
    }

    /// Validity predicate for points of this space.
    pub fn contains(&self, lambda: &HiddenVariable) -> bool {
        match (self, lambda) {
            (LambdaSpace::UnitSphere, HiddenVariable::Sphere(d)) => {
                let [x, y, z] = d.components();
                ((x * x + y * y + z * z).sqrt() - 1.0).abs() <= INPUT_TOL
            }
            (LambdaSpace::Discrete { weights, .. }, HiddenVariable::Discrete(i)) => {
                *i < weights.len()
            }
            _ => false,
        }
    }

    /// Draws λ from the normalized measure `ρ / total_mass`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> HiddenVariable {
        match self {
            LambdaSpace::UnitSphere => {
                let [x, y, z]: [f64; 3] = UnitSphere.sample(rng);
                HiddenVariable::Sphere(Direction::normalized(x, y, z).expect("unit sphere sample"))
            }
            LambdaSpace::Discrete { sampler, .. } => HiddenVariable::Discrete(sampler.sample(rng)),
        }
    }

    pub fn quadrature(&self, nodes_per_dim: usize) -> QuadratureRule {
        match self {
            LambdaSpace::UnitSphere => QuadratureRule::Sphere(SphereRule::new(nodes_per_dim)),
            LambdaSpace::Discrete { weights, .. } => QuadratureRule::Discrete(weights.clone()),
        }
    }
}

/// Deterministic integration nodes of a [`LambdaSpace`]; weights sum to its
/// total mass.
#[derive(Debug, Clone)]
pub enum QuadratureRule {
    Sphere(SphereRule),
    /// Discrete spaces are summed exactly.
    Discrete(Vec<f64>),
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        match self {
            QuadratureRule::Sphere(r) => r.len(),
            QuadratureRule::Discrete(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn node(&self, k: usize) -> (f64, HiddenVariable) {
        match self {
            QuadratureRule::Sphere(r) => {
                let (w, d) = r.node(k);
                (w, HiddenVariable::Sphere(d))
            }
            QuadratureRule::Discrete(w) => (w[k], HiddenVariable::Discrete(k)),
        }
    }
}

/// A local hidden-variable model: a λ-space with measure and two local
/// outcome functions with values in `[-1, 1]`.
///
/// `outcome_a` never sees B's setting and `outcome_b` never sees A's.
pub trait HiddenVariableModel: fmt::Debug + Send + Sync {
    fn descriptor(&self) -> String;

    fn space(&self) -> &LambdaSpace;

    fn outcome_a(&self, a: &Direction, lambda: &HiddenVariable) -> f64;

    fn outcome_b(&self, b: &Direction, lambda: &HiddenVariable) -> f64;
}

fn sign(x: f64) -> f64 {
    x.signum()
}

/// `A = sign(a·λ)`, `B = −sign(b·λ)`, λ uniform on the sphere.
#[derive(Debug, Clone)]
pub struct SignModel {
    space: LambdaSpace,
}

impl SignModel {
    pub fn new() -> Self {
        SignModel {
            space: LambdaSpace::UnitSphere,
        }
    }

    /// Closed form of this model's correlation at angle `theta` (radians).
    pub fn closed_form(theta: f64) -> f64 {
        -1.0 + 2.0 * theta / std::f64::consts::PI
    }
}

impl Default for SignModel {
    fn default() -> Self {
        Self::new()
    }
}

impl HiddenVariableModel for SignModel {
    fn descriptor(&self) -> String {
        "sign".into()
    }

    fn space(&self) -> &LambdaSpace {
        &self.space
    }

    fn outcome_a(&self, a: &Direction, lambda: &HiddenVariable) -> f64 {
        match lambda {
            HiddenVariable::Sphere(l) => sign(a.dot(l)),
            HiddenVariable::Discrete(_) => f64::NAN,
        }
    }

    fn outcome_b(&self, b: &Direction, lambda: &HiddenVariable) -> f64 {
        match lambda {
            HiddenVariable::Sphere(l) => -sign(b.dot(l)),
            HiddenVariable::Discrete(_) => f64::NAN,
        }
    }
}

/// `A = +1`, `B = −1` whatever the settings.
#[derive(Debug, Clone)]
pub struct ConstantModel {
    space: LambdaSpace,
}

impl ConstantModel {
    pub fn new() -> Self {
        ConstantModel {
            space: LambdaSpace::UnitSphere,
        }
    }
}

impl Default for ConstantModel {
    fn default() -> Self {
        Self::new()
    }
}

impl HiddenVariableModel for ConstantModel {
    fn descriptor(&self) -> String {
        "constant".into()
    }

    fn space(&self) -> &LambdaSpace {
        &self.space
    }

    fn outcome_a(&self, _a: &Direction, _lambda: &HiddenVariable) -> f64 {
        1.0
    }

    fn outcome_b(&self, _b: &Direction, _lambda: &HiddenVariable) -> f64 {
        -1.0
    }
}

/// Outcomes replaced by single-particle quantum expectations conditioned on
/// λ: `A(a,λ) = ⟨σ_A·a⟩(λ)`, `B(b,λ) = ⟨σ_B·b⟩(λ)`, with λ ranging over the
/// members of a [`LambdaConditionedFamily`] weighted as the family says.
#[derive(Debug, Clone)]
pub struct MarginalProductModel {
    state: TwoQubitState,
    state_label: String,
    family: LambdaConditionedFamily,
    space: LambdaSpace,
}

impl MarginalProductModel {
    pub fn new(state: TwoQubitState, family: LambdaConditionedFamily) -> Result<Self> {
        family.check_applies(&state)?;
        let space = LambdaSpace::discrete(family.weights())?;
        Ok(MarginalProductModel {
            state,
            state_label: "custom".into(),
            family,
            space,
        })
    }

    pub fn with_state_label(mut self, label: impl Into<String>) -> Self {
        self.state_label = label.into();
        self
    }

    pub fn family(&self) -> &LambdaConditionedFamily {
        &self.family
    }

    fn marginal(&self, d: &Direction, lambda: &HiddenVariable, side: Side) -> f64 {
        match lambda {
            HiddenVariable::Discrete(i) if *i < self.family.len() => {
                self.family.marginal(*i, &self.state, d, side)
            }
            _ => f64::NAN,
        }
    }
}

impl HiddenVariableModel for MarginalProductModel {
    fn descriptor(&self) -> String {
        format!(
            "marginal-product({}, {})",
            self.state_label,
            self.family.name()
        )
    }

    fn space(&self) -> &LambdaSpace {
        &self.space
    }

    fn outcome_a(&self, a: &Direction, lambda: &HiddenVariable) -> f64 {
        self.marginal(a, lambda, Side::A)
    }

    fn outcome_b(&self, b: &Direction, lambda: &HiddenVariable) -> f64 {
        self.marginal(b, lambda, Side::B)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sign_model_outcomes() {
        let m = SignModel::new();
        let l = HiddenVariable::Sphere(Direction::planar_degrees(10.0));
        assert_eq!(m.outcome_a(&Direction::Z, &l), 1.0);
        assert_eq!(m.outcome_b(&Direction::Z, &l), -1.0);
        assert_eq!(m.outcome_a(&Direction::Z.reversed(), &l), -1.0);
        assert!(m
            .outcome_a(&Direction::Z, &HiddenVariable::Discrete(0))
            .is_nan());
    }

    #[test]
    fn outcome_a_ignores_remote_setting() {
        // A's outcome function only receives a; varying b cannot reach it.
        let m = SignModel::new();
        let a = Direction::planar_degrees(33.0);
        let l = HiddenVariable::Sphere(Direction::normalized(0.3, -0.2, 0.9).unwrap());
        let first = m.outcome_a(&a, &l).to_bits();
        for k in 0..10 {
            let b = Direction::planar_degrees(17.0 * k as f64);
            let _ = m.outcome_b(&b, &l);
            assert_eq!(m.outcome_a(&a, &l).to_bits(), first);
        }
    }

    #[test]
    fn discrete_space_rejects_bad_weights() {
        assert!(LambdaSpace::discrete(vec![]).is_err());
        assert!(LambdaSpace::discrete(vec![0.5, -0.1]).is_err());
        assert!(LambdaSpace::discrete(vec![0.0, 0.0]).is_err());
        let s = LambdaSpace::discrete(vec![0.5; 4]).unwrap();
        assert_eq!(s.total_mass(), 2.0);
        assert!(s.contains(&HiddenVariable::Discrete(3)));
        assert!(!s.contains(&HiddenVariable::Discrete(4)));
        assert!(!s.contains(&HiddenVariable::Sphere(Direction::Z)));
    }

    #[test]
    fn sphere_samples_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = LambdaSpace::UnitSphere;
        for _ in 0..100 {
            assert!(s.contains(&s.sample(&mut rng)));
        }
    }
}
