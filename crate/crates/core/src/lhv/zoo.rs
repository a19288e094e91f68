//! Hidden-variable models selectable by name.

use super::family::{family_by_name, LambdaConditionedFamily};
use super::model::{ConstantModel, HiddenVariableModel, MarginalProductModel, SignModel};
use crate::error::{Error, Result};
use crate::spin::state_by_name;

pub const MODEL_NAMES: &[&str] = &["sign", "constant", "marginal-product"];

/// Builds a zoo model. `state` and `family` only apply to
/// `marginal-product`, which defaults to the singlet with its basis mixture.
pub fn model_by_name(
    name: &str,
    state: Option<&str>,
    family: Option<&str>,
) -> Result<Box<dyn HiddenVariableModel>> {
    if name != "marginal-product" && (state.is_some() || family.is_some()) {
        return Err(Error::InvalidConfig(format!(
            "model `{name}` takes no state or family parameter"
        )));
    }
    match name {
        "sign" => Ok(Box::new(SignModel::new())),
        "constant" => Ok(Box::new(ConstantModel::new())),
        "marginal-product" => {
            let state_name = state.unwrap_or("singlet");
            let family = match family {
                Some(f) => family_by_name(f)?,
                None => LambdaConditionedFamily::singlet_basis_mixture(),
            };
            let model = MarginalProductModel::new(state_by_name(state_name)?, family)?
                .with_state_label(state_name);
            Ok(Box::new(model))
        }
        other => Err(Error::UnknownName {
            kind: "model",
            name: other.into(),
            available: MODEL_NAMES.iter().map(|s| s.to_string()).collect(),
        }),
    }
}

/// Every model configuration shipped with the crate.
///
/// Each one has `B(d,λ) = −A(d,λ)` for equal settings on both sides, the
/// premise of the original three-setting inequality.
pub fn shipped_models() -> Vec<Box<dyn HiddenVariableModel>> {
    [
        ("sign", None, None),
        ("constant", None, None),
        ("marginal-product", Some("singlet"), Some("basis-mixture")),
        ("marginal-product", Some("up-down"), Some("one-point")),
    ]
    .into_iter()
    .map(|(n, s, f)| model_by_name(n, s, f).expect("shipped model builds"))
    .collect()
}
