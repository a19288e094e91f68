//! `P(a,b) = ∫ dλ ρ(λ) A(a,λ) B(b,λ)` by Monte Carlo or quadrature.
//!
//! Both routes split the index range into fixed chunks of [`CHUNK_SIZE`],
//! sum each chunk serially in index order and then add the chunk totals in
//! chunk order. Chunks may run on any number of rayon workers; the reported
//! numbers do not change.
//!
//! Monte Carlo sample `i` draws from its own ChaCha8 stream `i` under the
//! configured seed, so samples do not depend on which worker computed them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::family::LambdaConditionedFamily;
use super::model::{HiddenVariable, HiddenVariableModel, MarginalProductModel};
use crate::error::{Error, Result};
use crate::spin::{Direction, TwoQubitState};

pub const CHUNK_SIZE: usize = 4096;

/// Smallest nodes-per-dimension accepted for sphere quadrature.
pub const MIN_QUADRATURE_NODES: u64 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    MonteCarlo,
    SphereQuadrature,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::MonteCarlo => "monte-carlo",
            Method::SphereQuadrature => "sphere-quadrature",
        }
    }
}

/// How to evaluate the λ-integral. For quadrature, `sample_count` is the
/// number of nodes per dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IntegrationConfig {
    pub method: Method,
    pub sample_count: u64,
    pub seed: u64,
    pub confidence_sigma: f64,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        IntegrationConfig {
            method: Method::MonteCarlo,
            sample_count: 100_000,
            seed: 0,
            confidence_sigma: 3.0,
        }
    }
}

impl IntegrationConfig {
    pub fn monte_carlo(sample_count: u64, seed: u64) -> Self {
        IntegrationConfig {
            method: Method::MonteCarlo,
            sample_count,
            seed,
            ..Default::default()
        }
    }

    pub fn quadrature(nodes_per_dim: u64) -> Self {
        IntegrationConfig {
            method: Method::SphereQuadrature,
            sample_count: nodes_per_dim,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample_count < 1 {
            return Err(Error::InvalidConfig(
                "sample_count must be at least 1".into(),
            ));
        }
        if self.method == Method::SphereQuadrature && self.sample_count < MIN_QUADRATURE_NODES {
            return Err(Error::InvalidConfig(format!(
                "sphere quadrature needs at least {MIN_QUADRATURE_NODES} nodes per dimension, got {}",
                self.sample_count
            )));
        }
        if !(self.confidence_sigma.is_finite() && self.confidence_sigma > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "confidence_sigma must be positive, got {}",
                self.confidence_sigma
            )));
        }
        Ok(())
    }
}

/// An estimate of `P(a,b)`. `std_error` is zero for quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub sample_count: u64,
    pub method: Method,
}

/// Random stream for Monte Carlo sample `index`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Default, Clone, Copy)]
struct Partial {
    sum: f64,
    sum_sq: f64,
}

fn checked_product<M: HiddenVariableModel + ?Sized>(
    model: &M,
    a: &Direction,
    b: &Direction,
    lambda: &HiddenVariable,
) -> Result<f64> {
    let out_a = model.outcome_a(a, lambda);
    let out_b = model.outcome_b(b, lambda);
    for value in [out_a, out_b] {
        if !(-1.0..=1.0).contains(&value) {
            return Err(Error::OutcomeOutOfRange {
                model: model.descriptor(),
                lambda: lambda.to_string(),
                value,
            });
        }
    }
    Ok(out_a * out_b)
}

/// Runs `term` over `0..len` in fixed chunks and reduces deterministically.
fn chunked_sum<F>(len: u64, term: F) -> Result<Partial>
where
    F: Fn(u64) -> Result<f64> + Sync,
{
    let chunk = CHUNK_SIZE as u64;
    let n_chunks = len.div_ceil(chunk);
    let partials: Vec<Result<Partial>> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut p = Partial::default();
            for i in c * chunk..((c + 1) * chunk).min(len) {
                let v = term(i)?;
                p.sum += v;
                p.sum_sq += v * v;
            }
            Ok(p)
        })
        .collect();
    let mut total = Partial::default();
    for p in partials {
        let p = p?;
        total.sum += p.sum;
        total.sum_sq += p.sum_sq;
    }
    Ok(total)
}

/// Local hidden-variable correlation of `model` at settings `a`, `b`.
pub fn lhv_correlation<M: HiddenVariableModel + ?Sized>(
    model: &M,
    a: &Direction,
    b: &Direction,
    cfg: &IntegrationConfig,
) -> Result<CorrelationEstimate> {
    cfg.validate()?;
    let space = model.space();
    match cfg.method {
        Method::MonteCarlo => {
            let n = cfg.sample_count;
            let mass = space.total_mass();
            let base = ChaCha8Rng::seed_from_u64(cfg.seed);
            let p = chunked_sum(n, |i| {
                let mut rng = base.clone();
                rng.set_stream(i);
                let lambda = space.sample(&mut rng);
                Ok(mass * checked_product(model, a, b, &lambda)?)
            })?;
            let nf = n as f64;
            let mean = p.sum / nf;
            let std_error = if n > 1 {
                let var = ((p.sum_sq - nf * mean * mean) / (nf - 1.0)).max(0.0);
                (var / nf).sqrt()
            } else {
                0.0
            };
            Ok(CorrelationEstimate {
                mean,
                std_error,
                sample_count: n,
                method: Method::MonteCarlo,
            })
        }
        Method::SphereQuadrature => {
            let nodes = usize::try_from(cfg.sample_count)
                .map_err(|_| Error::InvalidConfig("too many quadrature nodes".into()))?;
            let rule = space.quadrature(nodes);
            let p = chunked_sum(rule.len() as u64, |k| {
                let (w, lambda) = rule.node(k as usize);
                Ok(w * checked_product(model, a, b, &lambda)?)
            })?;
            Ok(CorrelationEstimate {
                mean: p.sum,
                std_error: 0.0,
                sample_count: rule.len() as u64,
                method: Method::SphereQuadrature,
            })
        }
    }
}

/// `∫ dλ ρ(λ) ⟨σ_A·a⟩(λ) ⟨σ_B·b⟩(λ)`: the λ-integral of the product of
/// single-particle expectations drawn from `family`.
pub fn bell_product_expectation(
    state: &TwoQubitState,
    family: &LambdaConditionedFamily,
    a: &Direction,
    b: &Direction,
    cfg: &IntegrationConfig,
) -> Result<CorrelationEstimate> {
    let model = MarginalProductModel::new(*state, family.clone())?;
    lhv_correlation(&model, a, b, cfg)
}
