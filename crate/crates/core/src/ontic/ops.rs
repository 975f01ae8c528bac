use serde::Serialize;

use crate::error::{Error, Result};
use crate::ontic::{Distribution, Measurement, TransformationKernel};
use crate::tolerance::EPS_NORM;

/// `μ'(λ) = Σ_λ₀ μ(λ₀) τ(λ|λ₀)`: a preparation followed by a transformation.
pub fn compose_preparation(mu: &Distribution, t: &TransformationKernel) -> Result<Distribution> {
    if mu.dim() != t.dim() {
        return Err(Error::StateSpaceMismatch {
            expected: t.dim(),
            found: mu.dim(),
        });
    }
    Distribution::new(t.push_forward(mu.weights()))
}

/// Outcome probabilities of `(E, T, M)` for every outcome of `M`, in declared
/// outcome order. `t = None` means no transformation.
pub fn single_shot_distribution(
    mu: &Distribution,
    t: Option<&TransformationKernel>,
    m: &Measurement,
) -> Result<Vec<f64>> {
    if mu.dim() != m.dim() {
        return Err(Error::StateSpaceMismatch {
            expected: m.dim(),
            found: mu.dim(),
        });
    }
    match t {
        Some(t) => {
            let evolved = compose_preparation(mu, t)?;
            Ok(m.outcome_weights(evolved.weights()))
        }
        None => Ok(m.outcome_weights(mu.weights())),
    }
}

/// `P_{(E,T,M)}(Q=q) = Σ_{λ₀,λ₁} μ_E(λ₀) τ_T(λ₁|λ₀) ξ_M(q|λ₁)`.
pub fn single_shot_probability(
    mu: &Distribution,
    t: Option<&TransformationKernel>,
    m: &Measurement,
    outcome: &str,
) -> Result<f64> {
    let q = m.outcome_index(outcome)?;
    Ok(single_shot_distribution(mu, t, m)?[q])
}

/// Result of an ontic-noninvasiveness check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OniCheck {
    pub noninvasive: bool,
    /// Worst total-variation distance of a checked update row from `δ_{λ₀}`.
    pub deviation: f64,
}

/// Checks `τ_M(λ|q,λ₀) = δ_{λ,λ₀}` on every row that can actually fire,
/// for one outcome (partial ONI) or for all of them.
pub fn is_ontically_noninvasive(m: &Measurement, for_outcome: Option<&str>) -> Result<OniCheck> {
    let outcomes: Vec<usize> = match for_outcome {
        Some(label) => vec![m.outcome_index(label)?],
        None => (0..m.outcomes().len()).collect(),
    };
    let mut deviation: f64 = 0.0;
    for q in outcomes {
        for from in 0..m.dim() {
            if m.response().prob(from, q) == 0.0 {
                continue;
            }
            if let Some(d) = m.update().deviation_from_identity(q, from) {
                deviation = deviation.max(d);
            }
        }
    }
    Ok(OniCheck {
        noninvasive: deviation <= EPS_NORM,
        deviation,
    })
}
