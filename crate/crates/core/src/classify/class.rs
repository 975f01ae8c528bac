use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ontic::OnticModel;
use crate::operational::{default_measurement_probes, measurements_equivalent};

/// Serializable description of a quantity class: a label plus the
/// measurements taken to measure the same quantity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantityClassSpec {
    pub label: String,
    pub measurements: Vec<String>,
}

/// A quantity class whose members have been checked to be pairwise
/// operationally equivalent on the model's default probes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuantityClass {
    label: String,
    measurements: Vec<String>,
    outcomes: Vec<String>,
}

impl QuantityClass {
    pub fn new(model: &OnticModel, spec: &QuantityClassSpec) -> Result<Self> {
        let first = spec
            .measurements
            .first()
            .ok_or_else(|| Error::domain(format!("quantity class `{}` is empty", spec.label)))?;
        let probes = default_measurement_probes(model);
        for other in &spec.measurements[1..] {
            let r = measurements_equivalent(model, first, other, &probes)?;
            if !r.equivalent {
                return Err(Error::domain(format!(
                    "`{first}` and `{other}` in class `{}` are not operationally equivalent (deviation {})",
                    spec.label, r.max_deviation
                )));
            }
        }
        Ok(Self {
            label: spec.label.clone(),
            measurements: spec.measurements.clone(),
            outcomes: model.measurement(first)?.outcomes().to_vec(),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn measurements(&self) -> &[String] {
        &self.measurements
    }

    /// Outcome labels, in the first member's order.
    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }
}
