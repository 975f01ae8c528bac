use serde::Serialize;

use crate::error::{Error, Result};
use crate::ontic::{is_ontically_noninvasive, max_abs_diff, OnticModel};
use crate::operational::{default_measurement_probes, measurements_equivalent};
use crate::tolerance::EPS_EQ;

/// A measurement together with the outcome whose runs are kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KeptOutcome {
    pub measurement: String,
    pub outcome: String,
}

impl KeptOutcome {
    pub fn new(measurement: &str, outcome: &str) -> Self {
        Self {
            measurement: measurement.into(),
            outcome: outcome.into(),
        }
    }
}

/// Effect of the post-selected composite on one preparation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PostSelection {
    pub preparation: String,
    /// Probability that a run is kept.
    pub kept_fraction: f64,
    /// Ontic distribution after the composite, conditioned on being kept.
    pub output: Vec<f64>,
    /// The input weights carried by kept runs, normalized, with no update applied.
    pub kept_input: Vec<f64>,
    /// `max |output - kept_input|`: zero iff the composite is noninvasive on kept runs.
    pub deviation: f64,
    /// `max |output - input|`.
    pub deviation_from_input: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PostSelectionReport {
    pub first: KeptOutcome,
    pub second: KeptOutcome,
    pub per_preparation: Vec<PostSelection>,
}

impl PostSelectionReport {
    pub fn max_deviation(&self) -> f64 {
        self.per_preparation.iter().map(|p| p.deviation).fold(0.0, f64::max)
    }

    pub fn max_deviation_from_input(&self) -> f64 {
        self.per_preparation
            .iter()
            .map(|p| p.deviation_from_input)
            .fold(0.0, f64::max)
    }
}

/// Builds the process "pick one of the two measurements with probability 1/2,
/// keep the run only when it returns its kept outcome" and applies it to every
/// declared preparation.
///
/// Each measurement must be noninvasive on its kept outcome, and the two must
/// be operationally equivalent.
pub fn post_select_noninvasive(
    model: &OnticModel,
    first: &KeptOutcome,
    second: &KeptOutcome,
) -> Result<PostSelectionReport> {
    let eq = measurements_equivalent(
        model,
        &first.measurement,
        &second.measurement,
        &default_measurement_probes(model),
    )?;
    if !eq.equivalent {
        return Err(Error::Precondition(format!(
            "`{}` and `{}` are not operationally equivalent (deviation {})",
            first.measurement, second.measurement, eq.max_deviation
        )));
    }
    let mut parts = Vec::with_capacity(2);
    for k in [first, second] {
        let m = model.measurement(&k.measurement)?;
        let q = m.outcome_index(&k.outcome)?;
        let oni = is_ontically_noninvasive(m, Some(&k.outcome))?;
        if !oni.noninvasive {
            return Err(Error::Precondition(format!(
                "`{}` is not ontically noninvasive for outcome `{}` (deviation {})",
                k.measurement, k.outcome, oni.deviation
            )));
        }
        parts.push((m, q));
    }

    let mut per_preparation = Vec::new();
    for (name, mu) in model.preparations() {
        let w = mu.weights();
        let mut out = vec![0.0; model.dim()];
        let mut kept_input = vec![0.0; model.dim()];
        for &(m, q) in &parts {
            let half: Vec<f64> = w.iter().map(|x| 0.5 * x).collect();
            m.branch_into(&half, q, &mut out);
            for (s, k) in kept_input.iter_mut().enumerate() {
                *k += half[s] * m.response().prob(s, q);
            }
        }
        let kept_fraction: f64 = out.iter().sum();
        if kept_fraction <= EPS_EQ {
            return Err(Error::Precondition(format!(
                "preparation `{name}` is never kept by the post-selection"
            )));
        }
        let kept_total: f64 = kept_input.iter().sum();
        out.iter_mut().for_each(|x| *x /= kept_fraction);
        kept_input.iter_mut().for_each(|x| *x /= kept_total);
        per_preparation.push(PostSelection {
            preparation: name.clone(),
            kept_fraction,
            deviation: max_abs_diff(&out, &kept_input),
            deviation_from_input: max_abs_diff(&out, w),
            output: out,
            kept_input,
        });
    }
    Ok(PostSelectionReport {
        first: first.clone(),
        second: second.clone(),
        per_preparation,
    })
}
