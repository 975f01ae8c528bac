use serde::Serialize;

use crate::error::{Error, Result};
use crate::ontic::{Distribution, OnticModel};
use crate::tolerance::EPS_EQ;

/// A probe for preparation equivalence: apply `transformation` (if any), then
/// read the outcome statistics of `measurement`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreparationProbe {
    pub transformation: Option<String>,
    pub measurement: String,
}

/// A probe for measurement equivalence: the preparation, optionally followed by
/// a transformation, that feeds both measurements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeasurementProbe {
    pub preparation: String,
    pub transformation: Option<String>,
}

/// Outcome of an equivalence check. Equivalence is only ever certified relative
/// to the probes listed here.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport<P> {
    pub equivalent: bool,
    pub max_deviation: f64,
    pub worst_probe: Option<P>,
    pub probes: Vec<P>,
}

/// Every declared measurement, alone and after each declared transformation.
pub fn default_preparation_probes(model: &OnticModel) -> Vec<PreparationProbe> {
    let ts = std::iter::once(None).chain(model.transformations().keys().map(|t| Some(t.clone())));
    ts.flat_map(|t| {
        model.measurements().keys().map(move |m| PreparationProbe {
            transformation: t.clone(),
            measurement: m.clone(),
        })
    })
    .collect()
}

/// Every declared preparation, alone and after each declared transformation.
pub fn default_measurement_probes(model: &OnticModel) -> Vec<MeasurementProbe> {
    let ts: Vec<Option<String>> = std::iter::once(None)
        .chain(model.transformations().keys().map(|t| Some(t.clone())))
        .collect();
    model
        .preparations()
        .keys()
        .flat_map(|e| {
            ts.iter().map(move |t| MeasurementProbe {
                preparation: e.clone(),
                transformation: t.clone(),
            })
        })
        .collect()
}

fn transformed(model: &OnticModel, mu: &[f64], t: Option<&str>) -> Result<Vec<f64>> {
    Ok(match model.maybe_transformation(t)? {
        Some(k) => k.push_forward(mu),
        None => mu.to_vec(),
    })
}

fn settle<P: Clone>(probes: Vec<P>, deviations: Vec<f64>) -> EquivalenceReport<P> {
    let mut worst: Option<(usize, f64)> = None;
    for (i, &d) in deviations.iter().enumerate() {
        if worst.map_or(true, |(_, w)| d > w) {
            worst = Some((i, d));
        }
    }
    let max_deviation = worst.map_or(0.0, |(_, d)| d);
    EquivalenceReport {
        equivalent: max_deviation <= EPS_EQ,
        max_deviation,
        worst_probe: worst.filter(|(_, d)| *d > 0.0).map(|(i, _)| probes[i].clone()),
        probes,
    }
}

/// Compares two ontic distributions on every probe.
pub fn distributions_equivalent(
    model: &OnticModel,
    mu1: &Distribution,
    mu2: &Distribution,
    probes: &[PreparationProbe],
) -> Result<EquivalenceReport<PreparationProbe>> {
    for mu in [mu1, mu2] {
        if mu.dim() != model.dim() {
            return Err(Error::StateSpaceMismatch {
                expected: model.dim(),
                found: mu.dim(),
            });
        }
    }
    let mut deviations = Vec::with_capacity(probes.len());
    for p in probes {
        let m = model.measurement(&p.measurement)?;
        let a = m.outcome_weights(&transformed(model, mu1.weights(), p.transformation.as_deref())?);
        let b = m.outcome_weights(&transformed(model, mu2.weights(), p.transformation.as_deref())?);
        deviations.push(crate::ontic::max_abs_diff(&a, &b));
    }
    Ok(settle(probes.to_vec(), deviations))
}

/// Whether `e1` and `e2` give the same statistics on every probe.
pub fn preparations_equivalent(
    model: &OnticModel,
    e1: &str,
    e2: &str,
    probes: &[PreparationProbe],
) -> Result<EquivalenceReport<PreparationProbe>> {
    distributions_equivalent(model, model.preparation(e1)?, model.preparation(e2)?, probes)
}

/// Whether `m1` and `m2` have the same response statistics on every probe.
/// Outcomes correspond by label; update rules are not compared.
pub fn measurements_equivalent(
    model: &OnticModel,
    m1: &str,
    m2: &str,
    probes: &[MeasurementProbe],
) -> Result<EquivalenceReport<MeasurementProbe>> {
    let a = model.measurement(m1)?;
    let b = model.measurement(m2)?;
    let mut same_labels = a.outcomes().to_vec();
    let mut other = b.outcomes().to_vec();
    same_labels.sort();
    other.sort();
    if same_labels != other {
        return Err(Error::domain(format!(
            "`{m1}` and `{m2}` have no outcome correspondence"
        )));
    }
    // b's outcome index for each of a's outcomes
    let map: Vec<usize> = a
        .outcomes()
        .iter()
        .map(|o| b.outcome_index(o))
        .collect::<Result<_>>()?;
    let mut deviations = Vec::with_capacity(probes.len());
    for p in probes {
        let mu = model.preparation(&p.preparation)?;
        let w = transformed(model, mu.weights(), p.transformation.as_deref())?;
        let pa = a.outcome_weights(&w);
        let pb = b.outcome_weights(&w);
        let pb: Vec<f64> = map.iter().map(|&j| pb[j]).collect();
        deviations.push(crate::ontic::max_abs_diff(&pa, &pb));
    }
    Ok(settle(probes.to_vec(), deviations))
}

/// Whether `mu` yields outcome `q` with probability 1 (within tolerance) on
/// every measurement of `class`.
pub fn is_operational_eigenstate_of(
    model: &OnticModel,
    mu: &Distribution,
    class: &[String],
    q: &str,
) -> Result<bool> {
    for name in class {
        let m = model.measurement(name)?;
        let qi = m.outcome_index(q)?;
        if (m.outcome_weights(mu.weights())[qi] - 1.0).abs() > EPS_EQ {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Named-preparation form of [`is_operational_eigenstate_of`].
pub fn is_operational_eigenstate(model: &OnticModel, e: &str, class: &[String], q: &str) -> Result<bool> {
    is_operational_eigenstate_of(model, model.preparation(e)?, class, q)
}
