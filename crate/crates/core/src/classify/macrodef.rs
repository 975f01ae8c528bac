use serde::Serialize;

use crate::classify::QuantityClass;
use crate::error::Result;
use crate::ontic::OnticModel;

/// A state where the class fails to be value-definite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MacrodefiniteWitness {
    pub state: String,
    pub measurement: String,
    /// Response probabilities over the class outcomes.
    pub response: Vec<f64>,
    /// `"indeterminate"` or `"contextual"`.
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MacrodefiniteReport {
    pub macrodefinite: bool,
    pub witnesses: Vec<MacrodefiniteWitness>,
}

/// For each state, the class value it determinately carries, if any.
pub(crate) fn state_values(model: &OnticModel, class: &QuantityClass) -> Result<Vec<Option<usize>>> {
    let mut values = vec![None; model.dim()];
    let report = check(model, class, Some(&mut values))?;
    if !report.macrodefinite {
        values.iter_mut().for_each(|v| *v = None);
    }
    Ok(values)
}

/// Every ontic state must give a {0,1} response that is the same for all
/// members of the class.
pub fn check_macrodefinite(model: &OnticModel, class: &QuantityClass) -> Result<MacrodefiniteReport> {
    check(model, class, None)
}

fn check(
    model: &OnticModel,
    class: &QuantityClass,
    mut values: Option<&mut Vec<Option<usize>>>,
) -> Result<MacrodefiniteReport> {
    let mut witnesses = Vec::new();
    let members = class
        .measurements()
        .iter()
        .map(|n| model.measurement(n))
        .collect::<Result<Vec<_>>>()?;
    // Outcome index in each member for each class outcome.
    let maps = members
        .iter()
        .map(|m| class.outcomes().iter().map(|o| m.outcome_index(o)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    for s in 0..model.dim() {
        let mut seen: Option<usize> = None;
        for (m, map) in members.iter().zip(&maps) {
            let response: Vec<f64> = map.iter().map(|&q| m.response().prob(s, q)).collect();
            let value = m
                .response()
                .deterministic_value(s)
                .and_then(|q| map.iter().position(|&x| x == q));
            match (value, seen) {
                (None, _) => witnesses.push(MacrodefiniteWitness {
                    state: model.space().label(s).to_string(),
                    measurement: m.label().to_string(),
                    response,
                    reason: "indeterminate",
                }),
                (Some(v), Some(prev)) if v != prev => witnesses.push(MacrodefiniteWitness {
                    state: model.space().label(s).to_string(),
                    measurement: m.label().to_string(),
                    response,
                    reason: "contextual",
                }),
                (Some(v), _) => seen = Some(v),
            }
        }
        if let Some(vals) = values.as_deref_mut() {
            vals[s] = seen;
        }
    }
    Ok(MacrodefiniteReport {
        macrodefinite: witnesses.is_empty(),
        witnesses,
    })
}
