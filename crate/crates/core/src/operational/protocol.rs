use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ontic::{Distribution, Measurement, OnticModel, TransformationKernel};
use crate::operational::joint::{Axis, JointDistribution};

fn performed() -> bool {
    true
}

/// One stage of a sequential experiment: an optional transformation followed
/// by a measurement that is either performed or skipped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transformation: Option<String>,
    pub measurement: String,
    #[serde(default = "performed")]
    pub perform: bool,
}

impl Step {
    pub fn new(transformation: Option<&str>, measurement: &str, perform: bool) -> Self {
        Self {
            transformation: transformation.map(str::to_string),
            measurement: measurement.to_string(),
            perform,
        }
    }

    pub fn measure(transformation: Option<&str>, measurement: &str) -> Self {
        Self::new(transformation, measurement, true)
    }
}

/// A preparation followed by an ordered list of steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Protocol {
    pub preparation: String,
    pub steps: Vec<Step>,
}

impl Protocol {
    pub fn new(preparation: &str, steps: Vec<Step>) -> Self {
        Self {
            preparation: preparation.to_string(),
            steps,
        }
    }

    /// Checks that every name resolves and at least one measurement is performed.
    pub fn validate(&self, model: &OnticModel) -> Result<()> {
        model.preparation(&self.preparation)?;
        for s in &self.steps {
            model.maybe_transformation(s.transformation.as_deref())?;
            model.measurement(&s.measurement)?;
        }
        if !self.steps.iter().any(|s| s.perform) {
            return Err(Error::domain("a protocol needs at least one performed measurement"));
        }
        Ok(())
    }
}

pub(crate) enum Stage<'a> {
    Transform(&'a TransformationKernel),
    Measure(&'a Measurement),
}

/// Exact branch enumeration over an explicit stage list.
///
/// Branches are kept in lexicographic outcome order (first measurement most
/// significant, outcomes in declared order); dead branches are not propagated.
pub(crate) fn enumerate(initial: &[f64], stages: &[Stage<'_>]) -> Vec<f64> {
    let mut branches: Vec<Option<Vec<f64>>> = vec![Some(initial.to_vec())];
    for stage in stages {
        match stage {
            Stage::Transform(t) => {
                for b in branches.iter_mut().flatten() {
                    *b = t.push_forward(b);
                }
            }
            Stage::Measure(m) => {
                let k = m.outcomes().len();
                let mut next = Vec::with_capacity(branches.len() * k);
                for b in &branches {
                    match b {
                        Some(w) => {
                            for q in 0..k {
                                let out = m.branch(w, q);
                                let alive = out.iter().any(|&x| x != 0.0);
                                next.push(alive.then_some(out));
                            }
                        }
                        None => next.extend((0..k).map(|_| None)),
                    }
                }
                branches = next;
            }
        }
    }
    branches
        .into_iter()
        .map(|b| b.map_or(0.0, |w| w.iter().sum()))
        .collect()
}

/// Runs `p` on `model` and returns the joint distribution over the outcomes of
/// the performed measurements.
///
/// A skipped measurement contributes neither its response nor its update;
/// the step's transformation is still applied.
pub fn run_protocol(model: &OnticModel, p: &Protocol) -> Result<JointDistribution> {
    p.validate(model)?;
    let mu = model.preparation(&p.preparation)?;
    run_from(model, mu, &p.steps)
}

/// Same as [`run_protocol`] but starting from an explicit distribution.
pub fn run_from(model: &OnticModel, mu: &Distribution, steps: &[Step]) -> Result<JointDistribution> {
    if mu.dim() != model.dim() {
        return Err(Error::StateSpaceMismatch {
            expected: model.dim(),
            found: mu.dim(),
        });
    }
    let mut stages = Vec::with_capacity(2 * steps.len());
    let mut axes = Vec::new();
    for (i, s) in steps.iter().enumerate() {
        if let Some(t) = model.maybe_transformation(s.transformation.as_deref())? {
            stages.push(Stage::Transform(t));
        }
        let m = model.measurement(&s.measurement)?;
        if s.perform {
            stages.push(Stage::Measure(m));
            axes.push(Axis {
                step: i,
                measurement: s.measurement.clone(),
                outcomes: m.outcomes().to_vec(),
            });
        }
    }
    if axes.is_empty() {
        return Err(Error::domain("a protocol needs at least one performed measurement"));
    }
    let probs = enumerate(mu.weights(), &stages);
    JointDistribution::from_parts(axes, probs)
}
