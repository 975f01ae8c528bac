use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ontic::OnticModel;
use crate::operational::{run_protocol, JointDistribution, ObservableAssignment, Protocol, Step};

/// Names making up a three-time experiment `E, M1, T1, M2, T2, M3`, plus the
/// ±1 values assigned to each measurement's outcomes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrangementSpec {
    pub preparation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t2: Option<String>,
    pub m1: String,
    pub m2: String,
    pub m3: String,
    pub values: ObservableAssignment,
}

impl ArrangementSpec {
    /// Arrangement whose measurements use the outcome labels `+1` / `-1`.
    pub fn plus_minus(preparation: &str, t1: Option<&str>, t2: Option<&str>, m: [&str; 3]) -> Self {
        Self {
            preparation: preparation.into(),
            t1: t1.map(Into::into),
            t2: t2.map(Into::into),
            m1: m[0].into(),
            m2: m[1].into(),
            m3: m[2].into(),
            values: ObservableAssignment::plus_minus(&m),
        }
    }
}

/// A validated arrangement. The three pairwise sub-experiments and the
/// all-performed run are all generated from this one value, so they share the
/// same preparation and transformations by construction.
#[derive(Debug, Clone)]
pub struct LgArrangement {
    model: Arc<OnticModel>,
    spec: ArrangementSpec,
    /// Outcome index carrying the value +1, per time slot.
    plus: [usize; 3],
}

impl LgArrangement {
    pub fn new(model: Arc<OnticModel>, spec: ArrangementSpec) -> Result<Self> {
        model.preparation(&spec.preparation)?;
        model.maybe_transformation(spec.t1.as_deref())?;
        model.maybe_transformation(spec.t2.as_deref())?;
        let mut plus = [0; 3];
        for (slot, name) in [&spec.m1, &spec.m2, &spec.m3].into_iter().enumerate() {
            let m = model.measurement(name)?;
            if m.outcomes().len() != 2 {
                return Err(Error::domain(format!(
                    "`{name}` has {} outcomes; Leggett-Garg arrangements need two",
                    m.outcomes().len()
                )));
            }
            let v = m
                .outcomes()
                .iter()
                .map(|o| spec.values.value(name, o))
                .collect::<Result<Vec<_>>>()?;
            plus[slot] = match (v[0], v[1]) {
                (a, b) if a == 1.0 && b == -1.0 => 0,
                (a, b) if a == -1.0 && b == 1.0 => 1,
                _ => {
                    return Err(Error::domain(format!(
                        "outcomes of `{name}` must carry the values +1 and -1, got {v:?}"
                    )))
                }
            };
        }
        Ok(Self { model, spec, plus })
    }

    pub fn model(&self) -> &OnticModel {
        &self.model
    }

    pub fn shared_model(&self) -> Arc<OnticModel> {
        Arc::clone(&self.model)
    }

    pub fn spec(&self) -> &ArrangementSpec {
        &self.spec
    }

    pub fn measurement_names(&self) -> [&str; 3] {
        [&self.spec.m1, &self.spec.m2, &self.spec.m3]
    }

    /// Outcome index of +1 for slot `i` (0-based).
    pub fn plus_index(&self, i: usize) -> usize {
        self.plus[i]
    }

    /// Assigned value of outcome index `q` at slot `i`.
    pub fn value(&self, i: usize, q: usize) -> f64 {
        if q == self.plus[i] {
            1.0
        } else {
            -1.0
        }
    }

    /// The three steps with the given perform mask.
    pub fn steps(&self, perform: [bool; 3]) -> Vec<Step> {
        let s = &self.spec;
        vec![
            Step::new(None, &s.m1, perform[0]),
            Step::new(s.t1.as_deref(), &s.m2, perform[1]),
            Step::new(s.t2.as_deref(), &s.m3, perform[2]),
        ]
    }

    pub fn protocol(&self, perform: [bool; 3]) -> Protocol {
        Protocol::new(&self.spec.preparation, self.steps(perform))
    }

    pub fn run(&self, perform: [bool; 3]) -> Result<JointDistribution> {
        run_protocol(&self.model, &self.protocol(perform))
    }
}
