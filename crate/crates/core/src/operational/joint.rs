use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ontic::OnticModel;
use crate::tolerance::EPS_NORM;

/// One performed measurement of a protocol run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Axis {
    /// Position of the step in the protocol.
    pub step: usize,
    pub measurement: String,
    pub outcomes: Vec<String>,
}

/// Joint probabilities over outcome tuples, stored densely in lexicographic
/// order (first axis most significant). Zero-probability tuples are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    axes: Vec<Axis>,
    probs: Vec<f64>,
}

impl JointDistribution {
    pub fn from_parts(axes: Vec<Axis>, probs: Vec<f64>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::domain("joint distribution without axes"));
        }
        let size: usize = axes.iter().map(|a| a.outcomes.len()).product();
        if size != probs.len() {
            return Err(Error::domain(format!(
                "joint table has {} entries, axes describe {size}",
                probs.len()
            )));
        }
        if let Some(&p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidWeight {
                what: "joint distribution".into(),
                value: p,
            });
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > EPS_NORM {
            return Err(Error::Normalization {
                what: "joint distribution".into(),
                sum,
            });
        }
        Ok(Self { axes, probs })
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.axes.len()];
        for i in (0..self.axes.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.axes[i + 1].outcomes.len();
        }
        strides
    }

    fn decode(&self, mut flat: usize, strides: &[usize]) -> Vec<usize> {
        strides
            .iter()
            .map(|s| {
                let i = flat / s;
                flat %= s;
                i
            })
            .collect()
    }

    /// Probability of an outcome tuple given as outcome indices.
    pub fn get(&self, idx: &[usize]) -> f64 {
        assert_eq!(idx.len(), self.axes.len());
        let flat: usize = idx.iter().zip(self.strides()).map(|(i, s)| i * s).sum();
        self.probs[flat]
    }

    /// Probability of an outcome tuple given by labels.
    pub fn prob(&self, labels: &[&str]) -> Result<f64> {
        if labels.len() != self.axes.len() {
            return Err(Error::domain(format!(
                "expected {} outcome labels, got {}",
                self.axes.len(),
                labels.len()
            )));
        }
        let idx = labels
            .iter()
            .zip(&self.axes)
            .map(|(l, a)| {
                a.outcomes
                    .iter()
                    .position(|o| o == l)
                    .ok_or_else(|| Error::UnknownOutcome {
                        measurement: a.measurement.clone(),
                        outcome: l.to_string(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.get(&idx))
    }

    /// `(outcome indices, probability)` in table order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        let strides = self.strides();
        self.probs
            .iter()
            .enumerate()
            .map(move |(flat, &p)| (self.decode(flat, &strides), p))
    }

    /// Sums out every axis not listed in `keep` (indices into [`Self::axes`]).
    /// Kept axes retain their time order.
    pub fn marginalize(&self, keep: &[usize]) -> Result<JointDistribution> {
        if keep.is_empty() {
            return Err(Error::domain("marginal over an empty set of axes"));
        }
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&k| k >= self.axes.len()) {
            return Err(Error::domain(format!("no axis {bad} in a {}-axis joint", self.axes.len())));
        }
        let axes: Vec<Axis> = keep.iter().map(|&k| self.axes[k].clone()).collect();
        let size: usize = axes.iter().map(|a| a.outcomes.len()).product();
        let mut out_strides = vec![1; axes.len()];
        for i in (0..axes.len().saturating_sub(1)).rev() {
            out_strides[i] = out_strides[i + 1] * axes[i + 1].outcomes.len();
        }
        let mut probs = vec![0.0; size];
        for (idx, p) in self.entries() {
            let flat: usize = keep.iter().zip(&out_strides).map(|(&k, s)| idx[k] * s).sum();
            probs[flat] += p;
        }
        Ok(JointDistribution { axes, probs })
    }

    /// `Σ P(tuple) Π_{a ∈ axes} value(a, q_a)`.
    pub fn expectation(&self, assignment: &ObservableAssignment, axes: &[usize]) -> Result<f64> {
        let mut tables = Vec::with_capacity(axes.len());
        for &a in axes {
            let axis = self
                .axes
                .get(a)
                .ok_or_else(|| Error::domain(format!("no axis {a} in the joint")))?;
            let values = axis
                .outcomes
                .iter()
                .map(|o| assignment.value(&axis.measurement, o))
                .collect::<Result<Vec<_>>>()?;
            tables.push((a, values));
        }
        Ok(self
            .entries()
            .map(|(idx, p)| p * tables.iter().map(|(a, v)| v[idx[*a]]).product::<f64>())
            .sum())
    }
}

/// Real values assigned to measurement outcomes, per measurement name.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObservableAssignment {
    values: IndexMap<String, IndexMap<String, f64>>,
}

impl ObservableAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert<S: Into<String>>(&mut self, measurement: &str, values: impl IntoIterator<Item = (S, f64)>) {
        self.values.insert(
            measurement.to_string(),
            values.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        );
    }

    pub fn with<S: Into<String>>(mut self, measurement: &str, values: impl IntoIterator<Item = (S, f64)>) -> Self {
        self.insert(measurement, values);
        self
    }

    /// Outcomes labelled `"+1"` and `"-1"` carry the values ±1.
    pub fn plus_minus(measurements: &[&str]) -> Self {
        let mut a = Self::new();
        for m in measurements {
            a.insert(m, [("+1", 1.0), ("-1", -1.0)]);
        }
        a
    }

    pub fn measurements(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }

    pub fn table(&self, measurement: &str) -> Option<&IndexMap<String, f64>> {
        self.values.get(measurement)
    }

    pub fn value(&self, measurement: &str, outcome: &str) -> Result<f64> {
        self.values
            .get(measurement)
            .and_then(|t| t.get(outcome))
            .copied()
            .ok_or_else(|| {
                Error::domain(format!(
                    "no value assigned to outcome `{outcome}` of `{measurement}`"
                ))
            })
    }

    /// Every outcome of each assigned measurement is mapped to a finite value.
    pub fn validate(&self, model: &OnticModel) -> Result<()> {
        for (name, table) in &self.values {
            let m = model.measurement(name)?;
            for o in m.outcomes() {
                match table.get(o) {
                    Some(v) if v.is_finite() => {}
                    Some(v) => {
                        return Err(Error::domain(format!(
                            "non-finite value {v} for outcome `{o}` of `{name}`"
                        )))
                    }
                    None => {
                        return Err(Error::domain(format!(
                            "outcome `{o}` of `{name}` has no assigned value"
                        )))
                    }
                }
            }
            for k in table.keys() {
                m.outcome_index(k)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axis(step: usize, name: &str) -> Axis {
        Axis {
            step,
            measurement: name.into(),
            outcomes: vec!["+1".into(), "-1".into()],
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(JointDistribution::from_parts(vec![axis(0, "a")], vec![0.5, 0.6]).is_err());
        assert!(JointDistribution::from_parts(vec![axis(0, "a")], vec![1.0]).is_err());
        assert!(JointDistribution::from_parts(vec![], vec![]).is_err());
    }

    #[test]
    fn marginal_of_uniform_pair() {
        let j = JointDistribution::from_parts(vec![axis(0, "a"), axis(1, "b")], vec![0.25; 4]).unwrap();
        let m = j.marginalize(&[1]).unwrap();
        assert_eq!(m.probs(), &[0.5, 0.5]);
        assert_eq!(m.axes()[0].measurement, "b");
        assert_eq!(j.marginalize(&[0, 1]).unwrap(), j);
        assert!(j.marginalize(&[]).is_err());
        assert!(j.marginalize(&[2]).is_err());
    }

    #[test]
    fn hand_built_three_axis_marginal() {
        // Fixed 8-entry table; P(Q1=+1) = 0.05 + 0.10 + 0.15 + 0.20.
        let probs = vec![0.05, 0.10, 0.15, 0.20, 0.02, 0.08, 0.12, 0.28];
        let j = JointDistribution::from_parts(vec![axis(0, "a"), axis(1, "b"), axis(2, "c")], probs).unwrap();
        let m = j.marginalize(&[0]).unwrap();
        assert!((m.probs()[0] - 0.50).abs() < 1e-15);
        assert!((m.probs()[1] - 0.50).abs() < 1e-15);
        // P(Q1, Q3): (+,+) = 0.05 + 0.15, (-,-) = 0.08 + 0.28.
        let m13 = j.marginalize(&[2, 0]).unwrap();
        assert!((m13.prob(&["+1", "+1"]).unwrap() - 0.20).abs() < 1e-15);
        assert!((m13.prob(&["-1", "-1"]).unwrap() - 0.36).abs() < 1e-15);
    }

    #[test]
    fn expectation_of_constant_and_product() {
        let probs = vec![0.4, 0.1, 0.2, 0.3];
        let j = JointDistribution::from_parts(vec![axis(0, "a"), axis(1, "b")], probs).unwrap();
        let constant = ObservableAssignment::new()
            .with("a", [("+1", 1.0), ("-1", 1.0)])
            .with("b", [("+1", 1.0), ("-1", 1.0)]);
        assert!((j.expectation(&constant, &[0, 1]).unwrap() - 1.0).abs() < 1e-15);
        let pm = ObservableAssignment::plus_minus(&["a", "b"]);
        assert!((j.expectation(&pm, &[0, 1]).unwrap() - 0.4).abs() < 1e-15);
        assert!(j.expectation(&ObservableAssignment::new(), &[0]).is_err());
    }
}
