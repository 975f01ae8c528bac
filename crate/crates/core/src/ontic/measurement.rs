use crate::error::{Error, Result};
use crate::ontic::distribution::{normalize_row, Distribution};
use crate::ontic::kernel::{flush_pool, route, KernelRow};
use crate::tolerance::EPS_SUPP;

/// Response function `ξ_M(Q=q|λ)`, stored row-major as `[λ][q]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseFunction {
    outcomes: Vec<String>,
    table: Vec<f64>,
}

impl ResponseFunction {
    pub fn new<S: Into<String>>(outcomes: Vec<S>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let outcomes: Vec<String> = outcomes.into_iter().map(Into::into).collect();
        if outcomes.is_empty() {
            return Err(Error::domain("a response function needs at least one outcome"));
        }
        for (i, o) in outcomes.iter().enumerate() {
            if outcomes[..i].contains(o) {
                return Err(Error::DuplicateName {
                    kind: "outcome",
                    name: o.clone(),
                });
            }
        }
        if rows.is_empty() {
            return Err(Error::domain("a response function needs at least one state"));
        }
        let k = outcomes.len();
        let mut table = Vec::with_capacity(rows.len() * k);
        for (state, mut row) in rows.into_iter().enumerate() {
            if row.len() != k {
                return Err(Error::domain(format!(
                    "response row for state {state} has {} entries, expected {k}",
                    row.len()
                )));
            }
            normalize_row(&mut row, &|| format!("response row for state {state}"))?;
            table.extend(row);
        }
        Ok(Self { outcomes, table })
    }

    /// Deterministic response: state `λ` yields outcome `values[λ]`.
    pub fn deterministic<S: Into<String>>(outcomes: Vec<S>, values: &[usize]) -> Result<Self> {
        let k = outcomes.len();
        let rows = values
            .iter()
            .map(|&v| {
                let mut r = vec![0.0; k];
                if v < k {
                    r[v] = 1.0;
                }
                r
            })
            .collect();
        Self::new(outcomes, rows)
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn num_outcomes(&self) -> usize {
        self.outcomes.len()
    }

    pub fn dim(&self) -> usize {
        self.table.len() / self.outcomes.len()
    }

    pub fn outcome_index(&self, label: &str) -> Option<usize> {
        self.outcomes.iter().position(|o| o == label)
    }

    #[inline]
    pub fn prob(&self, state: usize, outcome: usize) -> f64 {
        self.table[state * self.outcomes.len() + outcome]
    }

    pub fn row(&self, state: usize) -> &[f64] {
        let k = self.outcomes.len();
        &self.table[state * k..(state + 1) * k]
    }

    /// All entries of the row are 0 or 1 up to `ε_supp`.
    pub fn is_deterministic(&self, state: usize) -> bool {
        self.row(state)
            .iter()
            .all(|&p| p <= EPS_SUPP || p >= 1.0 - EPS_SUPP)
    }

    /// The outcome returned with certainty by `state`, if any.
    pub fn deterministic_value(&self, state: usize) -> Option<usize> {
        if !self.is_deterministic(state) {
            return None;
        }
        self.row(state).iter().position(|&p| p >= 1.0 - EPS_SUPP)
    }
}

/// Measurement update `τ_M(λ|Q=q,λ₀)`. Rows are indexed `[q][λ₀]`; a row may be
/// absent only where the outcome has probability zero.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementUpdate {
    dim: usize,
    rows: Vec<Vec<Option<KernelRow>>>,
    pool: Vec<Distribution>,
}

impl MeasurementUpdate {
    pub fn new(
        dim: usize,
        rows: Vec<Vec<Option<KernelRow>>>,
        pool: Vec<Distribution>,
    ) -> Result<Self> {
        for d in &pool {
            if d.dim() != dim {
                return Err(Error::StateSpaceMismatch {
                    expected: dim,
                    found: d.dim(),
                });
            }
        }
        for per_outcome in &rows {
            if per_outcome.len() != dim {
                return Err(Error::StateSpaceMismatch {
                    expected: dim,
                    found: per_outcome.len(),
                });
            }
            for r in per_outcome.iter().flatten() {
                match *r {
                    KernelRow::Point(t) if t >= dim => {
                        return Err(Error::domain(format!("update row points at state {t}")))
                    }
                    KernelRow::Shared(k) if k >= pool.len() => {
                        return Err(Error::domain(format!("update row refers to pool entry {k}")))
                    }
                    _ => {}
                }
            }
        }
        Ok(Self { dim, rows, pool })
    }

    /// Ontically noninvasive update: every row is `δ_{λ,λ₀}`.
    pub fn identity(dim: usize, num_outcomes: usize) -> Self {
        let row: Vec<Option<KernelRow>> = (0..dim).map(|i| Some(KernelRow::Point(i))).collect();
        Self {
            dim,
            rows: vec![row; num_outcomes],
            pool: vec![],
        }
    }

    /// Outcome `q` sends every state to `targets[q]`.
    pub fn collapse(dim: usize, targets: &[usize]) -> Result<Self> {
        let rows = targets
            .iter()
            .map(|&t| vec![Some(KernelRow::Point(t)); dim])
            .collect();
        Self::new(dim, rows, vec![])
    }

    /// Outcome `q` re-samples from `posteriors[q]` regardless of the prior state.
    pub fn resample(dim: usize, posteriors: Vec<Distribution>) -> Result<Self> {
        let rows = (0..posteriors.len())
            .map(|q| vec![Some(KernelRow::Shared(q)); dim])
            .collect();
        Self::new(dim, rows, posteriors)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_outcomes(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Option<KernelRow>>] {
        &self.rows
    }

    pub fn pool(&self) -> &[Distribution] {
        &self.pool
    }

    pub fn row(&self, outcome: usize, from: usize) -> Option<Distribution> {
        self.rows[outcome][from].map(|r| match r {
            KernelRow::Point(t) => Distribution::point(self.dim, t),
            KernelRow::Shared(k) => self.pool[k].clone(),
        })
    }

    /// Total-variation distance of row `(q, λ₀)` from the point mass at `λ₀`.
    pub fn deviation_from_identity(&self, outcome: usize, from: usize) -> Option<f64> {
        self.rows[outcome][from].map(|r| match r {
            KernelRow::Point(t) => f64::from(u8::from(t != from)),
            KernelRow::Shared(k) => 1.0 - self.pool[k].weight(from),
        })
    }
}

/// A measurement procedure: response function plus update rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    label: String,
    response: ResponseFunction,
    update: MeasurementUpdate,
}

impl Measurement {
    pub fn new(
        label: impl Into<String>,
        response: ResponseFunction,
        update: MeasurementUpdate,
    ) -> Result<Self> {
        let label = label.into();
        if response.dim() != update.dim() {
            return Err(Error::StateSpaceMismatch {
                expected: response.dim(),
                found: update.dim(),
            });
        }
        if response.num_outcomes() != update.num_outcomes() {
            return Err(Error::domain(format!(
                "measurement `{label}`: response has {} outcomes, update has {}",
                response.num_outcomes(),
                update.num_outcomes()
            )));
        }
        for q in 0..response.num_outcomes() {
            for s in 0..response.dim() {
                if response.prob(s, q) > 0.0 && update.rows[q][s].is_none() {
                    return Err(Error::domain(format!(
                        "measurement `{label}`: missing update row for outcome `{}` from state {s}",
                        response.outcomes()[q]
                    )));
                }
            }
        }
        Ok(Self {
            label,
            response,
            update,
        })
    }

    /// Deterministic readout of `values[λ]` that leaves the state untouched.
    pub fn noninvasive_readout<S: Into<String>>(
        label: impl Into<String>,
        outcomes: Vec<S>,
        values: &[usize],
    ) -> Result<Self> {
        let response = ResponseFunction::deterministic(outcomes, values)?;
        let update = MeasurementUpdate::identity(values.len(), response.num_outcomes());
        Self::new(label, response, update)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn response(&self) -> &ResponseFunction {
        &self.response
    }

    pub fn update(&self) -> &MeasurementUpdate {
        &self.update
    }

    pub fn outcomes(&self) -> &[String] {
        self.response.outcomes()
    }

    pub fn outcome_index(&self, label: &str) -> Result<usize> {
        self.response
            .outcome_index(label)
            .ok_or_else(|| Error::UnknownOutcome {
                measurement: self.label.clone(),
                outcome: label.to_string(),
            })
    }

    pub fn dim(&self) -> usize {
        self.response.dim()
    }

    /// `out += Σ_λ₀ w(λ₀) ξ(q|λ₀) τ(·|q,λ₀)`: the unnormalized post-measurement
    /// weights on the branch where `q` was observed.
    pub(crate) fn branch_into(&self, weights: &[f64], outcome: usize, out: &mut [f64]) {
        let rows = &self.update.rows[outcome];
        let mut coeffs = vec![0.0; self.update.pool.len()];
        for (from, &w) in weights.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            let p = self.response.prob(from, outcome);
            if p == 0.0 {
                continue;
            }
            // Construction guarantees a row wherever p > 0.
            let row = rows[from].expect("update row present where response is positive");
            route(row, w * p, out, &mut coeffs);
        }
        flush_pool(&self.update.pool, &coeffs, out);
    }

    pub(crate) fn branch(&self, weights: &[f64], outcome: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        self.branch_into(weights, outcome, &mut out);
        out
    }

    /// Outcome probabilities `Σ_λ w(λ) ξ(q|λ)` for each `q`.
    pub fn outcome_weights(&self, weights: &[f64]) -> Vec<f64> {
        let k = self.response.num_outcomes();
        let mut out = vec![0.0; k];
        for (s, &w) in weights.iter().enumerate() {
            if w != 0.0 {
                for (q, o) in out.iter_mut().enumerate() {
                    *o += w * self.response.prob(s, q);
                }
            }
        }
        out
    }

    /// Post-measurement distribution with the outcome ignored.
    pub fn nonselective(&self, weights: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        for q in 0..self.response.num_outcomes() {
            self.branch_into(weights, q, &mut out);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_rows() {
        let r = ResponseFunction::new(vec!["+1", "-1"], vec![vec![1.0, 0.0], vec![0.5, 0.5]]).unwrap();
        assert!(r.is_deterministic(0));
        assert_eq!(r.deterministic_value(0), Some(0));
        assert!(!r.is_deterministic(1));
        assert_eq!(r.deterministic_value(1), None);
    }

    #[test]
    fn response_rows_must_normalize() {
        assert!(ResponseFunction::new(vec!["a", "b"], vec![vec![0.5, 0.6]]).is_err());
        assert!(ResponseFunction::new(vec!["a", "a"], vec![vec![0.5, 0.5]]).is_err());
    }

    #[test]
    fn missing_rows_allowed_only_for_impossible_outcomes() {
        let resp = ResponseFunction::new(vec!["+1", "-1"], vec![vec![1.0, 0.0]]).unwrap();
        let ok = MeasurementUpdate::new(1, vec![vec![Some(KernelRow::Point(0))], vec![None]], vec![]).unwrap();
        assert!(Measurement::new("m", resp.clone(), ok).is_ok());
        let bad = MeasurementUpdate::new(1, vec![vec![None], vec![None]], vec![]).unwrap();
        assert!(Measurement::new("m", resp, bad).is_err());
    }

    #[test]
    fn nonselective_identity_update_preserves_weights() {
        let m = Measurement::new(
            "m",
            ResponseFunction::new(vec!["+1", "-1"], vec![vec![0.3, 0.7], vec![0.9, 0.1]]).unwrap(),
            MeasurementUpdate::identity(2, 2),
        )
        .unwrap();
        let out = m.nonselective(&[0.25, 0.75]);
        assert!((out[0] - 0.25).abs() < 1e-15 && (out[1] - 0.75).abs() < 1e-15);
    }
}
