use crate::error::{Error, Result};
use crate::tolerance::{EPS_NORM, EPS_SUPP};

/// Probability vector over an ontic state space (dense, indexed by state).
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    weights: Vec<f64>,
}

/// Validates a probability row and rescales it to unit sum.
///
/// Rows whose sum is already within summation round-off of 1 are left
/// bit-for-bit untouched, which makes validation idempotent: a row that went
/// through here once comes back unchanged.
pub(crate) fn normalize_row(weights: &mut [f64], what: &dyn Fn() -> String) -> Result<()> {
    for &w in weights.iter() {
        if !w.is_finite() || w < 0.0 {
            return Err(Error::InvalidWeight {
                what: what(),
                value: w,
            });
        }
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > EPS_NORM {
        return Err(Error::Normalization { what: what(), sum });
    }
    let slack = 2.0 * (weights.len() as f64 + 1.0) * f64::EPSILON;
    if (sum - 1.0).abs() > slack {
        for w in weights.iter_mut() {
            *w /= sum;
        }
    }
    Ok(())
}

impl Distribution {
    pub fn new(mut weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::domain("distribution over an empty state space"));
        }
        normalize_row(&mut weights, &|| "distribution".to_string())?;
        Ok(Self { weights })
    }

    pub(crate) fn named(mut weights: Vec<f64>, what: &str) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::domain(format!("{what}: empty state space")));
        }
        normalize_row(&mut weights, &|| what.to_string())?;
        Ok(Self { weights })
    }

    /// Point mass on state `at`.
    pub fn point(dim: usize, at: usize) -> Self {
        assert!(at < dim, "point mass outside the state space");
        let mut weights = vec![0.0; dim];
        weights[at] = 1.0;
        Self { weights }
    }

    pub fn uniform(dim: usize) -> Self {
        assert!(dim > 0);
        Self {
            weights: vec![1.0 / dim as f64; dim],
        }
    }

    /// Convex combination `Σ c_i μ_i`; coefficients must be a probability vector.
    pub fn mixture(parts: &[(f64, &Distribution)]) -> Result<Self> {
        let dim = parts
            .first()
            .map(|(_, d)| d.dim())
            .ok_or_else(|| Error::domain("empty mixture"))?;
        let mut coeffs: Vec<f64> = parts.iter().map(|(c, _)| *c).collect();
        normalize_row(&mut coeffs, &|| "mixture coefficients".to_string())?;
        let mut weights = vec![0.0; dim];
        for (c, (_, d)) in coeffs.iter().zip(parts) {
            if d.dim() != dim {
                return Err(Error::StateSpaceMismatch {
                    expected: dim,
                    found: d.dim(),
                });
            }
            for (w, x) in weights.iter_mut().zip(&d.weights) {
                *w += c * x;
            }
        }
        Distribution::new(weights)
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn into_weights(self) -> Vec<f64> {
        self.weights
    }

    /// `{λ : μ(λ) > ε_supp}`, in state order.
    pub fn support(&self) -> Vec<usize> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > EPS_SUPP)
            .map(|(i, _)| i)
            .collect()
    }

    /// The state carrying all the mass, if this is exactly a point mass.
    pub fn as_point(&self) -> Option<usize> {
        let mut found = None;
        for (i, &w) in self.weights.iter().enumerate() {
            if w == 1.0 && found.is_none() {
                found = Some(i);
            } else if w != 0.0 {
                return None;
            }
        }
        found
    }

    /// Total-variation distance `½ Σ |μ − ν|`.
    pub fn total_variation(&self, other: &Distribution) -> f64 {
        total_variation(&self.weights, &other.weights)
    }
}

pub(crate) fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

pub(crate) fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
