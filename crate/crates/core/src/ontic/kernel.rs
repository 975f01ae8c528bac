use crate::error::{Error, Result};
use crate::ontic::distribution::Distribution;

/// One row of a stochastic map.
///
/// Large models (the sphere grid) have thousands of rows that are either
/// point masses or copies of a handful of distributions, so rows refer into a
/// shared pool instead of owning a dense vector each.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelRow {
    /// All mass moves to this state.
    Point(usize),
    /// The row equals pool distribution `k`.
    Shared(usize),
}

/// Pushes `weight` through `row`, accumulating point masses into `out` and
/// pool coefficients into `coeffs`.
#[inline]
pub(crate) fn route(row: KernelRow, weight: f64, out: &mut [f64], coeffs: &mut [f64]) {
    match row {
        KernelRow::Point(t) => out[t] += weight,
        KernelRow::Shared(k) => coeffs[k] += weight,
    }
}

pub(crate) fn flush_pool(pool: &[Distribution], coeffs: &[f64], out: &mut [f64]) {
    for (c, d) in coeffs.iter().zip(pool) {
        if *c != 0.0 {
            for (o, w) in out.iter_mut().zip(d.weights()) {
                *o += c * w;
            }
        }
    }
}

fn check_row(row: KernelRow, dim: usize, pool_len: usize) -> Result<()> {
    match row {
        KernelRow::Point(t) if t >= dim => Err(Error::domain(format!(
            "kernel row points at state {t} outside a {dim}-state space"
        ))),
        KernelRow::Shared(k) if k >= pool_len => Err(Error::domain(format!(
            "kernel row refers to pool entry {k}, pool has {pool_len}"
        ))),
        _ => Ok(()),
    }
}

fn check_pool(pool: &[Distribution], dim: usize) -> Result<()> {
    for d in pool {
        if d.dim() != dim {
            return Err(Error::StateSpaceMismatch {
                expected: dim,
                found: d.dim(),
            });
        }
    }
    Ok(())
}

/// Transformation kernel `τ_T(λ|λ₀)`: one row per source state.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformationKernel {
    dim: usize,
    rows: Vec<KernelRow>,
    pool: Vec<Distribution>,
}

impl TransformationKernel {
    pub fn new(dim: usize, rows: Vec<KernelRow>, pool: Vec<Distribution>) -> Result<Self> {
        if rows.len() != dim {
            return Err(Error::StateSpaceMismatch {
                expected: dim,
                found: rows.len(),
            });
        }
        check_pool(&pool, dim)?;
        for &r in &rows {
            check_row(r, dim, pool.len())?;
        }
        Ok(Self { dim, rows, pool })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            rows: (0..dim).map(KernelRow::Point).collect(),
            pool: Vec::new(),
        }
    }

    /// Deterministic map `λ₀ ↦ targets[λ₀]`.
    pub fn deterministic(targets: Vec<usize>) -> Result<Self> {
        let dim = targets.len();
        Self::new(dim, targets.into_iter().map(KernelRow::Point).collect(), vec![])
    }

    /// From explicit rows; exact point-mass rows become [`KernelRow::Point`].
    pub fn from_rows(rows: Vec<Distribution>) -> Result<Self> {
        let dim = rows.len();
        let mut pool = Vec::new();
        let mut out = Vec::with_capacity(dim);
        for row in rows {
            match row.as_point() {
                Some(t) => out.push(KernelRow::Point(t)),
                None => {
                    out.push(KernelRow::Shared(pool.len()));
                    pool.push(row);
                }
            }
        }
        Self::new(dim, out, pool)
    }

    /// From a row-stochastic matrix `m[λ₀][λ]`.
    pub fn from_matrix(m: Vec<Vec<f64>>) -> Result<Self> {
        let rows = m
            .into_iter()
            .enumerate()
            .map(|(i, r)| Distribution::named(r, &format!("kernel row {i}")))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[KernelRow] {
        &self.rows
    }

    pub fn pool(&self) -> &[Distribution] {
        &self.pool
    }

    pub fn row(&self, from: usize) -> Distribution {
        match self.rows[from] {
            KernelRow::Point(t) => Distribution::point(self.dim, t),
            KernelRow::Shared(k) => self.pool[k].clone(),
        }
    }

    pub fn prob(&self, from: usize, to: usize) -> f64 {
        match self.rows[from] {
            KernelRow::Point(t) => f64::from(u8::from(t == to)),
            KernelRow::Shared(k) => self.pool[k].weight(to),
        }
    }

    /// `out += Σ_λ₀ w(λ₀) τ(·|λ₀)`.
    pub(crate) fn push_into(&self, weights: &[f64], out: &mut [f64]) {
        let mut coeffs = vec![0.0; self.pool.len()];
        for (from, &w) in weights.iter().enumerate() {
            if w != 0.0 {
                route(self.rows[from], w, out, &mut coeffs);
            }
        }
        flush_pool(&self.pool, &coeffs, out);
    }

    /// Image of an (unnormalized) weight vector.
    pub fn push_forward(&self, weights: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.push_into(weights, &mut out);
        out
    }

    /// `τ ∘ self`: first this kernel, then `next`.
    pub fn then(&self, next: &TransformationKernel) -> Result<TransformationKernel> {
        if next.dim != self.dim {
            return Err(Error::StateSpaceMismatch {
                expected: self.dim,
                found: next.dim,
            });
        }
        let rows = (0..self.dim)
            .map(|from| {
                let mid = self.row(from);
                Distribution::new(next.push_forward(mid.weights()))
            })
            .collect::<Result<Vec<_>>>()?;
        TransformationKernel::from_rows(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_fixes_everything() {
        let k = TransformationKernel::identity(3);
        assert_eq!(k.push_forward(&[0.2, 0.3, 0.5]), vec![0.2, 0.3, 0.5]);
    }

    #[test]
    fn matrix_rows_are_validated() {
        assert!(TransformationKernel::from_matrix(vec![vec![0.5, 0.4], vec![0.0, 1.0]]).is_err());
        let k = TransformationKernel::from_matrix(vec![vec![0.0, 1.0], vec![0.5, 0.5]]).unwrap();
        assert_eq!(k.rows()[0], KernelRow::Point(1));
        assert_eq!(k.rows()[1], KernelRow::Shared(0));
        assert_eq!(k.prob(1, 0), 0.5);
    }

    #[test]
    fn out_of_range_rows_are_rejected() {
        assert!(TransformationKernel::new(2, vec![KernelRow::Point(0), KernelRow::Point(2)], vec![]).is_err());
        assert!(TransformationKernel::new(1, vec![KernelRow::Shared(0)], vec![]).is_err());
    }
}
