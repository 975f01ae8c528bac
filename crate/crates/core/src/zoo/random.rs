//! Random finite models for property tests.

use rand::Rng;

use crate::bundle::Bundle;
use crate::error::Result;
use crate::ontic::{
    Distribution, KernelRow, Measurement, MeasurementUpdate, OnticModel, OnticStateSpace, ResponseFunction,
    TransformationKernel,
};
use crate::zoo::qubit::{lg_protocols, pm};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomModelOptions {
    pub max_states: usize,
    /// Give M1 and M2 identity updates.
    pub noninvasive_m1_m2: bool,
    /// Chance that any given weight is forced to zero.
    pub sparsity: f64,
    /// Chance that a response row is deterministic.
    pub deterministic_rate: f64,
}

impl Default for RandomModelOptions {
    fn default() -> Self {
        Self {
            max_states: 8,
            noninvasive_m1_m2: false,
            sparsity: 0.3,
            deterministic_rate: 0.3,
        }
    }
}

fn row<R: Rng>(rng: &mut R, n: usize, sparsity: f64) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n)
        .map(|_| if rng.gen_bool(sparsity) { 0.0 } else { rng.gen::<f64>() })
        .collect();
    if w.iter().all(|&x| x == 0.0) {
        w[rng.gen_range(0..n)] = 1.0;
    }
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= s);
    w
}

fn measurement<R: Rng>(rng: &mut R, label: &str, n: usize, oni: bool, o: &RandomModelOptions) -> Result<Measurement> {
    let rows = (0..n)
        .map(|_| {
            if rng.gen_bool(o.deterministic_rate) {
                if rng.gen_bool(0.5) {
                    vec![1.0, 0.0]
                } else {
                    vec![0.0, 1.0]
                }
            } else {
                let p = rng.gen::<f64>();
                vec![p, 1.0 - p]
            }
        })
        .collect();
    let update = if oni {
        MeasurementUpdate::identity(n, 2)
    } else {
        let mut pool = Vec::new();
        let mut rows = vec![vec![None; n]; 2];
        for per_q in rows.iter_mut() {
            for r in per_q.iter_mut() {
                *r = Some(KernelRow::Shared(pool.len()));
                pool.push(Distribution::new(row(rng, n, o.sparsity))?);
            }
        }
        MeasurementUpdate::new(n, rows, pool)?
    };
    Measurement::new(label, ResponseFunction::new(pm(), rows)?, update)
}

/// A model with two preparations, kernels `T1 T2`, binary measurements
/// `M1 M2 M3`, and a default arrangement over them.
pub fn random_bundle<R: Rng>(rng: &mut R, o: &RandomModelOptions) -> Result<Bundle> {
    let n = rng.gen_range(1..=o.max_states.max(1));
    let mut model = OnticModel::new("random", OnticStateSpace::numbered("s", n)?);
    model.add_preparation("E", Distribution::new(row(rng, n, o.sparsity))?)?;
    model.add_preparation("F", Distribution::new(row(rng, n, o.sparsity))?)?;
    for t in ["T1", "T2"] {
        let rows = (0..n)
            .map(|_| Distribution::new(row(rng, n, o.sparsity)))
            .collect::<Result<Vec<_>>>()?;
        model.add_transformation(t, TransformationKernel::from_rows(rows)?)?;
    }
    for (i, m) in ["M1", "M2", "M3"].into_iter().enumerate() {
        model.add_measurement(measurement(rng, m, n, o.noninvasive_m1_m2 && i < 2, o)?)?;
    }
    Ok(lg_protocols(Bundle::new(model), "E", ["T1", "T2"], ["M1", "M2", "M3"]))
}
