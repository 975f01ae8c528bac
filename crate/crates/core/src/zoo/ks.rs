//! Kochen-Specker hidden-variable model for a qubit, on a discretized sphere.
//!
//! The ontic state is a unit vector `n`. Preparing Bloch vector `s` draws `n`
//! with density `∝ max(n·s, 0)`; measuring along `m` returns +1 iff
//! `n·m >= 0`. After an outcome the state is re-drawn from the eigenstate
//! density for that outcome, which reproduces sequential quantum statistics.

use std::f64::consts::PI;

use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::lg::LgArrangement;
use crate::ontic::{
    Distribution, Measurement, MeasurementUpdate, OnticModel, OnticStateSpace, ResponseFunction,
    TransformationKernel,
};
use crate::zoo::qubit::{check_angle, lg_protocols, pm};

pub type Vec3 = [f64; 3];

fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Bloch-sphere image of `R_y(θ)`.
pub fn rotate_y(theta: f64, v: &Vec3) -> Vec3 {
    let (s, c) = theta.sin_cos();
    [c * v[0] + s * v[2], v[1], -s * v[0] + c * v[2]]
}

/// Fibonacci lattice with `z_i = 1 − (2i+1)/N`, so `z` decreases with `i`.
#[derive(Debug, Clone)]
pub struct KsGrid {
    points: Vec<Vec3>,
}

impl KsGrid {
    pub fn fibonacci(n: usize) -> Self {
        let golden = PI * (3.0 - 5f64.sqrt());
        let points = (0..n)
            .map(|i| {
                let z = 1.0 - (2 * i + 1) as f64 / n as f64;
                let r = (1.0 - z * z).max(0.0).sqrt();
                let phi = golden * i as f64;
                [r * phi.cos(), r * phi.sin(), z]
            })
            .collect();
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec3] {
        &self.points
    }

    /// Index of the grid point closest to `v`; ties go to the lower index.
    pub fn nearest(&self, v: &Vec3) -> usize {
        let n = self.points.len();
        let dist = |i: usize| {
            let p = &self.points[i];
            (p[0] - v[0]).powi(2) + (p[1] - v[1]).powi(2) + (p[2] - v[2]).powi(2)
        };
        let guess = ((1.0 - v[2]) * n as f64 / 2.0 - 0.5).round().clamp(0.0, (n - 1) as f64) as usize;
        let (mut best, mut best_d) = (guess, dist(guess));
        // Points are sorted by z, and |p − v| >= |z_p − v_z|, so scanning
        // outwards can stop once the z gap alone exceeds the best distance.
        for i in (0..guess).rev() {
            if (self.points[i][2] - v[2]).powi(2) > best_d {
                break;
            }
            let d = dist(i);
            if d <= best_d {
                best = i;
                best_d = d;
            }
        }
        for i in guess + 1..n {
            if (self.points[i][2] - v[2]).powi(2) > best_d {
                break;
            }
            let d = dist(i);
            if d < best_d || (d == best_d && i < best) {
                best = i;
                best_d = d;
            }
        }
        best
    }

    /// Preparation density for Bloch vector `s`.
    pub fn density(&self, s: &Vec3) -> Result<Distribution> {
        let w: Vec<f64> = self.points.iter().map(|n| dot(n, s).max(0.0)).collect();
        let total: f64 = w.iter().sum();
        Distribution::new(w.into_iter().map(|x| x / total).collect())
    }

    /// `+1` iff `n·m >= 0`, as outcome indices.
    pub fn responses(&self, m: &Vec3) -> Vec<usize> {
        self.points.iter().map(|n| usize::from(dot(n, m) < 0.0)).collect()
    }

    /// `P(+1)` for preparation `s` and measurement direction `m`.
    pub fn single_shot(&self, s: &Vec3, m: &Vec3) -> Result<f64> {
        let rho = self.density(s)?;
        Ok(self
            .points
            .iter()
            .zip(rho.weights())
            .filter(|(n, _)| dot(n, m) >= 0.0)
            .map(|(_, w)| w)
            .sum())
    }

    /// Deterministic rotation: each point goes to the grid point nearest its image.
    pub fn rotation(&self, theta: f64) -> Result<TransformationKernel> {
        TransformationKernel::deterministic(self.points.iter().map(|p| self.nearest(&rotate_y(theta, p))).collect())
    }
}

/// Largest `|P(+1) − cos²(β/2)|` for preparation `+z` over `probes`
/// measurement directions drawn from a Fibonacci lattice.
pub fn ks_born_error(grid: &KsGrid, probes: usize) -> Result<f64> {
    let z = [0.0, 0.0, 1.0];
    let mut worst: f64 = 0.0;
    for m in KsGrid::fibonacci(probes).points() {
        let want = (1.0 + m[2]) / 2.0;
        worst = worst.max((grid.single_shot(&z, m)? - want).abs());
    }
    Ok(worst)
}

fn sphere_measurement(label: &str, grid: &KsGrid, m: &Vec3) -> Result<Measurement> {
    let minus = [-m[0], -m[1], -m[2]];
    Measurement::new(
        label,
        ResponseFunction::deterministic(pm(), &grid.responses(m))?,
        MeasurementUpdate::resample(grid.len(), vec![grid.density(m)?, grid.density(&minus)?])?,
    )
}

pub fn ks_bundle(n: usize, theta1: f64, theta2: f64) -> Result<Bundle> {
    if n < 100 {
        return Err(Error::domain(format!("grid size {n} is below the minimum of 100")));
    }
    check_angle("theta1", theta1)?;
    check_angle("theta2", theta2)?;
    let grid = KsGrid::fibonacci(n);
    let (x, z, mz) = ([1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, -1.0]);
    let mut model = OnticModel::new("ks-sphere", OnticStateSpace::numbered("n", n)?)
        .with_preparation("z+", grid.density(&z)?)?
        .with_preparation("z-", grid.density(&mz)?)?
        .with_preparation("x+", grid.density(&x)?)?
        .with_transformation("T1", grid.rotation(theta1)?)?
        .with_transformation("T2", grid.rotation(theta2)?)?
        .with_measurement(sphere_measurement("Mz", &grid, &z)?)?
        .with_measurement(sphere_measurement("Mx", &grid, &x)?)?;
    model.set_metadata("kind", "ks-sphere");
    model.set_metadata("grid_size", n.to_string());
    model.set_metadata("lattice", "fibonacci, z_i = 1 - (2i+1)/N, azimuth step pi(3 - sqrt 5)");
    model.set_metadata("density", "proportional to max(n.s, 0)");
    model.set_metadata("update", "re-sample from the eigenstate density of the observed outcome (surrogate)");
    model.set_metadata("rotation", "nearest grid point to R_y(theta) n");
    model.set_metadata("theta1", format!("{theta1:?}"));
    model.set_metadata("theta2", format!("{theta2:?}"));
    Ok(lg_protocols(Bundle::new(model).with_class("Z", &["Mz"]), "z+", ["T1", "T2"], ["Mz"; 3]))
}

pub fn build_ks_arrangement(n: usize, theta1: f64, theta2: f64) -> Result<LgArrangement> {
    ks_bundle(n, theta1, theta2)?.arrangement(None)
}
