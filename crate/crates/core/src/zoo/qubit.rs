//! Qubit models whose ontic states are pure states.
//!
//! The pure-state space is infinite, so the model keeps only states reachable
//! from the seeds (preparations and collapse targets) by at most `horizon`
//! rotations. Rotations of states at the horizon whose image was never
//! generated are padded with the identity; the count is recorded in the
//! metadata and no protocol within the horizon ever reaches such a row.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;

use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::lg::{ArrangementSpec, LgArrangement};
use crate::ontic::{
    Distribution, Measurement, MeasurementUpdate, OnticModel, OnticStateSpace, ResponseFunction,
    TransformationKernel,
};
use crate::operational::{Protocol, Step};

/// Rays closer than this, component-wise after phase fixing, are the same state.
const RAY_TOL: f64 = 1e-12;

pub type Ray = [Complex64; 2];
type Mat2 = [[Complex64; 2]; 2];

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub const KET0: Ray = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
pub const KET1: Ray = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
pub const KET_PLUS: Ray = [Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(FRAC_1_SQRT_2, 0.0)];
pub const KET_MINUS: Ray = [Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(-FRAC_1_SQRT_2, 0.0)];

/// `R_y(θ) = [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]`.
pub fn rotation_y(theta: f64) -> Mat2 {
    let (s, co) = (theta / 2.0).sin_cos();
    [[c(co), c(-s)], [c(s), c(co)]]
}

fn apply(m: &Mat2, v: &Ray) -> Ray {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

/// Unit norm, first non-negligible component real and positive.
pub fn canonical(v: Ray) -> Ray {
    let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let lead = if v[0].norm() > RAY_TOL { v[0] } else { v[1] };
    let phase = lead.conj() / lead.norm();
    [v[0] * phase / norm, v[1] * phase / norm]
}

fn same_ray(a: &Ray, b: &Ray) -> bool {
    (a[0] - b[0]).norm() <= RAY_TOL && (a[1] - b[1]).norm() <= RAY_TOL
}

/// `|⟨e|ψ⟩|²`
pub fn born(e: &Ray, psi: &Ray) -> f64 {
    (e[0].conj() * psi[0] + e[1].conj() * psi[1]).norm_sqr()
}

/// Finite set of rays closed under a list of unitaries up to a horizon.
#[derive(Debug, Clone)]
pub struct RayClosure {
    pub rays: Vec<Ray>,
    /// `images[t][i]`: index of `U_t ψ_i`, `None` where padded.
    pub images: Vec<Vec<Option<usize>>>,
    pub horizon: usize,
}

impl RayClosure {
    pub fn build(seeds: &[Ray], unitaries: &[Mat2], horizon: usize) -> Self {
        let mut rays: Vec<Ray> = Vec::new();
        let mut depth: Vec<usize> = Vec::new();
        for s in seeds {
            let s = canonical(*s);
            if !rays.iter().any(|r| same_ray(r, &s)) {
                rays.push(s);
                depth.push(0);
            }
        }
        let mut i = 0;
        while i < rays.len() {
            if depth[i] < horizon {
                for u in unitaries {
                    let img = canonical(apply(u, &rays[i]));
                    if !rays.iter().any(|r| same_ray(r, &img)) {
                        rays.push(img);
                        depth.push(depth[i] + 1);
                    }
                }
            }
            i += 1;
        }
        let images = unitaries
            .iter()
            .map(|u| {
                rays.iter()
                    .map(|r| {
                        let img = canonical(apply(u, r));
                        rays.iter().position(|x| same_ray(x, &img))
                    })
                    .collect()
            })
            .collect();
        Self { rays, images, horizon }
    }

    pub fn index_of(&self, v: &Ray) -> Option<usize> {
        let v = canonical(*v);
        self.rays.iter().position(|r| same_ray(r, &v))
    }

    pub fn padded_rows(&self) -> usize {
        self.images.iter().flatten().filter(|x| x.is_none()).count()
    }

    /// Kernel for unitary `t`, padding missing images with the identity.
    pub fn kernel(&self, t: usize) -> Result<TransformationKernel> {
        TransformationKernel::deterministic(
            self.images[t]
                .iter()
                .enumerate()
                .map(|(i, x)| x.unwrap_or(i))
                .collect(),
        )
    }

    /// Bloch angles `(θ, φ)` of ray `i`.
    pub fn bloch(&self, i: usize) -> (f64, f64) {
        let r = &self.rays[i];
        let theta = 2.0 * r[1].norm().atan2(r[0].norm());
        let phi = if r[1].norm() > RAY_TOL && r[0].norm() > RAY_TOL {
            (r[1].arg() - r[0].arg()).rem_euclid(TAU)
        } else {
            0.0
        };
        (theta, phi)
    }

    pub fn label(&self, i: usize) -> String {
        let (t, p) = self.bloch(i);
        format!("psi{i}(theta={t:.6},phi={p:.6})")
    }
}

pub(crate) fn check_angle(name: &str, theta: f64) -> Result<()> {
    if (0.0..TAU).contains(&theta) {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} = {theta} is outside [0, 2π)")))
    }
}

/// Options for [`qubit_bundle`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitOptions {
    pub theta1: f64,
    pub theta2: f64,
    pub horizon: usize,
    /// Also declare the `x+` preparation and the `Mx` measurement.
    pub with_x: bool,
}

impl QubitOptions {
    pub fn new(theta1: f64, theta2: f64) -> Self {
        Self {
            theta1,
            theta2,
            horizon: 4,
            with_x: true,
        }
    }

    /// Smallest model that still runs the Leggett-Garg arrangement exactly.
    pub fn lean(theta1: f64, theta2: f64) -> Self {
        Self {
            theta1,
            theta2,
            horizon: 2,
            with_x: false,
        }
    }
}

pub(crate) fn pm() -> Vec<&'static str> {
    vec!["+1", "-1"]
}

pub(crate) fn lg_protocols(bundle: Bundle, prep: &str, t: [&str; 2], m: [&str; 3]) -> Bundle {
    let steps = |mask: [bool; 3]| {
        vec![
            Step::new(None, m[0], mask[0]),
            Step::new(Some(t[0]), m[1], mask[1]),
            Step::new(Some(t[1]), m[2], mask[2]),
        ]
    };
    bundle
        .with_protocol("all-three", Protocol::new(prep, steps([true; 3])))
        .with_protocol("skip-m3", Protocol::new(prep, steps([true, true, false])))
        .with_protocol("skip-m2", Protocol::new(prep, steps([true, false, true])))
        .with_protocol("skip-m1", Protocol::new(prep, steps([false, true, true])))
        .with_arrangement("default", ArrangementSpec::plus_minus(prep, Some(t[0]), Some(t[1]), m))
}

/// Projective measurement onto `basis`, collapsing to the observed vector.
fn projective(label: &str, closure: &RayClosure, basis: [Ray; 2]) -> Result<Measurement> {
    let rows = closure.rays.iter().map(|r| basis.iter().map(|e| born(e, r)).collect()).collect();
    let targets = basis
        .iter()
        .map(|e| closure.index_of(e).ok_or_else(|| Error::EngineDefect("collapse target outside closure".into())))
        .collect::<Result<Vec<_>>>()?;
    Measurement::new(
        label,
        ResponseFunction::new(pm(), rows)?,
        MeasurementUpdate::collapse(closure.rays.len(), &targets)?,
    )
}

/// The bare quantum qubit: prepare `z+`, rotate about y by θ1 and θ2,
/// measure σ_z at three times.
pub fn qubit_bundle(opts: QubitOptions) -> Result<Bundle> {
    check_angle("theta1", opts.theta1)?;
    check_angle("theta2", opts.theta2)?;
    let mut seeds = vec![KET0, KET1];
    if opts.with_x {
        seeds.extend([KET_PLUS, KET_MINUS]);
    }
    let closure = RayClosure::build(&seeds, &[rotation_y(opts.theta1), rotation_y(opts.theta2)], opts.horizon);
    let n = closure.rays.len();
    let space = OnticStateSpace::new((0..n).map(|i| closure.label(i)))?;
    let at = |r: &Ray| closure.index_of(r).expect("seed is in the closure");

    let mut model = OnticModel::new("qubit", space)
        .with_preparation("z+", Distribution::point(n, at(&KET0)))?
        .with_preparation("z-", Distribution::point(n, at(&KET1)))?;
    if opts.with_x {
        model.add_preparation("x+", Distribution::point(n, at(&KET_PLUS)))?;
    }
    model.add_transformation("T1", closure.kernel(0)?)?;
    model.add_transformation("T2", closure.kernel(1)?)?;
    model.add_measurement(projective("Mz", &closure, [KET0, KET1])?)?;
    if opts.with_x {
        model.add_measurement(projective("Mx", &closure, [KET_PLUS, KET_MINUS])?)?;
    }
    model.set_metadata("kind", "qubit");
    model.set_metadata("theta1", format!("{:?}", opts.theta1));
    model.set_metadata("theta2", format!("{:?}", opts.theta2));
    model.set_metadata("horizon", opts.horizon.to_string());
    model.set_metadata("padded_rows", closure.padded_rows().to_string());
    Ok(lg_protocols(Bundle::new(model).with_class("Z", &["Mz"]), "z+", ["T1", "T2"], ["Mz"; 3]))
}

pub fn build_qubit_arrangement(theta1: f64, theta2: f64) -> Result<LgArrangement> {
    qubit_bundle(QubitOptions::new(theta1, theta2))?.arrangement(None)
}

/// Two-path model: ontic state `(ψ, b)` with a definite path bit `b`.
///
/// Rotations move `ψ` and then re-draw `b` by minimal transport between the
/// old and new Born marginals: only the excess probability changes path.
/// The which-path measurement reads `b` and collapses `ψ` onto that path.
pub fn bohm_bundle(theta1: f64, theta2: f64) -> Result<Bundle> {
    check_angle("theta1", theta1)?;
    check_angle("theta2", theta2)?;
    let closure = RayClosure::build(&[KET0, KET1, KET_PLUS], &[rotation_y(theta1), rotation_y(theta2)], 4);
    let paths = [KET0, KET1];
    let p = |r: usize, b: usize| born(&paths[b], &closure.rays[r]);

    let mut states: Vec<(usize, usize)> = Vec::new();
    let mut index = vec![[None; 2]; closure.rays.len()];
    for r in 0..closure.rays.len() {
        for b in 0..2 {
            if p(r, b) > crate::tolerance::EPS_SUPP {
                index[r][b] = Some(states.len());
                states.push((r, b));
            }
        }
    }
    let n = states.len();
    let labels = states.iter().map(|&(r, b)| format!("{}|b={}", closure.label(r), b + 1));
    let space = OnticStateSpace::new(labels)?;

    let transport = |t: usize| -> Result<TransformationKernel> {
        let rows = states
            .iter()
            .map(|&(r, b)| {
                let Some(r2) = closure.images[t][r] else {
                    // padded ray: stay put
                    return Distribution::point(n, index[r][b].expect("state exists"));
                };
                let (p1, p1n) = (p(r, 0), p(r2, 0));
                // Probability of moving to the other path.
                let mv = match b {
                    0 if p1n < p1 => (p1 - p1n) / p1,
                    1 if p1n > p1 => (p1n - p1) / p(r, 1),
                    _ => 0.0,
                };
                let mut w = vec![0.0; n];
                if let Some(j) = index[r2][b] {
                    w[j] += 1.0 - mv;
                }
                if let Some(j) = index[r2][1 - b] {
                    w[j] += mv;
                }
                let total: f64 = w.iter().sum();
                if total == 0.0 {
                    return Distribution::point(n, index[r][b].expect("state exists"));
                }
                w.iter_mut().for_each(|x| *x /= total);
                Distribution::new(w).expect("transport row normalized")
            })
            .collect();
        TransformationKernel::from_rows(rows)
    };

    let reads_b: Vec<usize> = states.iter().map(|&(_, b)| b).collect();
    let r0 = closure.index_of(&KET0).expect("seed");
    let r1 = closure.index_of(&KET1).expect("seed");
    let collapse = [index[r0][0].expect("seed"), index[r1][1].expect("seed")];
    let which_path = Measurement::new(
        "Mz",
        ResponseFunction::deterministic(pm(), &reads_b)?,
        MeasurementUpdate::collapse(n, &collapse)?,
    )?;

    let rp = closure.index_of(&KET_PLUS).expect("seed");
    let x_plus = Distribution::mixture(&[
        (p(rp, 0), &Distribution::point(n, index[rp][0].expect("seed"))),
        (p(rp, 1), &Distribution::point(n, index[rp][1].expect("seed"))),
    ])?;
    let mut model = OnticModel::new("bohm-two-path", space)
        .with_preparation("z+", Distribution::point(n, collapse[0]))?
        .with_preparation("z-", Distribution::point(n, collapse[1]))?
        .with_preparation("x+", x_plus)?
        .with_transformation("T1", transport(0)?)?
        .with_transformation("T2", transport(1)?)?
        .with_measurement(which_path)?;
    model.set_metadata("kind", "bohm-two-path");
    model.set_metadata("theta1", format!("{theta1:?}"));
    model.set_metadata("theta2", format!("{theta2:?}"));
    model.set_metadata("horizon", "4");
    model.set_metadata("padded_rows", closure.padded_rows().to_string());
    model.set_metadata("path_transport", "minimal transport between Born marginals (surrogate guidance law)");
    Ok(lg_protocols(Bundle::new(model).with_class("path", &["Mz"]), "z+", ["T1", "T2"], ["Mz"; 3]))
}

pub fn build_bohm_arrangement(theta1: f64, theta2: f64) -> Result<LgArrangement> {
    bohm_bundle(theta1, theta2)?.arrangement(None)
}
