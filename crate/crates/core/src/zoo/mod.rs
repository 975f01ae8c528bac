//! Ready-made models: quantum, classical, hidden-variable and hand-built
//! fixtures, all compiled down to finite ontic models.

mod chains;
pub mod fixtures;
mod ks;
mod qubit;
mod random;

use std::f64::consts::PI;

pub use chains::{build_superselected_arrangement, classical_chain_bundle, superselected_bundle};
pub use fixtures::{build_fixture, fixture_names, kicked_readout_bundle, verify_fixture};
pub use ks::{build_ks_arrangement, ks_born_error, ks_bundle, rotate_y, KsGrid};
pub use qubit::{
    bohm_bundle, born, build_bohm_arrangement, build_qubit_arrangement, canonical, qubit_bundle, rotation_y,
    QubitOptions, Ray, RayClosure, KET0, KET1, KET_MINUS, KET_PLUS,
};
pub use random::{random_bundle, RandomModelOptions};

use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::twoslit::{compile_to_arrangement, SlitAmplitudes};

/// A catalog line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct ZooEntry {
    pub name: &'static str,
    pub summary: &'static str,
    /// What the model stands for in the macrorealism discussion.
    pub anchor: &'static str,
    /// Parameters [`build`] reads for this entry.
    pub params: &'static [&'static str],
}

pub fn catalog() -> Vec<ZooEntry> {
    vec![
        ZooEntry {
            name: "qubit",
            summary: "pure-state qubit, projective sigma_z measurements, rotations about y",
            anchor: "quantum violation of the Leggett-Garg inequality",
            params: &["theta1", "theta2"],
        },
        ZooEntry {
            name: "superselected",
            summary: "qubit restricted to basis states; rotations become flip probabilities",
            anchor: "operational eigenstate mixture macrorealism (MR1)",
            params: &["p1", "p2"],
        },
        ZooEntry {
            name: "classical-chain",
            summary: "four-microstate Markov chain with a noninvasive coarse-grained readout",
            anchor: "ontically noninvasive measurement, MR1",
            params: &["p1", "p2"],
        },
        ZooEntry {
            name: "ks-sphere",
            summary: "Kochen-Specker qubit model on a Fibonacci sphere grid",
            anchor: "operational eigenstate support macrorealism (MR2)",
            params: &["grid", "theta1", "theta2"],
        },
        ZooEntry {
            name: "bohm-two-path",
            summary: "pure state plus definite path bit, minimal-transport guidance",
            anchor: "supra eigenstate support macrorealism (MR3)",
            params: &["theta1", "theta2"],
        },
        ZooEntry {
            name: "two-slit",
            summary: "single screen bin behind two slits with a which-slit measurement",
            anchor: "two-slit value assignments and the simplified inequality",
            params: &["mod1_sq", "phi"],
        },
        ZooEntry {
            name: fixtures::LGI_HOLDS_D_NONZERO,
            summary: "readout that kicks the state: disturbing yet never violating",
            anchor: "non-disturbance is sufficient, not necessary",
            params: &[],
        },
        ZooEntry {
            name: fixtures::NULL_RESULT_PAIR,
            summary: "two equivalent measurements, each noninvasive on one outcome",
            anchor: "null-result measurement with post-selection",
            params: &[],
        },
        ZooEntry {
            name: fixtures::SUPPORT_MR_MINIMAL,
            summary: "three states, one preparation outside the eigenstate hull",
            anchor: "smallest MR2 model",
            params: &[],
        },
        ZooEntry {
            name: fixtures::DRIFTING_UPDATE,
            summary: "update moves an eigenstate preparation off itself",
            anchor: "eigenstate preparations as equilibrium distributions",
            params: &[],
        },
    ]
}

/// Parameters shared by the parametrized zoo entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZooParams {
    pub theta1: f64,
    pub theta2: f64,
    pub p1: f64,
    pub p2: f64,
    pub grid: usize,
    pub mod1_sq: f64,
    pub phi: f64,
}

impl Default for ZooParams {
    fn default() -> Self {
        Self {
            theta1: 2.0 * PI / 3.0,
            theta2: 2.0 * PI / 3.0,
            p1: 0.25,
            p2: 0.25,
            grid: 10_000,
            mod1_sq: 0.2,
            phi: PI,
        }
    }
}

/// Builds a zoo model by name.
pub fn build(name: &str, p: &ZooParams) -> Result<Bundle> {
    match name {
        "qubit" => qubit_bundle(QubitOptions::new(p.theta1, p.theta2)),
        "superselected" => superselected_bundle(p.p1, p.p2),
        "classical-chain" => classical_chain_bundle(p.p1, p.p2),
        "ks-sphere" => ks_bundle(p.grid, p.theta1, p.theta2),
        "bohm-two-path" => bohm_bundle(p.theta1, p.theta2),
        "two-slit" => {
            if !(0.0..=1.0).contains(&p.mod1_sq) {
                return Err(Error::domain(format!("mod1_sq = {} is outside [0, 1]", p.mod1_sq)));
            }
            compile_to_arrangement(&SlitAmplitudes::from_moduli(p.mod1_sq, 1.0 - p.mod1_sq, p.phi)?)
        }
        "" => Err(Error::domain("empty zoo model name")),
        other if fixture_names().contains(&other) => build_fixture(other),
        other => Err(Error::unknown("zoo model", other)),
    }
}
