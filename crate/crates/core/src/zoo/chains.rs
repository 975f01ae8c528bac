//! Classical two-valued chains: the superselected qubit and a coarse-grained
//! four-state Markov chain.

use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::lg::LgArrangement;
use crate::ontic::{Distribution, Measurement, OnticModel, OnticStateSpace, TransformationKernel};
use crate::zoo::qubit::{lg_protocols, pm};

fn check_p(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} = {p} is outside [0, 1]")))
    }
}

fn flip(p: f64) -> Result<TransformationKernel> {
    TransformationKernel::from_matrix(vec![vec![1.0 - p, p], vec![p, 1.0 - p]])
}

/// Qubit restricted to the basis states: rotations act as flip
/// probabilities and the σ_z readout never disturbs.
pub fn superselected_bundle(p1: f64, p2: f64) -> Result<Bundle> {
    check_p("p1", p1)?;
    check_p("p2", p2)?;
    let space = OnticStateSpace::new(["0", "1"])?;
    let mut model = OnticModel::new("superselected", space)
        .with_preparation("z+", Distribution::point(2, 0))?
        .with_preparation("z-", Distribution::point(2, 1))?
        .with_preparation("mixed", Distribution::new(vec![0.3, 0.7])?)?
        .with_transformation("T1", flip(p1)?)?
        .with_transformation("T2", flip(p2)?)?
        .with_measurement(Measurement::noninvasive_readout("Mz", pm(), &[0, 1])?)?;
    model.set_metadata("kind", "superselected");
    model.set_metadata("p1", format!("{p1:?}"));
    model.set_metadata("p2", format!("{p2:?}"));
    Ok(lg_protocols(Bundle::new(model).with_class("Z", &["Mz"]), "z+", ["T1", "T2"], ["Mz"; 3]))
}

pub fn build_superselected_arrangement(p1: f64, p2: f64) -> Result<LgArrangement> {
    superselected_bundle(p1, p2)?.arrangement(None)
}

/// Four microstates `a0 a1` (value +1) and `b0 b1` (value −1). A step keeps
/// the value with probability `1 − p`, cycling the micro index, and otherwise
/// jumps to the partner of the other value.
fn hop(p: f64) -> Result<TransformationKernel> {
    TransformationKernel::from_matrix(vec![
        vec![0.0, 1.0 - p, p, 0.0],
        vec![1.0 - p, 0.0, 0.0, p],
        vec![p, 0.0, 0.0, 1.0 - p],
        vec![0.0, p, 1.0 - p, 0.0],
    ])
}

/// Coarse-grained Markov chain read out noninvasively.
pub fn classical_chain_bundle(p1: f64, p2: f64) -> Result<Bundle> {
    check_p("p1", p1)?;
    check_p("p2", p2)?;
    let space = OnticStateSpace::new(["a0", "a1", "b0", "b1"])?;
    let mut model = OnticModel::new("classical-chain", space);
    for (i, s) in ["a0", "a1", "b0", "b1"].into_iter().enumerate() {
        model.add_preparation(s, Distribution::point(4, i))?;
    }
    model.add_preparation("start", Distribution::new(vec![0.5, 0.3, 0.2, 0.0])?)?;
    model.add_transformation("T1", hop(p1)?)?;
    model.add_transformation("T2", hop(p2)?)?;
    model.add_measurement(Measurement::noninvasive_readout("Q", pm(), &[0, 0, 1, 1])?)?;
    model.set_metadata("kind", "classical-chain");
    model.set_metadata("p1", format!("{p1:?}"));
    model.set_metadata("p2", format!("{p2:?}"));
    Ok(lg_protocols(Bundle::new(model).with_class("Q", &["Q"]), "start", ["T1", "T2"], ["Q"; 3]))
}
