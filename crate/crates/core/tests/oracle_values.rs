//! Freezes the reference values used elsewhere, straight from the oracles.
mod common;

use common::*;
use std::f64::consts::PI;

#[test]
fn qubit_oracle_frozen_values() {
    assert!((qubit_lg_pairwise(TWO_PI_3, TWO_PI_3) - -1.5).abs() < 1e-15);
    assert!((qubit_lg_all_three(TWO_PI_3, TWO_PI_3) - -0.75).abs() < 1e-15);
    assert!((qubit_lg_pairwise(PI / 2.0, PI / 2.0) - -1.0).abs() < 1e-15);
    assert!((qubit_lg_pairwise(0.0, 0.0) - 3.0).abs() < 1e-15);

    let j = qubit_joint(PI / 2.0, PI / 2.0, [true; 3]);
    let p = |h: [i8; 3]| j.iter().find(|(k, _)| k[..] == h[..]).unwrap().1;
    assert!((p([1, 1, 1]) - 0.25).abs() < 1e-15);
    assert!((p([1, -1, 1]) - 0.25).abs() < 1e-15);
    let total: f64 = j.iter().map(|x| x.1).sum();
    assert!((total - 1.0).abs() < 1e-15);
}

#[test]
fn markov_oracle_frozen_values() {
    assert!((markov_lg(0.25, 0.25) - 1.25).abs() < 1e-15);
    assert!(markov_lg(0.5, 0.5).abs() < 1e-15);
    assert!((markov_lg(0.0, 0.0) - 3.0).abs() < 1e-15);
}
