//! Reference computations that do not go through the ontic engine.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Joint distribution of σ_z outcomes for the qubit arrangement, computed by
/// direct state-vector simulation: start in |0⟩, rotate by θ1 before the
/// second time and θ2 before the third. Entries are `(outcomes, p)` with +1
/// ordered before -1 on every axis.
pub fn qubit_joint(theta1: f64, theta2: f64, mask: [bool; 3]) -> Vec<(Vec<i8>, f64)> {
    let rot = |t: f64, v: [f64; 2]| {
        let (s, c) = (t / 2.0).sin_cos();
        [c * v[0] - s * v[1], s * v[0] + c * v[1]]
    };
    let mut branches: Vec<(Vec<i8>, [f64; 2])> = vec![(vec![], [1.0, 0.0])];
    for (step, &perform) in mask.iter().enumerate() {
        let angle = [0.0, theta1, theta2][step];
        branches = branches
            .into_iter()
            .flat_map(|(h, v)| {
                let v = rot(angle, v);
                if !perform {
                    return vec![(h, v)];
                }
                // amplitudes stay real; collapse keeps the branch weight in the norm
                let mut plus = h.clone();
                plus.push(1);
                let mut minus = h;
                minus.push(-1);
                vec![(plus, [v[0].abs(), 0.0]), (minus, [0.0, v[1].abs()])]
            })
            .collect();
    }
    branches.into_iter().map(|(h, v)| (h, v[0] * v[0] + v[1] * v[1])).collect()
}

/// Pairwise Leggett-Garg value for the qubit: cos θ1 + cos(θ1+θ2) + cos θ2.
pub fn qubit_lg_pairwise(t1: f64, t2: f64) -> f64 {
    t1.cos() + (t1 + t2).cos() + t2.cos()
}

/// All three measured: the M1-M3 correlator factorizes through the collapse.
pub fn qubit_lg_all_three(t1: f64, t2: f64) -> f64 {
    t1.cos() + t2.cos() + t1.cos() * t2.cos()
}

/// Symmetric two-state flip chain with a noninvasive readout.
pub fn markov_lg(p1: f64, p2: f64) -> f64 {
    let (c1, c2) = (1.0 - 2.0 * p1, 1.0 - 2.0 * p2);
    c1 + c2 + c1 * c2
}

pub const TWO_PI_3: f64 = 2.0 * PI / 3.0;
