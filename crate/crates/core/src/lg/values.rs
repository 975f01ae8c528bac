use serde::Serialize;

use crate::error::Result;
use crate::lg::LgArrangement;
use crate::operational::JointDistribution;

/// One entry of a disturbance table, keyed by outcome labels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DisturbanceEntry {
    pub outcomes: [String; 2],
    pub value: f64,
}

/// Disturbance tables for an arrangement together with both Leggett-Garg
/// quantities and the residual of the decomposition identity
///
/// `lg_pairwise = 4(P+++ + P---) + 2(Σ_{q2=q3} D1 + Σ_{q1=q3} D2) - 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DisturbanceReport {
    /// `P23(q2,q3) - Σ_q1 P123(q1,q2,q3)`: effect of performing M1.
    pub d1: Vec<DisturbanceEntry>,
    /// `P13(q1,q3) - Σ_q2 P123(q1,q2,q3)`: effect of performing M2.
    pub d2: Vec<DisturbanceEntry>,
    /// `P12(q1,q2) - Σ_q3 P123(q1,q2,q3)`: must vanish.
    pub d3: Vec<DisturbanceEntry>,
    pub p_plus_plus_plus: f64,
    pub p_minus_minus_minus: f64,
    pub lg_all_three: f64,
    pub lg_pairwise: f64,
    pub decomposition_residual: f64,
}

impl DisturbanceReport {
    /// Largest `|D1|` or `|D2|` entry.
    pub fn max_abs_d(&self) -> f64 {
        self.d1
            .iter()
            .chain(&self.d2)
            .map(|e| e.value.abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_d3(&self) -> f64 {
        self.d3.iter().map(|e| e.value.abs()).fold(0.0, f64::max)
    }

    pub fn d1_value(&self, q2: &str, q3: &str) -> Option<f64> {
        lookup(&self.d1, q2, q3)
    }

    pub fn d2_value(&self, q1: &str, q3: &str) -> Option<f64> {
        lookup(&self.d2, q1, q3)
    }

    pub fn d3_value(&self, q1: &str, q2: &str) -> Option<f64> {
        lookup(&self.d3, q1, q2)
    }
}

fn lookup(entries: &[DisturbanceEntry], a: &str, b: &str) -> Option<f64> {
    entries
        .iter()
        .find(|e| e.outcomes[0] == a && e.outcomes[1] == b)
        .map(|e| e.value)
}

/// `Σ P(q_a, q_b) v_a v_b` over two axes of a joint.
fn correlator(a: &LgArrangement, j: &JointDistribution, axes: [usize; 2], slots: [usize; 2]) -> f64 {
    j.entries()
        .map(|(idx, p)| p * a.value(slots[0], idx[axes[0]]) * a.value(slots[1], idx[axes[1]]))
        .sum()
}

/// `<Q1Q2> + <Q1Q3> + <Q2Q3>` from the single run where all three
/// measurements are performed.
pub fn lg_value_all_three(a: &LgArrangement) -> Result<f64> {
    let j = a.run([true; 3])?;
    Ok(all_three_from(a, &j))
}

fn all_three_from(a: &LgArrangement, j: &JointDistribution) -> f64 {
    correlator(a, j, [0, 1], [0, 1]) + correlator(a, j, [0, 2], [0, 2]) + correlator(a, j, [1, 2], [1, 2])
}

/// `<Q1Q2>_{M1M2} + <Q1Q3>_{M1M3} + <Q2Q3>_{M2M3}`, each correlator taken from
/// its own two-measurement run.
pub fn lg_value_pairwise(a: &LgArrangement) -> Result<f64> {
    let p12 = a.run([true, true, false])?;
    let p13 = a.run([true, false, true])?;
    let p23 = a.run([false, true, true])?;
    Ok(pairwise_from(a, &p12, &p13, &p23))
}

fn pairwise_from(a: &LgArrangement, p12: &JointDistribution, p13: &JointDistribution, p23: &JointDistribution) -> f64 {
    correlator(a, p12, [0, 1], [0, 1]) + correlator(a, p13, [0, 1], [0, 2]) + correlator(a, p23, [0, 1], [1, 2])
}

fn table(
    a: &LgArrangement,
    pair: &JointDistribution,
    marginal: &JointDistribution,
    slots: [usize; 2],
) -> (Vec<DisturbanceEntry>, f64) {
    let mut entries = Vec::with_capacity(4);
    let mut same = 0.0;
    for ((idx, p), q) in pair.entries().zip(marginal.probs()) {
        let value = p - q;
        if a.value(slots[0], idx[0]) == a.value(slots[1], idx[1]) {
            same += value;
        }
        entries.push(DisturbanceEntry {
            outcomes: [
                pair.axes()[0].outcomes[idx[0]].clone(),
                pair.axes()[1].outcomes[idx[1]].clone(),
            ],
            value,
        });
    }
    (entries, same)
}

/// Runs the four protocols of an arrangement and assembles every disturbance
/// entry, both LG quantities and the decomposition residual.
pub fn disturbance_report(a: &LgArrangement) -> Result<DisturbanceReport> {
    let all = a.run([true; 3])?;
    let p12 = a.run([true, true, false])?;
    let p13 = a.run([true, false, true])?;
    let p23 = a.run([false, true, true])?;

    let (d1, same1) = table(a, &p23, &all.marginalize(&[1, 2])?, [1, 2]);
    let (d2, same2) = table(a, &p13, &all.marginalize(&[0, 2])?, [0, 2]);
    let (d3, _) = table(a, &p12, &all.marginalize(&[0, 1])?, [0, 1]);

    let plus = [a.plus_index(0), a.plus_index(1), a.plus_index(2)];
    let minus = plus.map(|p| 1 - p);
    let ppp = all.get(&plus);
    let mmm = all.get(&minus);

    let lg_all_three = all_three_from(a, &all);
    let lg_pairwise = pairwise_from(a, &p12, &p13, &p23);
    let decomposition_residual = lg_pairwise - (4.0 * (ppp + mmm) + 2.0 * (same1 + same2) - 1.0);
    Ok(DisturbanceReport {
        d1,
        d2,
        d3,
        p_plus_plus_plus: ppp,
        p_minus_minus_minus: mmm,
        lg_all_three,
        lg_pairwise,
        decomposition_residual,
    })
}
