mod common;

use std::f64::consts::PI;

use common::*;
use lglab::ontic::*;
use lglab::operational::*;
use lglab::zoo::{qubit_bundle, QubitOptions};

fn qubit_run(t1: f64, t2: f64, mask: [bool; 3]) -> JointDistribution {
    let b = qubit_bundle(QubitOptions::new(t1, t2)).unwrap();
    run_protocol(&b.model, &b.arrangement(None).unwrap().protocol(mask)).unwrap()
}

#[test]
fn deterministic_readout_gives_point_joint() {
    let m = OnticModel::new("d", OnticStateSpace::numbered("s", 2).unwrap())
        .with_preparation("e", Distribution::point(2, 1))
        .unwrap()
        .with_measurement(Measurement::noninvasive_readout("r", vec!["+1", "-1"], &[0, 1]).unwrap())
        .unwrap();
    let p = Protocol::new("e", vec![Step::new(None, "r", false), Step::measure(None, "r"), Step::new(None, "r", false)]);
    let j = run_protocol(&m, &p).unwrap();
    assert_eq!(j.axes().len(), 1);
    assert_eq!(j.axes()[0].step, 1);
    assert_eq!(j.probs(), &[0.0, 1.0]);
}

#[test]
fn protocols_need_a_performed_measurement_and_known_names() {
    let b = qubit_bundle(QubitOptions::new(1.0, 1.0)).unwrap();
    let none = Protocol::new("z+", vec![Step::new(None, "Mz", false)]);
    assert!(run_protocol(&b.model, &none).is_err());
    let unknown = Protocol::new("z+", vec![Step::measure(Some("T9"), "Mz")]);
    assert!(matches!(run_protocol(&b.model, &unknown), Err(lglab::Error::UnknownName { .. })));
}

#[test]
fn qubit_quarter_turn_pair() {
    let j = qubit_run(PI / 2.0, 0.0, [true, true, false]);
    assert!((j.prob(&["+1", "+1"]).unwrap() - 0.5).abs() < 1e-12);
    assert!((j.prob(&["+1", "-1"]).unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn qubit_three_measurements_match_state_vector_oracle() {
    for &(t1, t2) in &[(PI / 2.0, PI / 2.0), (TWO_PI_3, TWO_PI_3), (0.3, 5.1), (1.0, 2.5)] {
        for mask in [[true; 3], [true, true, false], [true, false, true], [false, true, true]] {
            let j = qubit_run(t1, t2, mask);
            let oracle = qubit_joint(t1, t2, mask);
            for ((idx, p), (_, want)) in j.entries().zip(&oracle) {
                assert!((p - want).abs() < 1e-12, "{t1} {t2} {mask:?} {idx:?}: {p} vs {want}");
            }
        }
    }
    let j = qubit_run(PI / 2.0, PI / 2.0, [true; 3]);
    assert!((j.prob(&["+1", "+1", "+1"]).unwrap() - 0.25).abs() < 1e-12);
    assert!((j.prob(&["+1", "-1", "+1"]).unwrap() - 0.25).abs() < 1e-12);
}

#[test]
fn pair_correlator_is_cosine() {
    let pm = ObservableAssignment::plus_minus(&["Mz"]);
    let j = qubit_run(PI / 2.0, 0.0, [true, true, false]);
    assert!(j.expectation(&pm, &[0, 1]).unwrap().abs() < 1e-12);
    let j = qubit_run(TWO_PI_3, 0.0, [true, true, false]);
    assert!((j.expectation(&pm, &[0, 1]).unwrap() - -0.5).abs() < 1e-12);
}

#[test]
fn skipping_the_last_measurement_equals_marginalizing_it() {
    let b = qubit_bundle(QubitOptions::new(0.7, 2.2)).unwrap();
    let a = b.arrangement(None).unwrap();
    let all = run_protocol(&b.model, &a.protocol([true; 3])).unwrap();
    let skip = run_protocol(&b.model, &a.protocol([true, true, false])).unwrap();
    let marg = all.marginalize(&[0, 1]).unwrap();
    for (x, y) in marg.probs().iter().zip(skip.probs()) {
        assert!((x - y).abs() < 1e-15);
    }
}

/// Three states; `e1` and `e2` differ ontically but every probe sees the same
/// statistics because the readout lumps states 1 and 2 together.
fn lumped_model() -> OnticModel {
    OnticModel::new("lumped", OnticStateSpace::numbered("s", 3).unwrap())
        .with_preparation("e1", Distribution::new(vec![0.5, 0.5, 0.0]).unwrap())
        .unwrap()
        .with_preparation("e2", Distribution::new(vec![0.5, 0.0, 0.5]).unwrap())
        .unwrap()
        .with_preparation("e3", Distribution::new(vec![0.0, 0.5, 0.5]).unwrap())
        .unwrap()
        .with_transformation("swap12", TransformationKernel::deterministic(vec![0, 2, 1]).unwrap())
        .unwrap()
        .with_measurement(Measurement::noninvasive_readout("r", vec!["+1", "-1"], &[0, 1, 1]).unwrap())
        .unwrap()
}

#[test]
fn preparation_equivalence() {
    let m = lumped_model();
    let probes = default_preparation_probes(&m);
    assert_eq!(probes.len(), 2);
    let same = preparations_equivalent(&m, "e1", "e1", &probes).unwrap();
    assert!(same.equivalent && same.max_deviation == 0.0);
    let hidden = preparations_equivalent(&m, "e1", "e2", &probes).unwrap();
    assert!(hidden.equivalent);
    let seen = preparations_equivalent(&m, "e1", "e3", &probes).unwrap();
    assert!(!seen.equivalent);
    assert!((seen.max_deviation - 0.5).abs() < 1e-15);
    assert!(seen.worst_probe.is_some());
}

#[test]
fn measurement_equivalence_ignores_updates() {
    let space = OnticStateSpace::numbered("s", 2).unwrap();
    let resp = ResponseFunction::deterministic(vec!["+1", "-1"], &[0, 1]).unwrap();
    let other = ResponseFunction::deterministic(vec!["-1", "+1"], &[1, 1]).unwrap();
    let m = OnticModel::new("m", space)
        .with_preparation("a", Distribution::point(2, 0))
        .unwrap()
        .with_preparation("b", Distribution::point(2, 1))
        .unwrap()
        .with_measurement(Measurement::new("keep", resp.clone(), MeasurementUpdate::identity(2, 2)).unwrap())
        .unwrap()
        .with_measurement(Measurement::new("reset", resp, MeasurementUpdate::collapse(2, &[1, 0]).unwrap()).unwrap())
        .unwrap()
        .with_measurement(Measurement::new("flipped", other, MeasurementUpdate::identity(2, 2)).unwrap())
        .unwrap()
        .with_measurement(Measurement::noninvasive_readout("ternary", vec!["+1", "-1", "0"], &[0, 1]).unwrap())
        .unwrap();
    let probes = default_measurement_probes(&m);
    assert!(measurements_equivalent(&m, "keep", "keep", &probes).unwrap().equivalent);
    assert!(measurements_equivalent(&m, "keep", "reset", &probes).unwrap().equivalent);
    let r = measurements_equivalent(&m, "keep", "flipped", &probes).unwrap();
    assert!(!r.equivalent && (r.max_deviation - 1.0).abs() < 1e-15);
    assert!(measurements_equivalent(&m, "keep", "ternary", &probes).is_err());
}

#[test]
fn operational_eigenstates() {
    let b = qubit_bundle(QubitOptions::new(1.0, 1.0)).unwrap();
    let z = vec!["Mz".to_string()];
    assert!(is_operational_eigenstate(&b.model, "z+", &z, "+1").unwrap());
    assert!(!is_operational_eigenstate(&b.model, "x+", &z, "+1").unwrap());
    assert!(!is_operational_eigenstate(&b.model, "z+", &z, "-1").unwrap());
    let m = lumped_model();
    let r = vec!["r".to_string()];
    // mixtures of -1 eigenstates stay -1 eigenstates
    let mix = Distribution::mixture(&[(0.3, m.preparation("e3").unwrap()), (0.7, &Distribution::point(3, 2))]).unwrap();
    assert!(is_operational_eigenstate_of(&m, &mix, &r, "-1").unwrap());
}
