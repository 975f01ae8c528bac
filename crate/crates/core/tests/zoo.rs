mod common;

use std::f64::consts::PI;

use common::*;
use lglab::classify::{classify, Verdict, DEFAULT_IMAGE_DEPTH};
use lglab::lg::*;
use lglab::operational::{run_protocol, Protocol, Step};
use lglab::zoo::*;

fn single_shot(b: &lglab::Bundle, prep: &str, m: &str) -> f64 {
    let p = Protocol::new(prep, vec![Step::new(None, m, false), Step::measure(Some("T1"), m)]);
    run_protocol(&b.model, &p).unwrap().prob(&["+1"]).unwrap()
}

#[test]
fn qubit_single_shot_follows_born_rule() {
    for beta in [0.0, 0.3, PI / 2.0, 2.0, PI, 4.4, 6.0] {
        let b = qubit_bundle(QubitOptions::new(beta, 1.0)).unwrap();
        let z = single_shot(&b, "z+", "Mz");
        assert!((z - (beta / 2.0).cos().powi(2)).abs() < 1e-12, "beta {beta}");
        let x = single_shot(&b, "x+", "Mz");
        assert!((x - (1.0 - beta.sin()) / 2.0).abs() < 1e-12, "beta {beta}");
        let zm = single_shot(&b, "z-", "Mz");
        assert!((zm - (beta / 2.0).sin().powi(2)).abs() < 1e-12, "beta {beta}");
    }
}

#[test]
fn qubit_sequential_tables_match_state_vector_simulation() {
    for &(t1, t2) in &[(PI / 2.0, PI / 2.0), (TWO_PI_3, TWO_PI_3), (0.7, 5.1)] {
        let a = build_qubit_arrangement(t1, t2).unwrap();
        for mask in [[true; 3], [true, true, false], [true, false, true], [false, true, true]] {
            let j = a.run(mask).unwrap();
            for (h, p) in qubit_joint(t1, t2, mask) {
                let idx: Vec<usize> = h.iter().map(|&v| usize::from(v < 0)).collect();
                assert!((j.get(&idx) - p).abs() < 1e-12, "{mask:?} {h:?}");
            }
        }
    }
}

#[test]
fn quarter_turn_tables() {
    let a = build_qubit_arrangement(PI / 2.0, PI / 2.0).unwrap();
    let j = a.run([true, true, false]).unwrap();
    assert!((j.prob(&["+1", "+1"]).unwrap() - 0.5).abs() < 1e-12);
    assert!((j.prob(&["+1", "-1"]).unwrap() - 0.5).abs() < 1e-12);
    let j = a.run([true; 3]).unwrap();
    assert!((j.prob(&["+1", "+1", "+1"]).unwrap() - 0.25).abs() < 1e-12);
    assert!((j.prob(&["+1", "-1", "+1"]).unwrap() - 0.25).abs() < 1e-12);
}

#[test]
fn lean_qubit_gives_the_same_lg_value() {
    for &(t1, t2) in &[(TWO_PI_3, TWO_PI_3), (1.1, 0.2)] {
        let full = lg_value_pairwise(&build_qubit_arrangement(t1, t2).unwrap()).unwrap();
        let lean = qubit_bundle(QubitOptions::lean(t1, t2)).unwrap().arrangement(None).unwrap();
        assert!((lg_value_pairwise(&lean).unwrap() - full).abs() < 1e-12);
    }
}

#[test]
fn angles_outside_the_circle_are_rejected() {
    assert!(qubit_bundle(QubitOptions::new(-0.1, 1.0)).is_err());
    assert!(qubit_bundle(QubitOptions::new(1.0, 2.0 * PI)).is_err());
    assert!(bohm_bundle(f64::NAN, 1.0).is_err());
}

#[test]
fn superselected_never_violates() {
    let mut min = f64::INFINITY;
    for i in 0..=20 {
        for k in 0..=20 {
            let a = build_superselected_arrangement(i as f64 / 20.0, k as f64 / 20.0).unwrap();
            min = min.min(lg_value_pairwise(&a).unwrap());
        }
    }
    assert!(min >= -1.0);
    assert!(lg_value_pairwise(&build_superselected_arrangement(0.0, 0.0).unwrap()).unwrap() == 3.0);
    assert!(lg_value_pairwise(&build_superselected_arrangement(0.5, 0.5).unwrap()).unwrap().abs() < 1e-12);
}

#[test]
fn ks_sphere_reproduces_quantum_statistics_approximately() {
    let grid = KsGrid::fibonacci(10_000);
    assert!(ks_born_error(&grid, 50).unwrap() <= 2e-2);
    let (z, x) = ([0.0, 0.0, 1.0], [1.0, 0.0, 0.0]);
    assert!((grid.single_shot(&z, &z).unwrap() - 1.0).abs() < 1e-12);
    assert!((grid.single_shot(&z, &x).unwrap() - 0.5).abs() < 2e-2);
    let a = build_ks_arrangement(10_000, TWO_PI_3, TWO_PI_3).unwrap();
    assert!((lg_value_pairwise(&a).unwrap() - -1.5).abs() < 5e-2);
    assert!(ks_bundle(99, 1.0, 1.0).is_err());
}

#[test]
fn ks_born_error_shrinks_with_the_grid() {
    let coarse = ks_born_error(&KsGrid::fibonacci(400), 50).unwrap();
    let fine = ks_born_error(&KsGrid::fibonacci(10_000), 50).unwrap();
    assert!(fine < coarse);
}

#[test]
fn bohm_tables_equal_the_qubit_tables() {
    for &(t1, t2) in &[(TWO_PI_3, TWO_PI_3), (0.3, 2.9), (PI / 2.0, 4.0)] {
        let q = build_qubit_arrangement(t1, t2).unwrap();
        let b = build_bohm_arrangement(t1, t2).unwrap();
        for mask in [[true; 3], [true, true, false], [true, false, true], [false, true, true]] {
            let (jq, jb) = (q.run(mask).unwrap(), b.run(mask).unwrap());
            assert_eq!(jq.probs().len(), jb.probs().len());
            for (x, y) in jq.probs().iter().zip(jb.probs()) {
                assert!((x - y).abs() <= 1e-12, "{mask:?}");
            }
        }
    }
    let b = build_bohm_arrangement(TWO_PI_3, TWO_PI_3).unwrap();
    assert!((lg_value_pairwise(&b).unwrap() - -1.5).abs() < 1e-12);
}

#[test]
fn bohm_path_bit_is_macrodefinite() {
    let b = bohm_bundle(TWO_PI_3, TWO_PI_3).unwrap();
    let c = classify(&b.model, &b.class(None).unwrap(), DEFAULT_IMAGE_DEPTH).unwrap();
    assert!(c.macrodefinite.macrodefinite);
    assert_eq!(c.verdict, Verdict::Mr3);
}

#[test]
fn fixtures_build_and_verify() {
    assert_eq!(
        fixture_names(),
        ["lgi-holds-d-nonzero", "null-result-pair", "support-mr-minimal", "drifting-update"]
    );
    for name in fixture_names() {
        let b = build_fixture(name).unwrap();
        verify_fixture(name, &b).unwrap();
        assert_eq!(b.model.name(), name);
    }
    let r = disturbance_report(&build_fixture("lgi-holds-d-nonzero").unwrap().arrangement(None).unwrap()).unwrap();
    assert!(r.max_abs_d() > 0.1 && r.lg_pairwise >= -1.0);
    // a fixture re-checked against the wrong behaviour fails loudly
    let other = build_fixture("support-mr-minimal").unwrap();
    assert!(verify_fixture("drifting-update", &other).is_err());
}

#[test]
fn lookup_by_name() {
    let p = ZooParams::default();
    assert!(build("", &p).is_err());
    assert!(build("no-such-model", &p).is_err());
    let names: Vec<_> = catalog().iter().map(|e| e.name).collect();
    assert_eq!(names.len(), 10);
    for name in names {
        let p = ZooParams { grid: 400, ..ZooParams::default() };
        let b = build(name, &p).unwrap();
        b.validate().unwrap();
    }
    assert!(build("two-slit", &ZooParams { mod1_sq: 1.5, ..p }).is_err());
}
