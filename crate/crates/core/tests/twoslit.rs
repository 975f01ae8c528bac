use std::f64::consts::{PI, TAU};

use lglab::lg::disturbance_report;
use lglab::operational::{run_protocol, Protocol, Step};
use lglab::twoslit::names::*;
use lglab::twoslit::*;
use num_complex::Complex64;

fn grid(n: usize, hi: f64, closed: bool) -> Vec<f64> {
    let d = if closed { n - 1 } else { n };
    (0..n).map(|i| hi * i as f64 / d as f64).collect()
}

#[test]
fn detection_probability_examples() {
    let single = SlitAmplitudes::new(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.0)).unwrap();
    assert!((detection_probabilities(&single).both_open - 0.18).abs() < 1e-15);
    assert_eq!(disturbance_d2(&single), 0.0);

    let s = SlitAmplitudes::from_moduli(0.5, 0.5, 0.0).unwrap();
    assert!((detection_probabilities(&s).both_open - 1.0).abs() < 1e-15);
    assert!((interference_term(&s) - 0.5).abs() < 1e-15);
    let s = SlitAmplitudes::from_moduli(0.5, 0.5, PI).unwrap();
    assert!(detection_probabilities(&s).both_open.abs() < 1e-15);
    assert!((disturbance_d2(&s) - -0.5).abs() < 1e-15);

    assert!(SlitAmplitudes::from_moduli(0.9, 0.9, 0.0).is_err());
    assert!(SlitAmplitudes::from_moduli(-0.1, 0.5, 0.0).is_err());
    assert!(SlitAmplitudes::new(Complex64::new(f64::NAN, 0.0), Complex64::new(0.0, 0.0)).is_err());
}

#[test]
fn interference_term_identity() {
    for m in grid(7, 1.0, true) {
        for phi in grid(9, TAU, false) {
            let s = SlitAmplitudes::from_moduli(m, 1.0 - m, phi).unwrap();
            let p = detection_probabilities(&s);
            let cross = p.both_open - 0.5 * (p.slit1_blocked + p.slit2_blocked);
            assert!((cross - interference_term(&s)).abs() < 1e-12);
        }
    }
}

#[test]
fn lg_plus_examples() {
    let at = |m: f64, phi: f64| lg_plus_value(&SlitAmplitudes::from_moduli(m, 1.0 - m, phi).unwrap());
    assert!((at(0.5, PI) - -1.0).abs() < 1e-12);
    assert!(!is_violation(at(0.5, PI)));
    assert!((at(0.2, PI) - -1.4).abs() < 1e-12);
    assert!(is_violation(at(0.2, PI)));
    for m in grid(11, 1.0, true) {
        assert!((at(m, PI / 2.0) - (2.0 * m - 1.0)).abs() < 1e-12);
    }
    let s = SlitAmplitudes::from_moduli(0.8, 0.2, PI).unwrap();
    assert!((lg_plus_mirrored(&s) - -1.4).abs() < 1e-12);
    assert!(!is_violation(lg_plus_value(&s)));
}

#[test]
fn engine_reproduces_the_closed_forms() {
    for m in grid(20, 1.0, true) {
        for phi in grid(20, TAU, false) {
            let s = SlitAmplitudes::from_moduli(m, 1.0 - m, phi).unwrap();
            let (a, b) = s.moduli();
            let bundle = compile_to_arrangement(&s).unwrap();
            let arr = bundle.arrangement(None).unwrap();
            let all = arr.run([true; 3]).unwrap();
            assert!((all.prob(&["+1", "+1", "+1"]).unwrap() - 0.5 * a * a).abs() < 1e-12);
            assert!((all.prob(&["+1", "-1", "+1"]).unwrap() - 0.5 * b * b).abs() < 1e-12);
            let skip = arr.run([true, false, true]).unwrap();
            let want = detection_probabilities(&s).both_open;
            assert!((skip.prob(&["+1", "+1"]).unwrap() - want).abs() < 1e-12);

            let r = disturbance_report(&arr).unwrap();
            assert!((r.lg_pairwise - lg_plus_value(&s)).abs() < 1e-12, "{m} {phi}");
            assert!((r.d2_value("+1", "+1").unwrap() - disturbance_d2(&s)).abs() < 1e-12);
        }
    }
}

#[test]
fn blocking_a_slit_gives_the_single_slit_rate() {
    let s = SlitAmplitudes::from_moduli(0.3, 0.7, 1.0).unwrap();
    let b = compile_to_arrangement(&s).unwrap();
    let detect = |prep: &str| {
        let p = Protocol::new(prep, vec![Step::measure(Some(T2), M3)]);
        run_protocol(&b.model, &p).unwrap().prob(&["+1"]).unwrap()
    };
    assert!((detect(SLIT1_OPEN) - 0.3).abs() < 1e-12);
    assert!((detect(SLIT2_OPEN) - 0.7).abs() < 1e-12);
}

#[test]
fn violation_iff_below_the_boundary() {
    let rows = violation_map(&grid(101, 1.0, true), &grid(360, TAU, false)).unwrap();
    assert_eq!(rows.len(), 101 * 360);
    for r in &rows {
        let (a, b) = (r.mod1_sq.sqrt(), (1.0 - r.mod1_sq).sqrt());
        let lhs = r.phi.cos() * b;
        // on the boundary, including the whole |psi1| = 0 column
        if (r.lg_plus + 1.0).abs() <= 1e-9 {
            continue;
        }
        assert_eq!(r.violated, lhs < -a, "{} {}", r.mod1_sq, r.phi);
    }
    let quarter = violation_map(&grid(101, 1.0, true), &[PI / 2.0]).unwrap();
    assert!(quarter.iter().all(|r| !r.violated));
    assert!(violation_map(&[], &[0.0]).is_err());
    assert!(violation_map(&[1.2], &[0.0]).is_err());
}

#[test]
fn boundary_curve_brackets_the_violations() {
    let mods = grid(21, 1.0, true);
    for p in boundary_curve(&mods) {
        let s = |phi: f64| lg_plus_value(&SlitAmplitudes::from_moduli(p.mod1_sq, 1.0 - p.mod1_sq, phi).unwrap());
        assert!((s(p.phi_low) - -1.0).abs() < 1e-9);
        assert!((s(p.phi_high) - -1.0).abs() < 1e-9);
        if p.phi_high - p.phi_low > 1e-6 {
            assert!(s(PI) <= -1.0);
        }
    }
    assert!(boundary_curve(&[0.8]).is_empty());
}

#[test]
fn csv_layout() {
    let rows = violation_map(&[0.2], &[PI, 1.0 / 3.0]).unwrap();
    let mut out = Vec::new();
    write_csv(&rows, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "mod1_sq,phi,lg_plus,lg_plus_mirrored,violated");
    assert_eq!(lines[1], "0.2,3.14159265359,-1.4,-0.2,true");
    assert!(lines[2].starts_with("0.2,0.333333333333,"));
    assert!(lines[2].ends_with(",false"));
}

#[test]
fn phases_are_normalized_into_one_turn() {
    assert_eq!(normalize_phase(1.0), (1.0, false));
    let (p, moved) = normalize_phase(-PI / 2.0);
    assert!(moved && (p - 1.5 * PI).abs() < 1e-15);
    let (p, moved) = normalize_phase(TAU);
    assert!(moved && p == 0.0);
    let s = SlitAmplitudes::from_moduli(0.3, 0.3, 7.0).unwrap();
    assert!((s.phase() - (7.0 - TAU)).abs() < 1e-12);
}
