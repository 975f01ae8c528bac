use std::sync::Arc;

use lglab::classify::{classify, QuantityClass, QuantityClassSpec, Verdict};
use lglab::lg::*;
use lglab::ontic::*;
use lglab::operational::{is_operational_eigenstate_of, ObservableAssignment};
use lglab::schema::{from_document, to_document};
use lglab::zoo::{random_bundle, RandomModelOptions};
use lglab::Bundle;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn model(seed: u64, oni: bool) -> Bundle {
    let opts = RandomModelOptions {
        noninvasive_m1_m2: oni,
        ..RandomModelOptions::default()
    };
    random_bundle(&mut ChaCha8Rng::seed_from_u64(seed), &opts).unwrap()
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

/// A fully deterministic random model with point preparations added on one
/// state of each `M1` value, when both values occur.
fn macrodefinite_model(seed: u64) -> Option<Bundle> {
    let opts = RandomModelOptions {
        deterministic_rate: 1.0,
        ..RandomModelOptions::default()
    };
    let b = random_bundle(&mut ChaCha8Rng::seed_from_u64(seed), &opts).unwrap();
    let mut m = (*b.model).clone();
    let m1 = m.measurement("M1").unwrap().clone();
    let n = m.dim();
    let plus = (0..n).find(|&s| m1.response().prob(s, 0) == 1.0)?;
    let minus = (0..n).find(|&s| m1.response().prob(s, 1) == 1.0)?;
    m.add_preparation("e+", Distribution::point(n, plus)).unwrap();
    m.add_preparation("e-", Distribution::point(n, minus)).unwrap();
    let mut out = b.clone();
    out.model = Arc::new(m);
    Some(out.with_class("Q", &["M1"]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn composition_stays_normalized(seed in any::<u64>()) {
        let b = model(seed, false);
        let m = &b.model;
        for mu in m.preparations().values() {
            for t in m.transformations().values() {
                let out = compose_preparation(mu, t).unwrap();
                prop_assert!((out.weights().iter().sum::<f64>() - 1.0).abs() <= 1e-9);
                for meas in m.measurements().values() {
                    let p = single_shot_distribution(mu, Some(t), meas).unwrap();
                    prop_assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
                }
            }
        }
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let b = model(seed, false);
        let m = &b.model;
        let (t1, t2) = (m.transformation("T1").unwrap(), m.transformation("T2").unwrap());
        let mu = m.preparation("E").unwrap();
        let stepwise = compose_preparation(&compose_preparation(mu, t1).unwrap(), t2).unwrap();
        let fused = compose_preparation(mu, &t1.then(t2).unwrap()).unwrap();
        prop_assert!(close(stepwise.weights(), fused.weights(), 1e-12));
    }

    #[test]
    fn noninvasive_measurements_leave_every_distribution_alone(seed in any::<u64>(), w in prop::collection::vec(0.01f64..1.0, 8)) {
        let b = model(seed, true);
        let m1 = b.model.measurement("M1").unwrap();
        prop_assert!(is_ontically_noninvasive(m1, None).unwrap().noninvasive);
        let n = b.model.dim();
        let total: f64 = w[..n].iter().sum();
        let mu: Vec<f64> = w[..n].iter().map(|x| x / total).collect();
        prop_assert!(close(&m1.nonselective(&mu), &mu, 1e-15));
    }

    #[test]
    fn lg_identities_hold_on_random_models(seed in any::<u64>()) {
        let a = model(seed, false).arrangement(None).unwrap();
        let r = disturbance_report(&a).unwrap();
        prop_assert!(r.decomposition_residual.abs() <= 1e-12);
        prop_assert!(r.lg_all_three >= -1.0 - 1e-12 && r.lg_all_three <= 3.0 + 1e-12);
        // the last measurement cannot signal backwards
        prop_assert!(r.max_abs_d3() <= 1e-12);
        let skip = a.run([true, true, false]).unwrap();
        let marg = a.run([true; 3]).unwrap().marginalize(&[0, 1]).unwrap();
        prop_assert!(close(skip.probs(), marg.probs(), 1e-12));
        if r.lg_pairwise < -1.0 - 1e-9 {
            prop_assert!(r.max_abs_d() > 0.0);
        }
    }

    #[test]
    fn implication_chain_never_breaks(seed in any::<u64>(), oni in any::<bool>()) {
        let a = model(seed, oni).arrangement(None).unwrap();
        let rec = check_implication_chain(&a, 1).unwrap();
        let (o, c, s, l) = rec.as_tuple();
        prop_assert!(!o || c);
        prop_assert!(!c || s);
        prop_assert!(!s || l);
        if oni {
            prop_assert!(o && rec.lg_pairwise >= -1.0 - 1e-9);
        }
    }

    #[test]
    fn expectation_is_linear_in_the_values(seed in any::<u64>(), x in -3.0f64..3.0, y in -3.0f64..3.0, c in -2.0f64..2.0) {
        let a = model(seed, false).arrangement(None).unwrap();
        let j = a.run([true; 3]).unwrap();
        let with = |v: f64, w: f64| ObservableAssignment::plus_minus(&["M2", "M3"]).with("M1", [("+1", v), ("-1", w)]);
        let lhs = j.expectation(&with(x + c * y, y - c * x), &[0, 2]).unwrap();
        let rhs = j.expectation(&with(x, y), &[0, 2]).unwrap() + c * j.expectation(&with(y, -x), &[0, 2]).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12);
    }

    #[test]
    fn eigenstates_are_closed_under_mixing(seed in any::<u64>(), w in prop::collection::vec(0.0f64..1.0, 16), c in 0.0f64..1.0) {
        let Some(b) = macrodefinite_model(seed) else { return Ok(()) };
        let m = &b.model;
        let class = vec!["M1".to_string()];
        let m1 = m.measurement("M1").unwrap();
        let plus: Vec<usize> = (0..m.dim()).filter(|&s| m1.response().prob(s, 0) == 1.0).collect();
        let draw = |off: usize| {
            let mut v = vec![0.0; m.dim()];
            for (k, &s) in plus.iter().enumerate() {
                v[s] = w[off + k] + 1e-3;
            }
            let t: f64 = v.iter().sum();
            Distribution::new(v.into_iter().map(|x| x / t).collect()).unwrap()
        };
        let (a, b2) = (draw(0), draw(8));
        prop_assert!(is_operational_eigenstate_of(m, &a, &class, "+1").unwrap());
        prop_assert!(is_operational_eigenstate_of(m, &b2, &class, "+1").unwrap());
        let mix = Distribution::mixture(&[(c, &a), (1.0 - c, &b2)]).unwrap();
        prop_assert!(is_operational_eigenstate_of(m, &mix, &class, "+1").unwrap());
    }

    #[test]
    fn verdicts_are_consistent_and_label_free(seed in any::<u64>()) {
        let Some(b) = macrodefinite_model(seed) else { return Ok(()) };
        let class = b.class(Some("Q")).unwrap();
        let c = classify(&b.model, &class, 2).unwrap();
        prop_assert!(c.macrodefinite.macrodefinite);
        for cand in &c.candidates {
            prop_assert!(!cand.in_hull || cand.support_contained);
        }
        match c.verdict {
            Verdict::Mr1 => prop_assert!(c.candidates.iter().all(|x| x.in_hull)),
            Verdict::Mr2 => prop_assert!(c.candidates.iter().all(|x| x.support_contained)),
            Verdict::Mr3 => prop_assert!(c.candidates.iter().any(|x| !x.novel_states.is_empty())),
            Verdict::NotMr => prop_assert!(false, "macrodefinite model classified not-MR"),
        }
        if let Some(nu) = &c.nu_decomposition {
            let m1 = b.model.measurement("M1").unwrap();
            for comp in &nu.components {
                let q = m1.outcome_index(&comp.value).unwrap();
                for (state, &x) in &comp.nu {
                    let s = b.model.space().index_of(state).unwrap();
                    prop_assert!(x > 0.0 && m1.response().prob(s, q) == 1.0);
                }
            }
        }

        let mut doc = to_document(&b);
        doc.ontic_states.reverse();
        doc.preparations.reverse();
        let shuffled = from_document(&doc).unwrap();
        let again = classify(&shuffled.model, &QuantityClass::new(&shuffled.model, &QuantityClassSpec { label: "Q".into(), measurements: vec!["M1".into()] }).unwrap(), 2).unwrap();
        prop_assert_eq!(again.verdict, c.verdict);
    }
}
