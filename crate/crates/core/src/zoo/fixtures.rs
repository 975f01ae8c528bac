//! Hand-built models that witness specific claims. Each one is checked
//! against its expected behaviour every time it is built.

use crate::bundle::Bundle;
use crate::classify::{check_equilibrium_property, classify, Verdict, DEFAULT_IMAGE_DEPTH};
use crate::error::{Error, Result};
use crate::lg::{
    check_implication_chain, disturbance_report, post_select_noninvasive, ArrangementSpec, KeptOutcome,
    DEFAULT_OPND_DEPTH,
};
use crate::ontic::{
    Distribution, KernelRow, Measurement, MeasurementUpdate, OnticModel, OnticStateSpace, ResponseFunction,
};
use crate::operational::{Protocol, Step};
use crate::zoo::qubit::pm;

pub const LGI_HOLDS_D_NONZERO: &str = "lgi-holds-d-nonzero";
pub const NULL_RESULT_PAIR: &str = "null-result-pair";
pub const SUPPORT_MR_MINIMAL: &str = "support-mr-minimal";
pub const DRIFTING_UPDATE: &str = "drifting-update";

/// Kick probability used by the shipped `lgi-holds-d-nonzero` fixture.
pub const LGI_FIXTURE_KICK: f64 = 0.5;

pub fn fixture_names() -> [&'static str; 4] {
    [LGI_HOLDS_D_NONZERO, NULL_RESULT_PAIR, SUPPORT_MR_MINIMAL, DRIFTING_UPDATE]
}

fn three_times(bundle: Bundle, prep: &str, m: [&str; 3]) -> Bundle {
    let steps = m.iter().map(|x| Step::measure(None, x)).collect();
    bundle
        .with_protocol("all-three", Protocol::new(prep, steps))
        .with_arrangement("default", ArrangementSpec::plus_minus(prep, None, None, m))
}

/// Two states read out deterministically; each readout flips the state with
/// probability `kick`. Nothing happens between measurements.
pub fn kicked_readout_bundle(kick: f64) -> Result<Bundle> {
    if !(0.0..=1.0).contains(&kick) {
        return Err(Error::domain(format!("kick = {kick} is outside [0, 1]")));
    }
    let kicked = |from: usize| Distribution::new(if from == 0 { vec![1.0 - kick, kick] } else { vec![kick, 1.0 - kick] });
    let pool = vec![kicked(0)?, kicked(1)?];
    let rows = vec![vec![Some(KernelRow::Shared(0)), None], vec![None, Some(KernelRow::Shared(1))]];
    let m = Measurement::new(
        "m",
        ResponseFunction::deterministic(pm(), &[0, 1])?,
        MeasurementUpdate::new(2, rows, pool)?,
    )?;
    let mut model = OnticModel::new(LGI_HOLDS_D_NONZERO, OnticStateSpace::new(["up", "down"])?)
        .with_preparation("u", Distribution::point(2, 0))?
        .with_preparation("d", Distribution::point(2, 1))?
        .with_measurement(m)?;
    model.set_metadata("kick", format!("{kick:?}"));
    Ok(three_times(Bundle::new(model).with_class("Q", &["m"]), "u", ["m"; 3]))
}

fn null_result_pair() -> Result<Bundle> {
    // a+ b+ carry +1, a- b- carry -1
    let [ap, bp, am, bm] = [0, 1, 2, 3];
    let values = [0, 0, 1, 1];
    let p = KernelRow::Point;
    // M' leaves -1 states alone and swaps the +1 microstates; M'' the reverse.
    let m_prime = Measurement::new(
        "m-prime",
        ResponseFunction::deterministic(pm(), &values)?,
        MeasurementUpdate::new(4, vec![vec![Some(p(bp)), Some(p(ap)), None, None], vec![None, None, Some(p(am)), Some(p(bm))]], vec![])?,
    )?;
    let m_double_prime = Measurement::new(
        "m-double-prime",
        ResponseFunction::deterministic(pm(), &values)?,
        MeasurementUpdate::new(4, vec![vec![Some(p(ap)), Some(p(bp)), None, None], vec![None, None, Some(p(bm)), Some(p(am))]], vec![])?,
    )?;
    let model = OnticModel::new(NULL_RESULT_PAIR, OnticStateSpace::new(["a+", "b+", "a-", "b-"])?)
        .with_preparation("mixed", Distribution::new(vec![0.1, 0.2, 0.3, 0.4])?)?
        .with_preparation("a-plus", Distribution::point(4, ap))?
        .with_preparation("b-minus", Distribution::point(4, bm))?
        .with_measurement(m_prime)?
        .with_measurement(m_double_prime)?;
    Ok(three_times(
        Bundle::new(model).with_class("Q", &["m-prime", "m-double-prime"]),
        "mixed",
        ["m-prime", "m-double-prime", "m-prime"],
    ))
}

fn support_mr_minimal() -> Result<Bundle> {
    let model = OnticModel::new(SUPPORT_MR_MINIMAL, OnticStateSpace::new(["l1", "l2", "l3"])?)
        .with_preparation("e-plus", Distribution::point(3, 0))?
        .with_preparation("e-minus", Distribution::new(vec![0.0, 0.5, 0.5])?)?
        .with_preparation("mu", Distribution::new(vec![0.5, 0.5, 0.0])?)?
        .with_measurement(Measurement::noninvasive_readout("m", pm(), &[0, 1, 1])?)?;
    Ok(three_times(Bundle::new(model).with_class("Q", &["m"]), "mu", ["m"; 3]))
}

fn drifting_update() -> Result<Bundle> {
    let p = KernelRow::Point;
    let m = Measurement::new(
        "m",
        ResponseFunction::deterministic(pm(), &[0, 0, 1])?,
        MeasurementUpdate::new(3, vec![vec![Some(p(1)), Some(p(1)), None], vec![None, None, Some(p(2))]], vec![])?,
    )?;
    let model = OnticModel::new(DRIFTING_UPDATE, OnticStateSpace::new(["l1", "l2", "l3"])?)
        .with_preparation("plus", Distribution::point(3, 0))?
        .with_preparation("minus", Distribution::point(3, 2))?
        .with_measurement(m)?;
    Ok(three_times(Bundle::new(model).with_class("Q", &["m"]), "plus", ["m"; 3]))
}

fn expect(cond: bool, fixture: &str, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::EngineDefect(format!("fixture `{fixture}`: {}", what())))
    }
}

/// Re-checks the behaviour a fixture exists to demonstrate.
pub fn verify_fixture(name: &str, b: &Bundle) -> Result<()> {
    match name {
        LGI_HOLDS_D_NONZERO => {
            let a = b.arrangement(None)?;
            let r = disturbance_report(&a)?;
            expect(r.max_abs_d() > 0.1, name, || format!("max|D| = {}", r.max_abs_d()))?;
            expect(r.lg_pairwise >= -1.0, name, || format!("lg_pairwise = {}", r.lg_pairwise))?;
            let chain = check_implication_chain(&a, DEFAULT_OPND_DEPTH)?;
            expect(chain.as_tuple() == (false, false, false, true), name, || format!("chain {:?}", chain.as_tuple()))
        }
        NULL_RESULT_PAIR => {
            let r = post_select_noninvasive(
                &b.model,
                &KeptOutcome::new("m-prime", "-1"),
                &KeptOutcome::new("m-double-prime", "+1"),
            )?;
            expect(r.max_deviation_from_input() <= 1e-12, name, || {
                format!("composite moves the state by {}", r.max_deviation_from_input())
            })
        }
        SUPPORT_MR_MINIMAL => {
            let c = classify(&b.model, &b.class(None)?, DEFAULT_IMAGE_DEPTH)?;
            expect(c.verdict == Verdict::Mr2, name, || format!("verdict {}", c.verdict))
        }
        DRIFTING_UPDATE => {
            let e = check_equilibrium_property(&b.model, &b.class(None)?, "m")?;
            expect(!e.holds, name, || "eigenstate preparation is a fixed point".into())
        }
        _ => Err(Error::unknown("fixture", name)),
    }
}

/// Builds and verifies a fixture by name.
pub fn build_fixture(name: &str) -> Result<Bundle> {
    let b = match name {
        LGI_HOLDS_D_NONZERO => kicked_readout_bundle(LGI_FIXTURE_KICK)?,
        NULL_RESULT_PAIR => null_result_pair()?,
        SUPPORT_MR_MINIMAL => support_mr_minimal()?,
        DRIFTING_UPDATE => drifting_update()?,
        _ => return Err(Error::unknown("fixture", name)),
    };
    verify_fixture(name, &b)?;
    Ok(b)
}
