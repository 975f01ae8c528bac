//! Two-slit interference at a single screen bin: closed forms for the
//! detection probabilities, the simplified Leggett-Garg quantity and the
//! disturbance caused by a which-slit measurement, plus a finite model that
//! the general engine can run.

use std::f64::consts::TAU;
use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use crate::bundle::Bundle;
use crate::error::{Error, Result};
use crate::lg::ArrangementSpec;
use crate::ontic::{Distribution, Measurement, MeasurementUpdate, OnticModel, OnticStateSpace, ResponseFunction, TransformationKernel};
use crate::operational::ObservableAssignment;
use crate::tolerance::{EPS_EQ, EPS_NORM};

/// Screen-bin amplitudes contributed by each slit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitAmplitudes {
    a1: Complex64,
    a2: Complex64,
}

impl SlitAmplitudes {
    pub fn new(a1: Complex64, a2: Complex64) -> Result<Self> {
        let s = Self { a1, a2 };
        if !(a1.is_finite() && a2.is_finite()) {
            return Err(Error::domain("slit amplitudes must be finite"));
        }
        for (name, p) in [("|psi1|^2", a1.norm_sqr()), ("|psi2|^2", a2.norm_sqr()), ("1/2 |psi1 + psi2|^2", s.both_open())] {
            if p > 1.0 + EPS_NORM {
                return Err(Error::domain(format!("{name} = {p} exceeds 1 for a screen bin")));
            }
        }
        Ok(s)
    }

    /// `ψ1 = √m1`, `ψ2 = √m2 · e^{iφ}`.
    pub fn from_moduli(mod1_sq: f64, mod2_sq: f64, phi: f64) -> Result<Self> {
        if !(mod1_sq >= 0.0 && mod2_sq >= 0.0) {
            return Err(Error::domain("squared moduli must be nonnegative"));
        }
        Self::new(
            Complex64::new(mod1_sq.sqrt(), 0.0),
            Complex64::from_polar(mod2_sq.sqrt(), phi),
        )
    }

    pub fn a1(&self) -> Complex64 {
        self.a1
    }

    pub fn a2(&self) -> Complex64 {
        self.a2
    }

    pub fn moduli(&self) -> (f64, f64) {
        (self.a1.norm(), self.a2.norm())
    }

    /// Phase of ψ2 relative to ψ1, in `[0, 2π)`.
    pub fn phase(&self) -> f64 {
        normalize_phase(self.a2.arg() - self.a1.arg()).0
    }

    fn cos_phi(&self) -> f64 {
        let (a, b) = self.moduli();
        if a == 0.0 || b == 0.0 {
            return 0.0;
        }
        (self.a1.conj() * self.a2).re / (a * b)
    }

    fn both_open(&self) -> f64 {
        0.5 * (self.a1 + self.a2).norm_sqr()
    }
}

/// Maps an angle into `[0, 2π)`; the flag reports whether it moved.
pub fn normalize_phase(phi: f64) -> (f64, bool) {
    let n = phi.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU
    let n = if n >= TAU { 0.0 } else { n };
    (n, n != phi)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectionProbabilities {
    /// `½|ψ1 + ψ2|²`
    pub both_open: f64,
    /// Slit 1 blocked: `|ψ2|²`.
    pub slit1_blocked: f64,
    /// Slit 2 blocked: `|ψ1|²`.
    pub slit2_blocked: f64,
}

pub fn detection_probabilities(s: &SlitAmplitudes) -> DetectionProbabilities {
    DetectionProbabilities {
        // at most 1 exactly; rounding can land one ulp above
        both_open: s.both_open().min(1.0),
        slit1_blocked: s.a2.norm_sqr().min(1.0),
        slit2_blocked: s.a1.norm_sqr().min(1.0),
    }
}

/// `both_open − ½(|ψ1|² + |ψ2|²) = |ψ1||ψ2| cos φ`.
pub fn interference_term(s: &SlitAmplitudes) -> f64 {
    let (a, b) = s.moduli();
    a * b * s.cos_phi()
}

/// `<Q⁺>_LG = 2|ψ1|(|ψ1| + |ψ2| cos φ) − 1`, for the assignment where slit 1
/// carries +1.
pub fn lg_plus_value(s: &SlitAmplitudes) -> f64 {
    let (a, b) = s.moduli();
    2.0 * a * (a + b * s.cos_phi()) - 1.0
}

/// The same quantity with the slit labels swapped.
pub fn lg_plus_mirrored(s: &SlitAmplitudes) -> f64 {
    let (a, b) = s.moduli();
    2.0 * b * (b + a * s.cos_phi()) - 1.0
}

/// Below −1 by more than the agreement tolerance.
pub fn is_violation(lg: f64) -> bool {
    lg < -1.0 - EPS_EQ
}

/// `D2(+1,+1) = |ψ1||ψ2| cos φ`.
pub fn disturbance_d2(s: &SlitAmplitudes) -> f64 {
    interference_term(s)
}

/// Labels used by [`compile_to_arrangement`].
pub mod names {
    pub const SOURCE: &str = "source";
    pub const SLIT1_OPEN: &str = "slit-1-open";
    pub const SLIT2_OPEN: &str = "slit-2-open";
    pub const M1: &str = "emitted";
    pub const M2: &str = "which-slit";
    pub const M3: &str = "screen-bin";
    pub const T1: &str = "to-slits";
    pub const T2: &str = "to-screen";
}

/// A finite model of the experiment whose engine statistics reproduce the
/// closed forms above. Slit 1 and "detected at the bin" carry +1.
pub fn compile_to_arrangement(s: &SlitAmplitudes) -> Result<Bundle> {
    use names::*;
    const STATES: [&str; 9] = [
        "source", "superposed", "slit-1", "slit-2", "screen-coherent", "screen-1", "screen-2", "at-x", "elsewhere",
    ];
    let [source, superposed, slit1, slit2, coherent, screen1, screen2, at_x, elsewhere] = [0, 1, 2, 3, 4, 5, 6, 7, 8];
    let n = STATES.len();
    let space = OnticStateSpace::new(STATES)?;
    let pm = || vec!["+1", "-1"];
    let det = detection_probabilities(s);

    let emitted = Measurement::noninvasive_readout(M1, pm(), &[0; 9])?;

    let mut which = vec![vec![1.0, 0.0]; n];
    which[superposed] = vec![0.5, 0.5];
    which[slit2] = vec![0.0, 1.0];
    let mut which_update = MeasurementUpdate::identity(n, 2).rows().to_vec();
    which_update[0][superposed] = Some(crate::ontic::KernelRow::Point(slit1));
    which_update[1][superposed] = Some(crate::ontic::KernelRow::Point(slit2));
    let which_slit = Measurement::new(
        M2,
        ResponseFunction::new(pm(), which)?,
        MeasurementUpdate::new(n, which_update, vec![])?,
    )?;

    let mut screen = vec![vec![0.0, 1.0]; n];
    screen[coherent] = vec![det.both_open, 1.0 - det.both_open];
    screen[screen1] = vec![det.slit2_blocked, 1.0 - det.slit2_blocked];
    screen[screen2] = vec![det.slit1_blocked, 1.0 - det.slit1_blocked];
    screen[at_x] = vec![1.0, 0.0];
    let screen_bin = Measurement::new(M3, ResponseFunction::new(pm(), screen)?, MeasurementUpdate::collapse(n, &[at_x, elsewhere])?)?;

    let mut to_slits: Vec<usize> = (0..n).collect();
    to_slits[source] = superposed;
    let mut to_screen: Vec<usize> = (0..n).collect();
    to_screen[superposed] = coherent;
    to_screen[slit1] = screen1;
    to_screen[slit2] = screen2;

    let mut model = OnticModel::new("two-slit", space)
        .with_preparation(SOURCE, Distribution::point(n, source))?
        .with_preparation(SLIT1_OPEN, Distribution::point(n, slit1))?
        .with_preparation(SLIT2_OPEN, Distribution::point(n, slit2))?
        .with_transformation(T1, TransformationKernel::deterministic(to_slits)?)?
        .with_transformation(T2, TransformationKernel::deterministic(to_screen)?)?
        .with_measurement(emitted)?
        .with_measurement(which_slit)?
        .with_measurement(screen_bin)?;
    let (a, b) = s.moduli();
    model.set_metadata("mod1", format!("{a:?}"));
    model.set_metadata("mod2", format!("{b:?}"));
    model.set_metadata("phi", format!("{:?}", s.phase()));
    Ok(Bundle::new(model).with_arrangement(
        "default",
        ArrangementSpec {
            preparation: SOURCE.into(),
            t1: Some(T1.into()),
            t2: Some(T2.into()),
            m1: M1.into(),
            m2: M2.into(),
            m3: M3.into(),
            values: ObservableAssignment::plus_minus(&[M1, M2, M3]),
        },
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ViolationRow {
    pub mod1_sq: f64,
    pub phi: f64,
    pub lg_plus: f64,
    pub lg_plus_mirrored: f64,
    /// Judged on `lg_plus`, the assignment with slit 1 as +1.
    pub violated: bool,
}

/// Sweeps `|ψ1|²` over `mod1_grid` with `|ψ2|² = 1 − |ψ1|²`, and φ over `phi_grid`.
pub fn violation_map(mod1_grid: &[f64], phi_grid: &[f64]) -> Result<Vec<ViolationRow>> {
    if mod1_grid.is_empty() || phi_grid.is_empty() {
        return Err(Error::domain("violation map needs non-empty grids"));
    }
    let mut rows = Vec::with_capacity(mod1_grid.len() * phi_grid.len());
    for &m in mod1_grid {
        if !(0.0..=1.0).contains(&m) {
            return Err(Error::domain(format!("|psi1|^2 = {m} outside [0, 1]")));
        }
        for &phi in phi_grid {
            let s = SlitAmplitudes::from_moduli(m, 1.0 - m, phi)?;
            let lg_plus = lg_plus_value(&s);
            rows.push(ViolationRow {
                mod1_sq: m,
                phi,
                lg_plus,
                lg_plus_mirrored: lg_plus_mirrored(&s),
                violated: is_violation(lg_plus),
            });
        }
    }
    Ok(rows)
}

/// Edges `cos φ = −|ψ1|/|ψ2|` of the violation region at one `|ψ1|²`.
/// The region is `phi_low < φ < phi_high`; absent when `|ψ1| > |ψ2|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryPoint {
    pub mod1_sq: f64,
    pub phi_low: f64,
    pub phi_high: f64,
}

pub fn boundary_curve(mod1_grid: &[f64]) -> Vec<BoundaryPoint> {
    mod1_grid
        .iter()
        .filter_map(|&m| {
            let (a, b) = (m.sqrt(), (1.0 - m).sqrt());
            (b > 0.0 && a <= b).then(|| {
                let low = (-a / b).acos();
                BoundaryPoint {
                    mod1_sq: m,
                    phi_low: low,
                    phi_high: TAU - low,
                }
            })
        })
        .collect()
}

/// Formats like C's `%.{sig}g`.
pub fn format_g(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let trim = |s: String| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    // Rounding can carry into the next decade, so format then re-check.
    let sci = format!("{:.*e}", sig - 1, x);
    let (mant, e) = sci.split_once('e').expect("scientific format");
    let e: i32 = e.parse().expect("exponent");
    if e < -4 || e >= sig as i32 {
        let sign = if e < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mant.to_string()), e.abs())
    } else {
        let decimals = (sig as i32 - 1 - e).max(0) as usize;
        trim(format!("{:.*}", decimals, x))
    }
}

/// Writes the map as CSV: `mod1_sq,phi,lg_plus,lg_plus_mirrored,violated`.
pub fn write_csv<W: Write>(rows: &[ViolationRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "mod1_sq,phi,lg_plus,lg_plus_mirrored,violated")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            format_g(r.mod1_sq, 12),
            format_g(r.phi, 12),
            format_g(r.lg_plus, 12),
            format_g(r.lg_plus_mirrored, 12),
            r.violated
        )?;
    }
    Ok(())
}
