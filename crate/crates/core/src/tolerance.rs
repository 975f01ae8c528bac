//! Numerical tolerances shared by every analysis.
//!
//! Reports embed these values so that a result can be interpreted without
//! access to the source.

use serde::Serialize;

/// Accepted deviation of a probability row from unit sum on input.
pub const EPS_NORM: f64 = 1e-9;

/// Weights at or below this value are treated as outside a support.
pub const EPS_SUPP: f64 = 1e-12;

/// Agreement threshold for operational statistics (equivalence, OPND, LGI).
pub const EPS_EQ: f64 = 1e-9;

/// Total-variation residual below which a preparation counts as a mixture.
pub const EPS_HULL: f64 = 1e-8;

/// Bound on the Leggett-Garg decomposition residual. The identity is exact,
/// so anything larger is an engine defect.
pub const EPS_IDENTITY: f64 = 1e-12;

/// Snapshot of the tolerances in force, for embedding in reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub eps_norm: f64,
    pub eps_supp: f64,
    pub eps_eq: f64,
    pub eps_hull: f64,
    pub eps_identity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps_norm: EPS_NORM,
            eps_supp: EPS_SUPP,
            eps_eq: EPS_EQ,
            eps_hull: EPS_HULL,
            eps_identity: EPS_IDENTITY,
        }
    }
}
