//! Macrodefiniteness and the three macrorealist families.

mod class;
mod macrodef;
pub mod nnls;
mod verdict;

pub use class::{QuantityClass, QuantityClassSpec};
pub use macrodef::{check_macrodefinite, MacrodefiniteReport, MacrodefiniteWitness};
pub use verdict::{
    candidate_preparations, check_equilibrium_property, classify, eigenstate_preparations,
    operational_eigenstate_supports, CandidateResult, Classification, EquilibriumCheck,
    NuComponent, NuDecomposition, Verdict, DEFAULT_IMAGE_DEPTH,
};
