//! Exact sequential-measurement statistics for finite ontic models.
//!
//! The crate is layered: [`ontic`] holds finite hidden-variable models,
//! [`operational`] runs protocols on them, [`lg`] computes Leggett-Garg
//! quantities and disturbance, [`classify`] sorts models into macrorealist
//! families, [`zoo`] ships ready-made models and [`twoslit`] covers the
//! two-slit closed forms. [`schema`] reads and writes the JSON model format.

mod bundle;
pub mod classify;
pub mod error;
pub mod lg;
pub mod ontic;
pub mod schema;
pub mod operational;
pub mod tolerance;
pub mod twoslit;
pub mod zoo;

pub use bundle::Bundle;
pub use error::{Error, Result};

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/ontic-models.md")]
    mod ontic_models {}
    #[doc = include_str!("../../../book/src/leggett-garg.md")]
    mod leggett_garg {}
    #[doc = include_str!("../../../book/src/noninvasiveness.md")]
    mod noninvasiveness {}
    #[doc = include_str!("../../../book/src/macrorealism.md")]
    mod macrorealism {}
    #[doc = include_str!("../../../book/src/zoo.md")]
    mod zoo {}
    #[doc = include_str!("../../../book/src/two-slit.md")]
    mod two_slit {}
    #[doc = include_str!("../../../book/src/model-files.md")]
    mod model_files {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
