//! Finite ontic models: state spaces, preparations, transformation kernels,
//! response functions and measurement updates.

mod distribution;
mod kernel;
mod measurement;
mod model;
mod ops;
mod space;

pub use distribution::Distribution;
pub(crate) use distribution::{max_abs_diff, total_variation};
pub use kernel::{KernelRow, TransformationKernel};
pub use measurement::{Measurement, MeasurementUpdate, ResponseFunction};
pub use model::OnticModel;
pub use ops::{
    compose_preparation, is_ontically_noninvasive, single_shot_distribution,
    single_shot_probability, OniCheck,
};
pub use space::OnticStateSpace;
