//! Sequential-measurement protocols and the statistics they produce.

mod equivalence;
mod joint;
mod protocol;

pub use equivalence::{
    default_measurement_probes, default_preparation_probes, distributions_equivalent,
    is_operational_eigenstate, is_operational_eigenstate_of, measurements_equivalent,
    preparations_equivalent, EquivalenceReport, MeasurementProbe, PreparationProbe,
};
pub use joint::{Axis, JointDistribution, ObservableAssignment};
pub use protocol::{run_from, run_protocol, Protocol, Step};
