//! Leggett-Garg quantities, disturbance, operational non-disturbance and the
//! implication chain from ontic noninvasiveness down to the inequality.

mod arrangement;
mod chain;
mod opnd;
mod postselect;
mod values;

pub use arrangement::{ArrangementSpec, LgArrangement};
pub use chain::{check_implication_chain, specific_contexts, ChainRecord, DEFAULT_OPND_DEPTH};
pub use opnd::{
    check_opnd, check_opnd_complete, check_opnd_complete_with, check_opnd_in, opnd_contexts,
    opnd_deviation, OpndCheck, OpndCompleteCheck, OpndContext,
};
pub use postselect::{post_select_noninvasive, KeptOutcome, PostSelection, PostSelectionReport};
pub use values::{
    disturbance_report, lg_value_all_three, lg_value_pairwise, DisturbanceEntry, DisturbanceReport,
};
