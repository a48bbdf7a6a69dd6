//! End-to-end certification: period data, separation constants and the
//! membership decision.

pub mod constants;
pub mod decide;
pub mod liouville;
pub mod period;
pub mod smale;
pub mod synthetic;

pub use constants::{
    assemble_constants, assemble_constants_with, lemma_constant_c, weil_height_rational, ConstantsCache,
    Provenance, SeparationConstants,
};
pub use decide::{decide, Verdict};
pub use period::{load_period_data, load_period_files, PeriodData, PeriodFile};
