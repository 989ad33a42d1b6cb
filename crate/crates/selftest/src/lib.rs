//! Independent oracles and the acceptance criteria for `ufact`.

pub mod criteria;
pub mod oracle;

pub use criteria::{criteria, run, run_all, CriterionResult, KNOWN_UNATTAINABLE};
