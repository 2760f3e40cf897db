//! Manufactured-solution experiments: exact solution and source, truncation
//! profiling of the L1 operator, and convergence tables in time and space.

mod convergence;
mod manufactured;
mod truncation;

pub use convergence::{
    check_doubling, delay_node_study, elements_for, error_trace, spatial_study, temporal_study, ConvergenceTable, ErrorTrace,
    Fixed, StudyKind, TableRow,
};
pub use manufactured::{default_coefficients, ManufacturedCase, TimeFactor};
pub use truncation::{
    loglog_slope, truncation_error_profile, truncation_profile_with, TruncationEntry,
    TruncationProfile,
};
