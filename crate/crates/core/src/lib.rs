//! Exact verification of a partition identity with difference conditions:
//! overpartitions into parts congruent to some `-a(j)` modulo `N` are
//! equinumerous with overpartitions obeying weight-indexed gap conditions,
//! refined by the number of non-overlined parts.
//!
//! The crate counts both sides of the identity by brute force, builds the
//! generating functions as exact truncated q-series, and checks every
//! recurrence and q-difference equation used to connect them.

pub mod alpha_system;
pub mod enumeration;
pub mod recurrence;
pub mod series;
pub mod verify;

pub use alpha_system::{AlphaSystem, SystemError, SystemSpec};
pub use enumeration::{CountTable, EnumError, LargestPart, Overpartition, Part};
pub use recurrence::{ChainReport, RecError, RecRow};
pub use series::{DPoly, LaurentPoly, Monomial, QLaurent, SeriesError, XSeries};
pub use verify::{Check, CheckResult, Params, VerificationReport};
