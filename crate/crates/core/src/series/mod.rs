//! Exact series arithmetic in `q`, the marker `d`, and an auxiliary `x`.

mod dpoly;
mod laurent;
mod qlaurent;
mod special;
mod xseries;

use thiserror::Error;

pub use dpoly::DPoly;
pub use laurent::LaurentPoly;
pub use qlaurent::{Monomial, QLaurent, SeriesJson};
pub use special::{pochhammer, product_distinct, product_f, qbinomial, Factors};
pub use xseries::{add_lowering, XSeries};

pub(crate) use qlaurent::bigint_string;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: i64, right: i64 },
    #[error("x-truncation mismatch: {left} vs {right}")]
    XTruncationMismatch { left: usize, right: usize },
    #[error("cannot raise precision to q^{requested}: series is exact only through q^{available}")]
    PrecisionUnavailable { requested: i64, available: i64 },
    #[error("divisor does not have constant term 1")]
    NonUnitLeadingTerm,
    #[error("infinite product with offset {offset_exp} and step {step_exp} does not converge")]
    NonConvergent { offset_exp: i64, step_exp: i64 },
    #[error("empty coefficient list")]
    Empty,
}
