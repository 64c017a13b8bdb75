//! The `g_m` family, the identities linking its members, the main
//! recurrence, and the chain reducing it to one generator fewer.

mod chain;
pub mod families;
mod g;
mod rec;

use thiserror::Error;

use crate::series::SeriesError;

pub use chain::{chain_state, verify_chain, ChainReport, ChainState, ResidualMonomial, StageReport};
pub use g::{
    g_series, lemma2_subscripts, negative_convention, verify_eq_357, verify_lemma1, verify_lemma1_refined,
    verify_lemma2, verify_overline_symmetry, Eq357, GFamily,
};
pub use rec::{
    build_rec_row, damping_product, key_coefficient, limit_u, rec_residual, run_recurrence, stabilization_index,
    verify_key_lemma, RecRow,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecError {
    #[error("g_{m} lies outside the range covered by the negative-index convention")]
    ConventionOutOfRange { m: i64 },
    #[error("truncation must be nonnegative, got {0}")]
    NegativeTruncation(i64),
    #[error("index out of range: {0}")]
    InvalidIndex(String),
    #[error("coefficient of q^{exponent} still moves at ell = {ell}")]
    NotStabilized { ell: usize, exponent: i64 },
    #[error("the chain needs at least two generators")]
    NeedsTwoGenerators,
    #[error("chain broken at stage {0}")]
    ChainBroken(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
