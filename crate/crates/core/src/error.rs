//! Error type shared by every computation in the crate.

use thiserror::Error;

/// Everything that can go wrong in an exact computation.
///
/// `PrecisionExhausted` is the only error expected in normal operation:
/// it fires whenever a pivot or valuation lands inside the precision
/// guard zone of a truncated ring, where the answer can no longer be
/// certified. The verification failures (`Witness`, `Mismatch`,
/// `Exactness`, `NoLift`) signal either corrupted input or an
/// implementation bug, since the identities they check are theorems.
#[derive(Debug, Error)]
pub enum Error {
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("order is not maximal at {prime}: {detail}")]
    NotMaximal { prime: u64, detail: String },

    #[error("no Eisenstein form: {0}")]
    NoEisensteinForm(String),

    #[error("witness identity failed: {0}")]
    WitnessFailure(String),

    #[error("homology mismatch: {0}")]
    MismatchFailure(String),

    #[error("long exact sequence fails at {0}")]
    ExactnessFailure(String),

    #[error("no chain-map lift exists: {0}")]
    NoLift(String),

    #[error("unsupported coefficients: {0}")]
    UnsupportedCoefficients(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
