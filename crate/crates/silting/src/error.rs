//! Error type shared across the crate.
//!
//! Exit-code mapping for the CLI and the C API lives here as well:
//! input problems map to 2, mathematical failures to 1, exceeded caps to 3.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A relation contains a path of length < 2, or a path that does not compose.
    #[error("non-admissible relation: {0}")]
    NonAdmissibleRelation(String),

    /// The number of paths below the nilpotency bound exceeded the configured cap.
    #[error("path explosion: {count} paths of length < {bound} exceed cap {cap}")]
    PathExplosion {
        count: usize,
        bound: usize,
        cap: usize,
    },

    /// Two objects over different algebra instances were combined.
    #[error("objects belong to different algebras")]
    AlgebraMismatch,

    /// The Las Vegas idempotent search, including the exhaustive fallback,
    /// found no splitting although the endomorphism algebra is not local.
    /// Signals a field-theoretic obstruction (division algebra quotient).
    #[error("idempotent search exhausted on a non-local endomorphism algebra")]
    IdempotentSearchExhausted,

    /// `complements` was called with a summand count other than n - 1.
    #[error("expected an almost complete rigid presentation with {expected} summands, got {got}")]
    NotAlmostComplete { expected: usize, got: usize },

    /// An operation required a rigid input.
    #[error("input is not rigid: {0}")]
    NotRigid(String),

    /// A mutation cone failed to reduce to a two-term complex.
    /// This is an internal invariant violation and must never fire on valid input.
    #[error("mutation cone did not reduce to a two-term complex")]
    ConeNotTwoTerm,

    /// Pool-based completion hit the configured cap before reaching n summands.
    #[error("candidate pool exhausted at cap {cap} before completion ({found}/{needed} summands)")]
    PoolExhausted {
        cap: usize,
        found: usize,
        needed: usize,
    },

    /// The shifted-summand swap loop did not terminate; must never fire.
    #[error("shifted-summand swap loop exceeded its iteration bound")]
    SwapCycle,

    /// Exchange-graph enumeration hit the vertex cap.
    #[error("exchange graph enumeration exceeded the vertex cap {cap}")]
    CapExceeded { cap: usize },

    /// Malformed input files, handles or flags.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An internal consistency check failed. Always a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code, also used as the C API status code.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonAdmissibleRelation(_) | Error::InvalidInput(_) => 2,
            Error::PathExplosion { .. }
            | Error::PoolExhausted { .. }
            | Error::CapExceeded { .. } => 3,
            _ => 1,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
