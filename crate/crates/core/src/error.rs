use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("indeterminate root set: the zero polynomial vanishes everywhere")]
    IndeterminateRootSet,

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("reference charge vanishes on the interval")]
    ReferenceChargeVanishes,

    #[error("search not exhaustive: {0}")]
    SearchNotExhaustive(String),

    /// A bound derivation could not be closed; the message names the open
    /// direction.
    #[error("bound chain does not close: {0}")]
    BoundChainOpen(String),

    #[error("criterion requires <v,v> > 0, got {0}")]
    NonPositiveSquare(i64),

    #[error("unsupported reference class: {0}")]
    UnsupportedReference(String),

    #[error("pairing is not integral: {0}")]
    NonIntegralPairing(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}
