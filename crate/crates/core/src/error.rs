use thiserror::Error;

/// Errors raised by the engine. Variants ending in `Failure` signal a broken
/// internal identity and should never occur on valid input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("composition of differentials is nonzero")]
    CompositionNonzero,
    #[error("resource cap exceeded: {what} needs dimension {needed}, cap is {cap}")]
    ResourceCap { what: String, needed: u128, cap: u128 },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("algebra is not unital: {0}")]
    NotUnital(String),
    #[error("not an algebra automorphism: {0}")]
    NotAutomorphism(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid coset section: {0}")]
    InvalidSection(String),
    #[error("empty set")]
    EmptySet,
    #[error("truncation too small: {0}")]
    Truncation(String),
    #[error("operator is not well defined on the quotient: {0}")]
    WellDefinednessFailure(String),
    #[error("expected an invertible map: {0}")]
    InvertibilityFailure(String),
    #[error("identity check failed: {0}")]
    IdentityFailure(String),
}

impl Error {
    /// Whether the error reports a broken identity rather than bad input or
    /// a resource limit.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::CompositionNonzero
                | Error::WellDefinednessFailure(_)
                | Error::InvertibilityFailure(_)
                | Error::IdentityFailure(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
