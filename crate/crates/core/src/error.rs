use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime >= 5")]
    InvalidPrime(u32),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("matrix is singular mod {0}")]
    Singular(u32),
    #[error("invalid group parameters: {0}")]
    InvalidParameters(String),
    #[error("element is not a member of the group")]
    NotInGroup,
    #[error("not a subgroup of the given group")]
    NotASubgroup,
    #[error("expected two distinct involutions")]
    NotInvolutionPair,
    #[error("triple does not generate the group")]
    NotGenerating,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no qualifying element found: {0}")]
    SearchFailed(String),
    #[error("geometry is not a map: {0}")]
    NotAMap(String),
    #[error("group order {order} exceeds budget {budget}")]
    BudgetExceeded { order: usize, budget: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
