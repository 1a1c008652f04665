use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("columns do not generate the full integer lattice")]
    NotFullLattice,

    #[error("cone is not pointed (a nonzero column lies in the minimal face)")]
    NotPointed,

    #[error("cone is not full-dimensional")]
    NotFullDimensional,

    #[error("sublattice check failed: {0:?} is not in the ambient lattice")]
    NotSublattice(Vec<String>),

    #[error("lattice index is infinite")]
    InfiniteIndex,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("search bound exceeded: {0}")]
    LimitExceeded(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
