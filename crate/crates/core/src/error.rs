use thiserror::Error;

/// Errors raised while building the combinatorial models.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The arrangement description could not be parsed or failed validation.
    #[error("invalid arrangement: {0}")]
    Spec(String),

    /// The character lattice is not spanned (up to finite index) by the characters.
    #[error("arrangement is not essential (character rank {rank} < {dim})")]
    NotEssential { rank: usize, dim: usize },

    /// The hyperplane normals handed to face enumeration do not span the space.
    #[error("hyperplane normals do not span R^{0}")]
    NonSpanning(usize),

    /// Some orbit representative or its closed star is not contained in the window.
    #[error("window too small: {0}")]
    WindowTooSmall(String),

    /// A structural invariant that the theory guarantees was found violated.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    /// A precondition of an operation was not met by its arguments.
    #[error("invalid argument: {0}")]
    Argument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
