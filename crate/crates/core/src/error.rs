use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("root finder failed to converge after {restarts} restarts (degree {degree})")]
    NonConvergence { degree: usize, restarts: usize },
    #[error("degenerate family: resultant vanishes identically ({0})")]
    DegenerateFamily(String),
    #[error("multiset size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("polynomial in z is identically zero for this target value")]
    IdenticallyZero,
    #[error("polynomial is not a perfect square")]
    NotPerfectSquare,
    #[error("discriminant has no root of odd multiplicity")]
    NoOddRoot,
    #[error("branch collision while tracing: {0}")]
    BranchCollision(String),
    #[error("ambiguous genealogy: {0}")]
    GenealogyAmbiguous(String),
    #[error("could not separate target preimages: {0}")]
    RootProximity(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
