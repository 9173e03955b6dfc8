use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient dimensions differ: {left:?} vs {right:?}")]
    AmbientMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("unsupported family `{0}`")]
    UnsupportedFamily(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("ordering functional vanishes on root {0}")]
    DegenerateFunctional(String),
    #[error("no highest weight vector: {0}")]
    NoHighestWeightVector(String),
    #[error("span did not stabilize within degree cap {cap}")]
    NotConverged { cap: u32 },
    #[error("infeasible system: {0}")]
    Infeasible(String),
    #[error("unbounded region: {0}")]
    Unbounded(String),
    #[error("labeling mismatch: {0}")]
    Labeling(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
