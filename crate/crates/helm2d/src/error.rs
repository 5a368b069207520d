use thiserror::Error;

/// Unified error type for the whole toolkit.
///
/// Variants are grouped by how callers should react: `Domain`,
/// `SingularArgument` and `InvalidConfig` are input-validation failures;
/// `Overflow`, `SingularSystem`, `ContourHit` and `NonConvergence` are
/// numerical failures on admissible input; `NearBoundaryTarget` reports
/// evaluation points inside the quadrature near-field band together with the
/// offending indices; `Io` wraps filesystem problems.
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument outside supported domain: {0}")]
    Domain(String),

    #[error("singular argument: {0}")]
    SingularArgument(String),

    #[error("floating-point overflow: {0}")]
    Overflow(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("target(s) too close to the boundary for the smooth quadrature; indices {indices:?}")]
    NearBoundaryTarget { indices: Vec<usize> },

    #[error("linear system numerically singular: {0}")]
    SingularSystem(String),

    #[error("operator singular at a contour quadrature node (eigenvalue on contour?), node {node}")]
    ContourHit { node: usize },

    #[error("iteration failed to converge: {0}")]
    NonConvergence(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
