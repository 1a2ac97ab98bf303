use thiserror::Error;

/// Broad failure class, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad input: malformed files, invalid parameters, violated preconditions.
    Validation,
    /// The input is well formed but the requested numerics do not apply to it.
    Numerical,
    /// Reading or writing failed.
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("node index {index} out of range for graph with {n} nodes")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("duplicate edge ({source_node} -> {target})")]
    DuplicateEdge { source_node: usize, target: usize },

    #[error("self-loop on node {0}")]
    SelfLoop(usize),

    #[error("invalid weight {weight} on edge ({source_node} -> {target})")]
    InvalidWeight { source_node: usize, target: usize, weight: f64 },

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },

    #[error("node {0} has zero out-degree; semi-normalized Laplacian is undefined")]
    ZeroOutDegree(usize),

    #[error("eigenvalue {re} + {im}i has imaginary part above tolerance {tol}")]
    ComplexSpectrum { re: f64, im: f64, tol: f64 },

    #[error("Laplacian is not (numerically) diagonalizable: {0}")]
    NotDiagonalizable(String),

    #[error("eigenvalue {value} is negative beyond tolerance {tol}")]
    NegativeEigenvalue { value: f64, tol: f64 },

    #[error("internal step {dt} exceeds stability bound {bound}")]
    UnstableStep { dt: f64, bound: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("solver inapplicable: {0}")]
    SolverInapplicable(String),

    #[error("squared norm must be nonnegative, got {0}")]
    NegativeSqNorm(f64),

    #[error("quartic coefficient must be positive, got {0}")]
    InvalidB(f64),

    #[error("singular linear system: {0}")]
    SingularSystem(String),

    #[error("graph is not connected ({0} components)")]
    NotConnected(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::IndexOutOfRange { .. }
            | Error::DuplicateEdge { .. }
            | Error::SelfLoop(_)
            | Error::InvalidWeight { .. }
            | Error::InvalidSize(_)
            | Error::InvalidParams(_)
            | Error::DimensionMismatch { .. }
            | Error::NegativeSqNorm(_)
            | Error::InvalidB(_)
            | Error::NotConnected(_)
            | Error::Parse(_)
            | Error::Json(_) => ErrorClass::Validation,
            Error::ZeroOutDegree(_)
            | Error::ComplexSpectrum { .. }
            | Error::NotDiagonalizable(_)
            | Error::NegativeEigenvalue { .. }
            | Error::UnstableStep { .. }
            | Error::Unsupported(_)
            | Error::SolverInapplicable(_)
            | Error::SingularSystem(_) => ErrorClass::Numerical,
            Error::Io(_) => ErrorClass::Io,
            Error::Stage { source, .. } => source.class(),
        }
    }

    /// Wraps the error with the name of the pipeline stage that produced it.
    pub fn at_stage(self, stage: impl Into<String>) -> Error {
        Error::Stage {
            stage: stage.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
