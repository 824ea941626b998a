use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A lower Pochhammer factor vanishes before the series terminates.
    #[error("undefined term: lower parameter {param} makes the term at index {index} undefined")]
    UndefinedTerm { param: String, index: u32 },

    /// The endpoint classifier was handed a terminating series (an upper
    /// parameter is a nonpositive integer); the finite sum is trivially
    /// absolutely convergent.
    #[error("terminating series: upper parameter {param} is a nonpositive integer")]
    TerminatingSeries { param: String },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("interpolation mismatch at k={k}: expected {expected}, got {actual}")]
    InterpolationMismatch {
        k: u32,
        expected: String,
        actual: String,
    },

    /// The supplied closed form failed the forward-difference probe check.
    #[error("generating function mismatch at z={z}: F(z+1)-F(z) = {difference} but f(z) = {term}")]
    GeneratingFunctionMismatch {
        z: i64,
        difference: String,
        term: String,
    },

    #[error("overlapping intervals [{0}, {1}] and [{2}, {3}]")]
    OverlappingIntervals(i64, i64, i64, i64),

    #[error("no stable limit: {0}")]
    NoStableLimit(String),

    #[error("transform not settling after {depth} terms")]
    TransformNotSettling { depth: u32 },

    #[error("Cesaro mean not settling after {terms} terms")]
    CesaroNotSettling { terms: u64 },

    #[error("symmetry violated at probe x={x}: f(-x) = {left}, f(x - eps*t) = {right}")]
    SymmetryViolated { x: i64, left: String, right: String },

    #[error("singular linear system while solving for telescoper coefficients")]
    SingularSystem,

    #[error("sequence kind not supported by {operation}")]
    UnsupportedSequence { operation: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
