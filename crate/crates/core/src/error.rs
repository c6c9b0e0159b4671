use alloc::string::String;

/// Errors raised by the library. Verification failures are not errors; they
/// are reported through [`crate::AxiomReport`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("result arity {arity} exceeds the tabulated maximum {max}")]
    Truncation { arity: usize, max: usize },
    #[error("missing table entry: {0}")]
    IncompleteTable(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("height mismatch: {left} vs {right}")]
    HeightMismatch { left: usize, right: usize },
    #[error("junction verticals differ at level {level}")]
    JunctionMismatch { level: usize },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("{0} is not in W")]
    NotInW(String),
    #[error("not operadic: {0}")]
    NotOperadic(String),
    #[error("not a map of operads: {0}")]
    NotAMap(String),
    #[error("diagram does not commute: {0}")]
    NonCommuting(String),
    #[error("not localizable: {0} does not act bijectively")]
    NotLocalizable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
