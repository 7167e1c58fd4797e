use thiserror::Error;

/// Two vectors (or a vector and an instance) with different dimensions were combined.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("dimension mismatch: {left} vs {right}")]
pub struct DimensionMismatch {
    pub left: u32,
    pub right: u32,
}

/// Error raised while reading one of the text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number in the input text.
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(line: usize, kind: ParseErrorKind) -> Self {
        Self { line, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("malformed line: {0}")]
    MalformedLine(String),
    #[error("coordinate {coord} out of range [1, {dim}]")]
    CoordinateOutOfRange { coord: u64, dim: u32 },
    #[error("support not strictly increasing at coordinate {0}")]
    UnsortedSupport(u32),
    #[error("vector appears in both colors")]
    CrossColorDuplicate,
}

/// Failure modes shared by the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    /// The solver declines to run (configured limit exceeded, wrong
    /// instance class, ...). Maps to CLI exit code 4.
    #[error("refused: {0}")]
    Refused(String),
    /// A candidate that must verify by construction failed to do so.
    /// Indicates a bug, never a NO answer. Maps to CLI exit code 5.
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Dimension(#[from] DimensionMismatch),
}
