use thiserror::Error;

/// Errors raised by the quiver, root and decomposition machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("vector has {found} entries but the quiver has {expected} vertices")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("cannot reflect at vertex {0}: it carries a loop")]
    ReflectionUndefined(usize),
    #[error("arrow {arrow}: expected a {}x{} matrix, got {}x{}", expected.0, expected.1, found.0, found.1)]
    ShapeMismatch {
        arrow: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{alpha} is not a sum of simple dimension vectors for this parameter")]
    NotRepresentable { alpha: String },
    #[error("canonical decomposition is not unique: {0}")]
    UniquenessViolation(String),
    #[error("decomposition {other} does not refine the canonical decomposition {canonical}")]
    RefinementViolation { canonical: String, other: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl QuiverError {
    /// True for failures that indicate a broken theorem check rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            QuiverError::UniquenessViolation(_)
                | QuiverError::RefinementViolation { .. }
                | QuiverError::Invariant(_)
        )
    }
}

pub type Result<T, E = QuiverError> = std::result::Result<T, E>;
