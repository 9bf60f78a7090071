use thiserror::Error;

use crate::matrix::RealMatrix;

/// Errors raised by the dual-matrix algorithms.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: dimension mismatch, expected {expected} but found {found}")]
    DimensionMismatch {
        op: &'static str,
        expected: String,
        found: String,
    },

    #[error("{op}: matrix is not square ({rows}x{cols})")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("{0}: standard part is singular")]
    NotInvertible(&'static str),

    /// The operation needs index 1 but the input has a larger (appreciable or dual) index.
    #[error("{op}: index {index} exceeds the required index 1")]
    IndexTooLarge { op: &'static str, index: usize },

    /// The requested inverse does not exist. `obstruction` is the nonzero witness matrix.
    #[error("{op}: inverse does not exist (obstruction matrix is nonzero)")]
    DoesNotExist {
        op: &'static str,
        obstruction: RealMatrix,
    },

    /// A dual linear system has no solution. `residual` is the quantity that
    /// should have vanished, as a dual column split into standard and dual parts.
    #[error("linear system is inconsistent")]
    Inconsistent {
        residual: Option<(RealMatrix, RealMatrix)>,
    },

    /// Condition on the standard part of `(I - W M) b` failed.
    #[error("inconsistent: standard part of the projected right-hand side is nonzero")]
    InconsistentStandardPart { residual: RealMatrix },

    /// Range condition on the dual part of `(I - W M) b` failed.
    #[error("inconsistent: projected right-hand side is outside the range of the nilpotent part")]
    InconsistentDualPart {
        residual_std: RealMatrix,
        residual_dual: RealMatrix,
    },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_square(op: &'static str, m: &RealMatrix) -> Result<usize> {
    if m.rows() == m.cols() {
        Ok(m.rows())
    } else {
        Err(Error::NotSquare {
            op,
            rows: m.rows(),
            cols: m.cols(),
        })
    }
}
