use thiserror::Error;

use crate::topology::GenericityReport;

/// Errors raised by the algebraic kernels and the topology pipeline.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by an interval containing zero")]
    DivisionByZero,

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The adaptive isolator kept doubling precision past its cap. For a
    /// square-free input this cannot happen, so it certifies a violated
    /// precondition upstream.
    #[error("precision overflow: no conclusive isolation at {precision} bits ({detail})")]
    PrecisionOverflow { precision: u32, detail: String },

    #[error("degenerate fiber: {0}")]
    DegenerateFiber(String),

    #[error("delineability violation: column {column} has {arcs} arcs next to a critical fiber with {points} points")]
    Delineability {
        column: usize,
        arcs: usize,
        points: usize,
    },

    #[error("input not square-free")]
    NotSquareFree,

    #[error("curve is not in generic position: {0}")]
    NotGeneric(GenericityReport),

    #[error("input not square-free or degenerate: no valid shear among {0} candidates")]
    ShearExhausted(usize),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Errors that certify a bad shear factor and should trigger a re-shear.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self,
            Error::PrecisionOverflow { .. }
                | Error::DegenerateFiber(_)
                | Error::Delineability { .. }
                | Error::NotGeneric(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
