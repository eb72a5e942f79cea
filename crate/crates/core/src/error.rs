use std::fmt;

use crate::solvers::SolveReport;

/// How a singular operator fails: the system still has solutions, or it has none.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    ConsistentUnderdetermined,
    Inconsistent,
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degeneracy::ConsistentUnderdetermined => f.write_str("consistent-underdetermined"),
            Degeneracy::Inconsistent => f.write_str("inconsistent"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("dimension mismatch at line {line}: {message}")]
    DimensionAt { line: usize, message: String },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("non-finite value: {0}")]
    Value(String),

    #[error("non-finite value at line {line}: {message}")]
    ValueAt { line: usize, message: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("singular matrix: {0}")]
    SingularMatrix(String),

    /// A reduced or assembled n^2 x n^2 operator is singular to tolerance.
    #[error("singular operator: {context}{}", kind.map(|k| format!(" ({k})")).unwrap_or_default())]
    SingularOperator {
        context: String,
        kind: Option<Degeneracy>,
    },

    #[error("no unique solution: {context}{}", kind.map(|k| format!(" ({k})")).unwrap_or_default())]
    NoUniqueSolution {
        context: String,
        kind: Option<Degeneracy>,
    },

    /// The reduced equation was solved but the candidate fails the original equation.
    /// The candidate and its residuals are kept for inspection.
    #[error(
        "spurious solution: original residual {:.3e} exceeds tolerance (reduced residual {:.3e})",
        .0.residual_original,
        .0.residual_reduced
    )]
    SpuriousSolution(Box<SolveReport>),

    #[error("not convergent: {0}")]
    NotConvergent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
