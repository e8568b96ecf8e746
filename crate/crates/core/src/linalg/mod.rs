//! Exact integer linear algebra: abelian groups, sparse matrices, Smith
//! normal form and homology of finite chain complexes.

mod complex;
mod group;
mod pair;
mod smith;
mod sparse;

pub use complex::{ChainComplex, GradedGroup};
pub use group::AbelianGroup;
pub use pair::{pair_sequence_solve, PairAmbiguity, PairSolution};
pub use smith::{cokernel, rank, smith_invariants};
pub use sparse::SparseMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("cannot parse abelian group {0:?}")]
    GroupSyntax(String),
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfBounds { row: usize, col: usize, rows: usize, cols: usize },
    #[error("cannot multiply {left:?} by {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("boundary in degree {degree} has shape {found:?}, expected {expected:?}")]
    BoundaryShape { degree: i64, expected: (usize, usize), found: (usize, usize) },
    #[error("boundary squares to a nonzero map in degree {degree}")]
    NotAComplex { degree: i64 },
}
