//! Exact homology computations for spaces of knots: graph complexes,
//! Fuks cells of configuration spaces with local coefficients, and the
//! bookkeeping that assembles them into spectral-sequence tables.

pub mod cells;
pub mod graphs;
pub mod linalg;
pub mod local_systems;
pub mod scalar;
pub mod spectral;
pub mod verify;

pub use linalg::{AbelianGroup, GradedGroup};
pub use scalar::Scalar;

pub type Int = num_bigint::BigInt;
pub type IntMatrix = linalg::SparseMatrix<Int>;
pub type IntChainComplex = linalg::ChainComplex<Int>;
