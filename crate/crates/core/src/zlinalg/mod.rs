//! Exact integer linear algebra: Hermite/Smith normal forms, cokernels,
//! coset representatives and kernels modulo `N`.

mod group;
mod lattice;
mod matrix;
mod normal_form;

use num_bigint::BigInt;
use thiserror::Error;

pub use group::{cokernel, AbelianInvariants, FgAbGroup};
pub use lattice::{kernel_mod, solution_lattice, subquotient, Lattice, ModKernel};
pub use matrix::IntMatrix;
pub use normal_form::{hnf, snf, SmithDecomposition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("generators do not lie in the ambient lattice")]
    NotSublattice,
    #[error("modulus must be at least 1, got {0}")]
    InvalidModulus(BigInt),
}
