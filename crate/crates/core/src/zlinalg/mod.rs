//! Exact integer linear algebra: Smith normal form, kernels, cokernels and
//! the canonical form of finitely generated abelian groups.

mod group;
mod lattice;
mod matrix;
mod smith;

use num_bigint::BigInt;
use thiserror::Error;

pub use group::FgAbGroup;
pub use lattice::{
    cokernel, complete_to_basis, hermite_normal_form, inverse_unimodular, is_unimodular,
    kernel_basis, lattice_index, rank, solve, Cokernel,
};
pub use matrix::IntMatrix;
pub use smith::{snf, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{rows}x{cols} matrix needs {} entries, got {len}", rows * cols)]
    EntryCount {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("cannot {op} {}x{} and {}x{} matrices", left.0, left.1, right.0, right.1)]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("columns do not span a saturated sublattice")]
    NotSaturated,
    #[error("vectors do not lie in the given lattice")]
    NotSublattice,
    #[error("invariant factor {0} is below 2")]
    InvalidInvariantFactor(BigInt),
    #[error("invariant factor {smaller} does not divide {larger}")]
    BrokenDivisibilityChain { smaller: BigInt, larger: BigInt },
}
