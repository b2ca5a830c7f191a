//! Exact sparse linear algebra over Q.

mod cache;
mod matrix;
mod rank;
mod solve;

pub use cache::{matrix_from_str, matrix_to_string, read_matrix, write_matrix};
pub use matrix::SparseMatrix;
pub use rank::{bareiss_rank, rank};
pub use solve::{nullspace, solve};

use crate::error::Result;
use crate::scalar::Scalar;

/// The product `a · b`.
pub fn compose<T: Scalar>(a: &SparseMatrix<T>, b: &SparseMatrix<T>) -> Result<SparseMatrix<T>> {
    a.compose(b)
}
