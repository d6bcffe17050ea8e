//! Exact linear algebra over ℚ or 𝔽_p.

mod echelon;
mod matrix;
mod scalar;

pub use echelon::{kernel_basis, rank, rref, solve, Echelon};
pub use matrix::{Matrix, SparseRow};
pub use scalar::{Field, Scalar};
