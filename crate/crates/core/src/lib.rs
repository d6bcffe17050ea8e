//! Exact linear algebra over ℚ and 𝔽_p, shifted quadratic complexes and
//! derived Clifford algebras.

pub mod cli;
pub mod clifford;
pub mod complexes;
pub mod dga;
pub mod error;
pub mod json;
pub mod linalg;
pub mod quadratic;
pub mod random;

pub use error::{Error, Result};
pub use linalg::{Field, Matrix, Scalar};
