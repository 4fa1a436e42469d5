//! Exact linear algebra and the central idempotents of the adjacency algebra.

pub mod matrix;
pub mod idempotents;
pub mod poly;
pub mod quadratic;
pub mod scalar;

pub use matrix::{DenseMatrix, RationalMatrix};
pub use quadratic::QSqrt5;
