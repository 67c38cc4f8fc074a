//! Exact rational linear algebra.

mod family;
mod matrix;
mod poly;
pub mod reduce;
mod scalar;

pub use family::NilpotentFamily;
pub use matrix::Matrix;
pub use poly::Poly;
pub use reduce::{RowReducer, SparseRow};
pub use scalar::Scalar;
