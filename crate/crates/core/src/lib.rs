//! Exact Koszul cohomology for explicitly parameterized varieties, centred on
//! the tangent developable surface of the rational normal curve.

pub mod afprw;
pub mod cache;
pub mod combinat;
pub mod elim;
pub mod error;
pub mod field;
pub mod graded;
pub mod koszul;
pub mod multilinear;
pub mod sparse;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use sparse::{SparseMatrix, SparseVec};
