//! Discrete and exact computations around homological stability: braid and
//! symmetric stabilized groupoids, destabilization complexes, coefficient
//! systems and their degree, twisted group homology in low degrees, and
//! stability-range arithmetic.

pub mod braid;
pub mod chains;
pub mod coeffsys;
pub mod destab;
pub mod error;
pub mod foxhom;
pub mod linalg;
pub mod ranges;
pub mod reptheory;
pub mod stabgroupoid;

pub use error::{Error, Result};
