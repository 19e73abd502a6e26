//! Exact sparse linear algebra over the rationals.

mod echelon;
mod sparse;
mod subquotient;

pub use echelon::{image, kernel, rank, solve, Echelon, Insert, Reduction};
pub use sparse::{BlockBuilder, RationalMatrix, SparseVec};
pub use subquotient::{induced_quotient_map, SubquotientBasis};
