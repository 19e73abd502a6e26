#![allow(clippy::needless_range_loop)]

pub mod cochain;
pub mod coefficients;
pub mod error;
pub mod groupoid;
pub mod io;
pub mod linalg;
pub mod morita;
pub mod rational;
pub mod simplicial;

pub use error::{Error, Result};
pub use linalg::{RationalMatrix, SparseVec, SubquotientBasis};
pub use rational::Rational;
