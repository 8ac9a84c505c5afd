//! Exact scalars, dense matrices, polynomials and the decompositions built on them.

pub mod jordan;
pub mod matrix;
pub mod poly;
pub mod scalar;

pub use jordan::jordan_chevalley;
pub use matrix::{dot, standard_blocks, Block, Echelon, Mat};
pub use poly::{char_poly, minimal_poly, Poly};
pub use scalar::Scalar;
