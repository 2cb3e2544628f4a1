//! Exact scalar and polynomial arithmetic.

pub mod cyclotomic;
pub mod intpoly;
pub mod linalg;
pub mod quadratic;
pub mod scalar;
pub mod series;

pub use cyclotomic::CycloResidue;
pub use intpoly::{gaussian_product, poly_exact_div, IntPolynomial};
pub use linalg::{EchelonBasis, Matrix};
pub use quadratic::QuadSqrt5;
pub use scalar::Scalar;
pub use series::{series_expand, RationalFunction, ScalarPoly};
