//! Fake degrees and polynomial models of finite Coxeter groups.
//!
//! The crate computes fake degrees of irreducible representations in closed
//! form and through the Molien-type character sum, reads off first
//! occurrences in the coinvariant algebra, and decides whether the polynomial
//! model of the reflection representation is a Gelfand model. A small
//! Weyl-algebra engine realizes the model directly as the joint kernel of
//! invariant lowering operators.

pub mod algebra;
pub mod characters;
pub mod coxeter;
pub mod error;
pub mod fakedeg;
pub mod partitions;
pub mod weylmodel;

pub use error::{Error, Result};
