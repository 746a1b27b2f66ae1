//! Rectangular semistandard tableaux, dominant monomials and the Grassmannian
//! cluster algebra `C[Gr(n,m)]`.
//!
//! The crate computes the element `ch(T)` attached to a tableau through a
//! Kazhdan–Lusztig sum, straightens Plücker polynomials to standard monomials,
//! mutates tableau-labelled seeds and tests reality and primeness.

pub mod characters;
pub mod cluster;
pub mod error;
pub mod monomials;
pub mod plucker;
pub mod symmetric;
pub mod tableaux;

pub use error::{Error, Result};
