//! Exact DAHA actions on quasi-polynomials, with their eigenfunctions and metaplectic variants.
//!
//! The crate provides exact coefficient fields, root data and affine Weyl groups, the
//! truncated Demazure–Lusztig representations on quasi-polynomials, their
//! eigenfunctions (nonsymmetric Macdonald-type polynomials), Whittaker limits and the
//! metaplectic polynomial representation.

pub mod affine_weyl;
pub mod daha_rep;
pub mod eigen;
pub mod metaplectic;
pub mod error;
pub mod quasi;
pub mod roots;
pub mod scalars;
pub mod vector;
pub mod verify;
pub mod whittaker;

pub use error::{Error, Result};
