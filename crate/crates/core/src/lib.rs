//! Spacelike helicoidal and rotational surfaces in Minkowski 4-space:
//! curvature, Gauss maps and Bour isometries.

// `!(x > 0.0)` is used on purpose so that NaN lands in the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bour;
pub mod cli;
pub mod error;
pub mod expr;
pub mod helicoid;
pub mod lorentz;
pub mod mesh;
pub mod profile;
pub mod quad;
pub mod surface;

pub use error::{Error, Result};
