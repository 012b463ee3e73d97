//! Exact curvature of left-invariant pseudo-Riemannian metrics on Lie groups.
//!
//! Everything in this crate is exact: scalars live in a quadratic field
//! `Q(sqrt(d))`, polynomials have coefficients in the same field, and all
//! tensors are computed without floating point. Floating point only appears
//! in decimal approximations of eigenvalues for display.
//!
//! The crate is `no_std` (it needs `alloc`); file formats and the command
//! line front end live in `schouten-cli`.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod classify;
pub mod constraints;
pub mod curvature;
pub mod error;
pub mod groebner;
pub mod lie;
pub mod linear;
pub mod matrix;
pub mod poly;
pub mod ring;
pub mod scalar;
pub mod segre;
pub mod tensor;
pub mod upoly;

pub use error::{AlgebraError, GeometryError};
pub use scalar::{FieldScalar, Rational};
