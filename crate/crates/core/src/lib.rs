//! Automorphic functions on real hyperbolic 3-space for the
//! Whitehead-link-complement group.
//!
//! * [`gaussian`]: exact Z[i] arithmetic and congruence reduction
//! * [`halfspace`]: the upper half-space model and the GL(2, Z[i]) action
//! * [`theta`]: theta constants, the lambda function, and theta series with
//!   Gaussian-integer characteristics
//! * [`groups`]: named groups, word sampling, reduction
//! * [`embeddings`]: theta-ratio maps and the invariance harness
//! * [`hypergeometric`]: the one-dimensional prototype (`₂F₁` and the Schwarz map)
//!
//! The numerical modules are generic over [`scalar::Real`] (`f32`/`f64`);
//! Gaussian integers are generic over a checked machine word (default `i64`).

// `!(x > y)` is used on purpose so that NaN fails the guard.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod embeddings;
pub mod error;
pub mod gaussian;
pub mod groups;
pub mod halfspace;
pub mod hypergeometric;
pub mod parse;
pub mod scalar;
pub mod summation;
pub mod theta;

pub use error::{Error, Result};

pub type Point64 = halfspace::Point<f64>;
pub type Point32 = halfspace::Point<f32>;
pub type HermMat64 = halfspace::HermMat<f64>;
pub type TauMat64 = theta::TauMat<f64>;
pub type Complex64 = scalar::Complex<f64>;
pub type GaussInt64 = gaussian::GaussInt<i64>;
pub type GaussHalf64 = gaussian::GaussHalf<i64>;
pub type GMat2x64 = gaussian::GMat2<i64>;
pub type ThetaChar64 = theta::ThetaChar<i64>;
