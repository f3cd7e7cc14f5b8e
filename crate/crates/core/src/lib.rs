//! Unitary graph and group convolutions.
//!
//! This crate implements norm-preserving convolution layers for graphs and
//! finite groups, built around the action of the matrix exponential on
//! skew-Hermitian operators:
//!
//! - [`layers`]: the separable unitary layer `exp(i*A*t) X U`, the Lie-algebra
//!   layer `exp(X -> A X W)` with skew-Hermitian `W`, a plain single-hop
//!   convolution baseline, and the norm-preserving GroupSort activation.
//! - [`expmap`]: truncated-Taylor action of the exponential, its remainder
//!   majorant, and the Cayley map as a unitarity cross-check.
//! - [`groups`]: cyclic/dihedral groups, regular-representation convolution,
//!   irreducible representations, and the Fourier-basis unitary convolution.
//! - [`autodiff`] / [`train`]: a reverse-mode tape over real matrices, Adam,
//!   and training loops for two distance-regression toy tasks.
//! - [`diagnostics`]: Rayleigh-quotient invariance, oversmoothing decay,
//!   Jacobian isometry gaps, robustness radii, and message-propagation traces.
//!
//! All numerics are generic over the scalar type via [`Scalar`] (`f32` or
//! `f64`); concrete `f64` aliases are exported at the crate root.

use std::fmt;
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

pub mod autodiff;
pub mod diagnostics;
pub mod expmap;
pub mod graphs;
pub mod groups;
pub mod layers;
pub mod numerics;
pub mod train;

/// Real scalar the whole crate is generic over.
pub trait Scalar:
    Float
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Default
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Lossless-enough conversion from `f64` literals (tolerances, constants).
    fn from_f64_lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal not representable in scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Dimension or structural mismatch between operands.
    #[error("shape error: {0}")]
    Shape(String),
    /// Input violates a documented precondition.
    #[error("input error: {0}")]
    Input(String),
    /// Numerical failure (singular solve, undefined quotient, ...).
    #[error("numeric error: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Complex node-feature matrix; every layer maps one of these to another.
pub type FeatureMatrix<F> = numerics::ComplexDense<F>;

// Concrete f64 aliases for downstream binaries and tests.
pub type RealDense64 = numerics::RealDense<f64>;
pub type ComplexDense64 = numerics::ComplexDense<f64>;
pub type SparseReal64 = numerics::SparseReal<f64>;
pub type FeatureMatrix64 = FeatureMatrix<f64>;
pub type Graph64 = graphs::Graph<f64>;

