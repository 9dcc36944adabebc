//! Exact arithmetic and certified numerics for the (q,k)-generalized
//! Fibonacci numbers
//!
//! ```text
//! F(n) = q·F(n-1) + F(n-2) + ... + F(n-k),   F(2-k) = ... = F(0) = 0,  F(1) = 1
//! ```
//!
//! The crate is split into three layers:
//!
//! * [`exact`]: big-integer term engines (definition, order-(k+1) shortcut,
//!   companion-matrix powering, the U/V convolution identity, and a
//!   generating-function oracle). The engines are generic over the integer
//!   type; [`Term`] is the arbitrary-precision default.
//! * [`numerics`]: dyadic interval arithmetic, certified enclosures of the
//!   dominant root, all-roots refinement, the Binet weight `g` and the error
//!   term `E(n) = F(n) - g(γ)γ^n`. Root refinement is generic over a
//!   [`numerics::Scalar`] so the same code runs in `f64` and in [`Float`].
//! * [`lawcheck`]: grid sweeps that certify identities, root bounds and term
//!   bounds and summarize them as [`lawcheck::LawReport`]s.

pub mod error;
pub mod exact;
pub mod lawcheck;
pub mod numerics;
pub mod params;

pub use error::{Error, Result};
pub use params::{Regime, SequenceParams, TermIndex};

/// Exact term values.
pub type Term = num_bigint::BigInt;

/// Exact rationals, used for sign certificates and comparisons.
pub type Rational = num_rational::BigRational;

/// Multi-precision binary float used for approximate root refinement.
pub type Float = numerics::BigFloat;

/// Complex numbers over [`Float`].
pub type ComplexFloat = num_complex::Complex<Float>;
