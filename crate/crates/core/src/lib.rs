//! Two-valued polynomial dynamics on the complex plane.
//!
//! A dynamics `T(z) = -p1(z) +/- sqrt(p1(z)^2 - p0(z))` sends each point to
//! an unordered pair. This crate builds the algebra underneath (complex
//! polynomials with a dual exact/floating representation, resultants,
//! root extraction), composes dynamics into quartic root families, traces
//! branches along closed loops to read off monodromy permutations and
//! winding numbers, classifies how the four-valued composite splits, and
//! checks whether a dynamics can be defined by the action of a two-valued
//! group.

pub mod dynamics;
pub mod error;
pub mod monodromy;
pub mod multiset;
pub mod poly;
pub mod rational;
pub mod sampling;
pub mod scalar;
pub mod ser;

pub use dynamics::{DegeneracyReport, QuadDynamics, QuarticFamily};
pub use error::{Error, Result};
pub use monodromy::{LoopPath, MonodromyResult, TraceOptions};
pub use multiset::CMultiset;
pub use poly::{BiPoly, CValue, ComplexPoly, ExactPoly, FloatPoly, Poly, RootList};
pub use rational::GaussianRational;

/// Floating scalar used throughout the numeric kernels.
pub type C64 = num_complex::Complex64;
