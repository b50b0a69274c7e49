//! Zeros of random algebraic polynomials.
//!
//! Samples polynomials with random complex coefficients, computes all of
//! their roots, and compares the empirical root measure against normalized
//! arc length on the unit circle. Every deterministic discrepancy bound is
//! available as a plain function, and the [`harness`] module runs the Monte
//! Carlo experiments that compare expected discrepancies and zero counts
//! with their theoretical bounds.
//!
//! The deterministic core ([`poly`], [`rootfind`], [`measure`], [`bounds`])
//! is generic over the real scalar through [`Real`]; the aliases below fix
//! the common instantiations. Sampling and the experiment driver work in
//! `f64`.

// negated comparisons reject NaN along with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod constants;
pub mod ensembles;
mod error;
pub mod harness;
pub mod measure;
pub mod poly;
pub mod rootfind;
mod scalar;

pub use error::{Error, Result};
pub use num_complex::Complex;
pub use scalar::Real;

pub use bounds::BoundInputs;
pub use ensembles::{Ensemble, RandomStream};
pub use harness::{ExperimentConfig, ExperimentRecord};
pub use measure::Region;
pub use poly::{CircleGrid, ComplexPolynomial};
pub use rootfind::RootMultiset;

/// Double-precision polynomial; what the sampler and harness produce.
pub type Polynomial = ComplexPolynomial<f64>;
pub type Polynomial32 = ComplexPolynomial<f32>;
pub type Roots = RootMultiset<f64>;
pub type Roots32 = RootMultiset<f32>;
pub type Region64 = Region<f64>;
pub type Region32 = Region<f32>;
pub type Bounds64 = BoundInputs<f64>;
