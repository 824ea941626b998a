//! Exact and regularized summation toolkit.
//!
//! The crate has five layers:
//!
//! - [`exactnum`]: arbitrary-precision rationals, generalized binomial
//!   coefficients, Pochhammer symbols, and exact-coefficient polynomials.
//! - [`hyperseries`]: term generation and partial sums for the generalized
//!   hypergeometric series, plus the radius and unit-endpoint convergence
//!   classifiers.
//! - [`binomial_endpoint`]: exact truncation remainders for the expansion of
//!   `(1+x)^(-m)`, the polynomial-in-k form of the remainder at `x = 1`, and
//!   endpoint evaluation of the binomial series.
//! - [`zline`]: the reordered integer line `[0, 1, 2, ..., -2, -1]`, range
//!   resolution over it, and generating-function summation.
//! - [`sumreg`]: the regular-summation engine — generalized limits,
//!   symmetry-based summation, telescoper construction, and the classical
//!   Abel / Euler-transform / Cesàro oracles used as independent cross-checks.
//!
//! Everything exact is carried by [`exactnum::Rational`]; every numerical
//! assignment comes back as a [`sumreg::RegularizedValue`] tagged with the
//! method that produced it and an error estimate.

pub mod binomial_endpoint;
mod error;
pub mod exactnum;
pub mod hyperseries;
pub mod sumreg;
pub mod zline;

pub use error::{Error, Result};
