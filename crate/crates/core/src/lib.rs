//! Rigged Hilbert space constructions from strict inductive limits of
//! finite-dimensional Hilbert spaces.
//!
//! - [`ladder`]: levels, inclusions, projections, the completion and the
//!   universal induced map.
//! - [`dual`]: functionals on the union of levels and the rapid-decrease
//!   seminorms.
//! - [`hermite`]: Gaussian-weighted polynomials with exact moment arithmetic.
//! - [`fourier`]: smooth functions on the circle as coefficient sequences.
//! - [`report`] and [`cli`]: deterministic CSV/JSON diagnostics behind the
//!   `rhs` binary.

pub mod axioms;
pub mod cli;
pub mod dual;
pub mod error;
pub mod fourier;
pub mod hermite;
pub mod ladder;
pub mod report;

pub use error::{Error, Result};
