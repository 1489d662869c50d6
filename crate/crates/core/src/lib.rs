//! Exact q-series engine for modular characteristic forms.
//!
//! The crate builds characteristic forms of string-type bundles as truncated
//! q-series with exact rational coefficients, computes them twice (once from
//! bundle calculus, once from Jacobi theta functions), and certifies the
//! resulting modular relations against the Eisenstein basis.
//!
//! Layers, bottom up:
//! - [`algebra`]: rationals, graded polynomials, q-series in `t = q^{1/8}`.
//! - [`theta`]: theta functions and their quotients as series.
//! - [`bundle`]: a free lambda-ring for bundle expressions.
//! - [`charcalc`]: Chern characters on three interchangeable backends.
//! - [`modular`]: Eisenstein series and coefficient relations.
//! - [`verify`]: certificates for identities and theorem registry entries.
//! - [`report`]: run configuration and report rendering.

pub mod algebra;
pub mod bundle;
pub mod charcalc;
pub mod error;
pub mod modular;
pub mod report;
pub mod theta;
pub mod verify;

pub use error::{Error, Result};
