//! Non-asymptotic eigenvalue error bounds and dimension detection for
//! subspace methods, on finite spectral models with exact ground truth.
//!
//! The modules build on each other bottom-up:
//!
//! - [`hermitian`]: dense Hermitian eigensolver, definite pencils, Weyl and
//!   Courant–Fischer checks.
//! - [`spectral`]: the operator in its eigenbasis, trial maps, the
//!   signal/noise split and the error measure ε.
//! - [`bounds`]: the five eigenvalue-error bound families.
//! - [`protocol`]: subspace protocols, dimension detection and refinement.
//! - [`synth`]: seeded instance generators and brute-force references.
//! - [`io`]: JSON files for instances and reports, 17-digit reals.
//! - [`verify`]: the property suites run by the CLI and the acceptance tests.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod borel;
pub mod bounds;
pub mod error;
pub mod hermitian;
pub mod io;
pub mod protocol;
pub mod rng;
pub mod spectral;
pub mod synth;
pub mod verify;

pub use error::{Error, Result};
