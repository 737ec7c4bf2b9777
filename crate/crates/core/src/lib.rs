//! Numerical laboratory for separation, covering and James-type constants of
//! finite-dimensional normed spaces.
//!
//! Spaces are described declaratively by [`spaces::SpaceSpec`] and built into
//! immutable [`spaces::NormedSpace`] values. The [`solvers`] module holds the
//! numerical engines (maximin packing, covering, two-point searches, subspace
//! gaps, Auerbach systems), [`constants`] maps them onto named constants with
//! explicit bound sides, and [`verify`] bundles inequality suites that produce
//! machine-readable reports.

pub mod cli;
pub mod clique;
pub mod constants;
pub mod convex;
pub mod error;
pub mod linalg;
pub mod report;
pub mod sampling;
pub mod solvers;
pub mod spaces;
pub mod verify;

pub use error::{Error, Result};
