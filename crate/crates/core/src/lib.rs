//! Casimir energies of regular polygons from the disk spectrum, with the
//! special functions, zeta regularization and reporting they need.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod extensions;
pub mod regularization;
pub mod report;
pub mod specfun;
pub mod spectra;

pub use error::{Error, Result};
