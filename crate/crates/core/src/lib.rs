//! Weighted metric (`♯_t`) and spectral (`♮_t`) geometric means of positive
//! definite matrices, log-majorization tools, and executable checks of the
//! inequalities relating them.

pub mod cli;
pub mod error;
pub mod linalg;
pub mod majorization;
pub mod means;
pub mod theorems;

pub use error::{Error, Result};
