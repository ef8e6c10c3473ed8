//! Constant solutions of the SU(2) Yang–Mills–Dirac system.
//!
//! Hyperbolic SVD, field equations, group covers, classification of
//! constant solutions and the first-order perturbation operator.
#![forbid(unsafe_code)]

pub mod algebra;
pub mod classifier;
pub mod error;
pub mod fields;
pub mod groups;
pub mod hsvd;
pub mod perturbation;

pub use error::{Error, Result};
