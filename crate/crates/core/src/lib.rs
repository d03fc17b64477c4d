//! Exact symbolic kernel for Poisson quasi-Nijenhuis geometry on polynomial
//! charts.

pub mod calculus;
pub mod courant;
pub mod error;
pub mod identities;
pub mod polyring;
pub mod pqn;
pub mod random;
pub mod report;
pub mod tensorfield;

pub use error::{Error, Result};
