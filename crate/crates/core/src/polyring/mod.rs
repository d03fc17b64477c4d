//! Exact multivariate polynomials over the rationals.
//!
//! Every coefficient in the kernel lives in `Q[x1..xn]`. Coefficients are
//! arbitrary precision rationals kept in lowest terms, and terms are stored
//! sparsely in graded lexicographic order so that equality, printing and
//! hashing of results are all canonical.

mod monomial;
mod parse;
mod polynomial;

pub use monomial::Monomial;
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;

use std::sync::atomic::{AtomicU32, Ordering};

/// Arbitrary precision rational scalar.
pub type Rational = num_rational::BigRational;

/// Default bound on the total degree of polynomials accepted by guarded
/// operations.
pub const DEFAULT_DEGREE_CAP: u32 = 24;

static DEGREE_CAP: AtomicU32 = AtomicU32::new(DEFAULT_DEGREE_CAP);

/// Current process-wide degree cap.
pub fn degree_cap() -> u32 {
    DEGREE_CAP.load(Ordering::Relaxed)
}

/// Replaces the process-wide degree cap. Returns the previous value.
pub fn set_degree_cap(cap: u32) -> u32 {
    DEGREE_CAP.swap(cap, Ordering::Relaxed)
}

/// Builds a rational from a numerator and a nonzero denominator.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Builds an integral rational.
pub fn integer(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
