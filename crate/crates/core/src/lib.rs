//! Exact certification of divisibility properties of Gaussian binomial
//! coefficients.
//!
//! The central object is the rational function
//!
//! ```text
//! A(b, a; n, m) = (1 - q^b) / (1 - q^a) * [n m]_q
//! ```
//!
//! where `[n m]_q` is the q-binomial coefficient. Whether A is a polynomial
//! in q with integer (or nonnegative integer) coefficients is decided
//! exactly, through the cyclotomic factorization: the exponent of the d-th
//! cyclotomic polynomial in A is a short expression in floor functions and
//! divisibility indicators, so integrality reduces to checking finitely many
//! exponents and never requires expanding the product.
//!
//! On top of that certificate the crate implements the associated family of
//! checkable statements: shift invariance of integrality, the gcd
//! characterization when a | n, window reduction, a unifying sufficient
//! condition for nonnegativity, two binomial-pair divisibility claims, a
//! central binomial congruence, and the root-of-unity multisection identity
//! with its n^2 divisibility consequence. The [`scan`] module sweeps each
//! statement over parameter grids in parallel; [`integer_theorems`] and
//! [`gould`] cover the statements that live in plain integers.
//!
//! All polynomial and integer arithmetic is exact over arbitrary-precision
//! integers. The only floating point in the crate is the deliberate numeric
//! cross-check of the multisection identity.

pub mod afunc;
pub mod cyclotomic;
pub mod error;
pub mod gould;
pub mod integer_theorems;
pub mod qpoly;
pub mod scan;
mod ser;

pub use afunc::{AParams, ReducedForm};
pub use error::Error;
pub use gould::GouldInstance;
pub use integer_theorems::DivisibilityReport;
pub use qpoly::{Coefficient, Poly, RefMul};
pub use scan::{ScanFailure, ScanReport};

/// The concrete polynomial type used by every domain layer: dense
/// coefficients over arbitrary-precision integers.
pub type QPoly = qpoly::Poly<num_bigint::BigInt>;

/// [`qpoly::gaussian_binomial`] pinned to [`QPoly`].
pub fn gaussian_binomial(n: u64, m: i64) -> QPoly {
    qpoly::gaussian_binomial(n, m)
}

/// [`qpoly::q_pochhammer`] pinned to [`QPoly`].
pub fn q_pochhammer(k: u64, n: u64) -> QPoly {
    qpoly::q_pochhammer(k, n)
}
