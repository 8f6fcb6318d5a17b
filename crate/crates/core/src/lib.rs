//! Exact combinatorics of compactified Jacobians of plane curve singularities
//! parametrized as `(t^{nd}, t^{md} + λ t^{md+s} + ...)`.
//!
//! The crate computes Poincaré polynomials and Euler characteristics through
//! several independent routes and cross-checks them:
//!
//! * [`dyck`]: rectangular Dyck paths, the `area`/`dinv` statistics and the
//!   `q,t`-Catalan polynomial `C_{nd,md}(q,t)`;
//! * [`invariant`]: `(nd,md)`-invariant subsets of the integers, gaps,
//!   suspicious numbers, admissibility and the cell dimension;
//! * [`classes`]: decomposition into `(n,m)`-invariant components, skeletons,
//!   minimal representatives and the unique admissible representative of an
//!   equivalence class;
//! * [`cabled`]: `(d,s)`-pattern paths and the count of `s`-admissible subsets;
//! * [`shuffle`]: the standard Young tableaux evaluation formula for
//!   `C_{md,nd}(q,t)`, checked at random rational points;
//! * [`verify`]: named cross-validation suites used by the CLI.
//!
//! Every computation is exact. Polynomial and series containers are generic
//! over the coefficient type; the aliases below fix the types used by the rest
//! of the crate.

pub mod algebra;
pub mod cabled;
pub mod classes;
pub mod dyck;
mod error;
pub mod invariant;
pub mod shuffle;
pub mod verify;

pub use error::{Error, Result};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Integer = BigInt;
/// Arbitrary-precision rational in lowest terms.
pub type ExactRational = BigRational;
/// Integer polynomial in `q, t`.
pub type QtPoly = algebra::QtPolynomial<BigInt>;
/// Integer polynomial in one variable.
pub type Poly = algebra::UnivariatePolynomial<BigInt>;
/// Rational power series truncated at a fixed order.
pub type Series = algebra::TruncatedSeries<BigRational>;

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}
