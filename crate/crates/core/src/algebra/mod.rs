//! Exact arithmetic: sparse polynomials in `q, t`, univariate polynomials and
//! truncated power series, all generic over the coefficient type.

mod qt;
mod scalar;
mod series;
mod univariate;

pub use qt::{qt_eval, qt_specialize_q1, QtPolynomial};
pub use scalar::{from_i64, signed_pow, Field, Ring};
pub use series::{series_exp, TruncatedSeries};
pub use univariate::UnivariatePolynomial;
