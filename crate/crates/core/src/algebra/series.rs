use std::ops::{Add, Mul};

use crate::error::{Error, Result};

use super::{from_i64, Field};

/// Power series in one variable known exactly up to `z^order_bound`.
///
/// Coefficients past the bound are not zero but unknown: [`coefficient`]
/// returns `None` for them.
///
/// [`coefficient`]: TruncatedSeries::coefficient
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries<F> {
    coefficients: Vec<F>,
}

impl<F: Field> TruncatedSeries<F> {
    /// Takes coefficients for `z^0, z^1, ...`; missing ones up to the bound are
    /// zero, extra ones are discarded.
    pub fn new<I: IntoIterator<Item = F>>(order_bound: usize, coefficients: I) -> Self {
        let mut coefficients: Vec<F> = coefficients.into_iter().take(order_bound + 1).collect();
        coefficients.resize(order_bound + 1, F::zero());
        Self { coefficients }
    }

    pub fn zero(order_bound: usize) -> Self {
        Self::new(order_bound, std::iter::empty())
    }

    /// The series `z` (or `0` when the bound is 0).
    pub fn variable(order_bound: usize) -> Self {
        Self::new(order_bound, [F::zero(), F::one()])
    }

    pub fn order_bound(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficient(&self, k: usize) -> Option<&F> {
        self.coefficients.get(k)
    }

    pub fn coefficients(&self) -> &[F] {
        &self.coefficients
    }

    /// `exp(self)`, via `k g_k = sum_{j=1..k} j f_j g_{k-j}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coefficients[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let bound = self.order_bound();
        let mut g: Vec<F> = Vec::with_capacity(bound + 1);
        g.push(F::one());
        for k in 1..=bound {
            let mut acc = F::zero();
            for j in 1..=k {
                if self.coefficients[j].is_zero() {
                    continue;
                }
                acc =
                    acc + from_i64::<F>(j as i64) * self.coefficients[j].clone() * g[k - j].clone();
            }
            g.push(acc / from_i64::<F>(k as i64));
        }
        Ok(Self { coefficients: g })
    }
}

/// Exponential of a series without constant term.
pub fn series_exp<F: Field>(s: &TruncatedSeries<F>) -> Result<TruncatedSeries<F>> {
    s.exp()
}

impl<F: Field> Add for &TruncatedSeries<F> {
    type Output = TruncatedSeries<F>;
    fn add(self, rhs: Self) -> TruncatedSeries<F> {
        let bound = self.order_bound().min(rhs.order_bound());
        TruncatedSeries {
            coefficients: (0..=bound)
                .map(|k| self.coefficients[k].clone() + rhs.coefficients[k].clone())
                .collect(),
        }
    }
}

impl<F: Field> Mul for &TruncatedSeries<F> {
    type Output = TruncatedSeries<F>;
    fn mul(self, rhs: Self) -> TruncatedSeries<F> {
        let bound = self.order_bound().min(rhs.order_bound());
        let coefficients = (0..=bound)
            .map(|k| {
                (0..=k).fold(F::zero(), |acc, i| {
                    acc + self.coefficients[i].clone() * rhs.coefficients[k - i].clone()
                })
            })
            .collect();
        TruncatedSeries { coefficients }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type Series = TruncatedSeries<BigRational>;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exp_of_zero_is_one() {
        let e = Series::zero(3).exp().unwrap();
        assert_eq!(e.coefficients(), &[r(1, 1), r(0, 1), r(0, 1), r(0, 1)]);
    }

    #[test]
    fn exp_of_z_is_the_taylor_series() {
        let e = Series::variable(3).exp().unwrap();
        assert_eq!(e.coefficients(), &[r(1, 1), r(1, 1), r(1, 2), r(1, 6)]);
        assert_eq!(e.coefficient(4), None);
    }

    #[test]
    fn nonzero_constant_is_rejected() {
        let s = Series::new(2, [r(1, 1)]);
        assert_eq!(s.exp(), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn generic_over_float_fields() {
        let e = TruncatedSeries::<f64>::variable(4).exp().unwrap();
        assert!((e.coefficient(4).unwrap() - 1.0 / 24.0).abs() < 1e-15);
    }

    fn series_no_constant() -> impl Strategy<Value = Series> {
        proptest::collection::vec((-6i64..=6, 1i64..=4), 5).prop_map(|cs| {
            Series::new(
                5,
                std::iter::once(r(0, 1)).chain(cs.into_iter().map(|(n, d)| r(n, d))),
            )
        })
    }

    proptest! {
        #[test]
        fn exp_turns_sums_into_products(a in series_no_constant(), b in series_no_constant()) {
            let lhs = (&a + &b).exp().unwrap();
            let rhs = &a.exp().unwrap() * &b.exp().unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
