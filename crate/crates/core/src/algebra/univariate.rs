use std::collections::BTreeMap;
use std::fmt::{self, Display};
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Ring;

/// Polynomial in one variable with sparse nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnivariatePolynomial<C> {
    coefficients: BTreeMap<u32, C>,
}

impl<C> Default for UnivariatePolynomial<C> {
    fn default() -> Self {
        Self {
            coefficients: BTreeMap::new(),
        }
    }
}

impl<C: Ring> UnivariatePolynomial<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exponent: u32, coefficient: C) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coefficient);
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (u32, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Dense coefficient list `c_0, c_1, ..., c_deg`.
    pub fn from_dense<I: IntoIterator<Item = C>>(coefficients: I) -> Self {
        Self::from_terms(
            coefficients
                .into_iter()
                .enumerate()
                .map(|(e, c)| (e as u32, c)),
        )
    }

    pub fn add_term(&mut self, exponent: u32, coefficient: C) {
        if coefficient.is_zero() {
            return;
        }
        match self.coefficients.remove(&exponent) {
            Some(old) => {
                let sum = old + coefficient;
                if !sum.is_zero() {
                    self.coefficients.insert(exponent, sum);
                }
            }
            None => {
                self.coefficients.insert(exponent, coefficient);
            }
        }
    }

    pub fn coefficient(&self, exponent: u32) -> C {
        self.coefficients
            .get(&exponent)
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coefficients.keys().next_back().copied()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &C)> {
        self.coefficients.iter().map(|(&e, c)| (e, c))
    }

    /// Dense coefficients up to the degree; empty for the zero polynomial.
    pub fn to_dense(&self) -> Vec<C> {
        match self.degree() {
            None => Vec::new(),
            Some(deg) => (0..=deg).map(|e| self.coefficient(e)).collect(),
        }
    }

    /// `x^top * p(1/x)`; every exponent must be at most `top`.
    pub fn reflect(&self, top: u32) -> Self {
        assert!(
            self.degree().is_none_or(|d| d <= top),
            "reflection below the degree"
        );
        Self::from_terms(self.terms().map(|(e, c)| (top - e, c.clone())))
    }

    /// Multiplies every exponent by `factor`.
    pub fn scale_exponents(&self, factor: u32) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e * factor, c.clone())))
    }

    pub fn eval<R>(&self, x: &R) -> R
    where
        R: Ring + From<C>,
    {
        self.terms().fold(R::zero(), |acc, (e, c)| {
            acc + R::from(c.clone()) * num_traits::pow(x.clone(), e as usize)
        })
    }

    /// Renders the polynomial with the given variable name, e.g. `1+t+2t^2`.
    pub fn display_in(&self, var: &str) -> String
    where
        C: Display,
    {
        if self.is_zero() {
            return "0".to_owned();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_owned()),
                None => (false, text),
            };
            if negative {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let unit = magnitude == "1";
            if e == 0 {
                out.push_str(&magnitude);
                continue;
            }
            if !unit {
                out.push_str(&magnitude);
            }
            out.push_str(var);
            if e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        out
    }
}

impl<C: Ring + Display> Display for UnivariatePolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl<C: Ring> Add for UnivariatePolynomial<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.coefficients {
            self.add_term(e, c);
        }
        self
    }
}

impl<C: Ring> Mul for &UnivariatePolynomial<C> {
    type Output = UnivariatePolynomial<C>;
    fn mul(self, rhs: Self) -> UnivariatePolynomial<C> {
        let mut out = UnivariatePolynomial::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, x.clone() * y.clone());
            }
        }
        out
    }
}

impl<C: Ring> One for UnivariatePolynomial<C> {
    fn one() -> Self {
        Self::monomial(0, C::one())
    }
}

impl<C: Ring> Mul for UnivariatePolynomial<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    t: u32,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

impl<C: Ring + Display> Serialize for UnivariatePolynomial<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            vars: vec!["t".to_owned()],
            terms: self
                .terms()
                .map(|(t, c)| TermJson {
                    t,
                    c: c.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, C: Ring + FromStr> Deserialize<'de> for UnivariatePolynomial<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(deserializer)?;
        if raw.vars != ["t"] {
            return Err(D::Error::custom(format!(
                "expected vars [\"t\"], got {:?}",
                raw.vars
            )));
        }
        let mut terms = Vec::with_capacity(raw.terms.len());
        for term in raw.terms {
            let c = term
                .c
                .parse::<C>()
                .map_err(|_| D::Error::custom(format!("bad coefficient {:?}", term.c)))?;
            terms.push((term.t, c));
        }
        Ok(Self::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type Poly = UnivariatePolynomial<BigInt>;

    #[test]
    fn display_matches_the_usual_notation() {
        let p = Poly::from_dense([1, 1, 2, 3, 4, 4, 4, 3, 1].map(BigInt::from));
        assert_eq!(p.to_string(), "1+t+2t^2+3t^3+4t^4+4t^5+4t^6+3t^7+t^8");
        let q = Poly::from_terms([
            (0, BigInt::from(-1)),
            (2, BigInt::from(-3)),
            (1, BigInt::from(1)),
        ]);
        assert_eq!(q.to_string(), "-1+t-3t^2");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut p = Poly::monomial(3, BigInt::from(2));
        p.add_term(3, BigInt::from(-2));
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
    }

    #[test]
    fn reflect_reverses_coefficients() {
        let p = Poly::from_dense([1, 2, 3].map(BigInt::from));
        assert_eq!(
            p.reflect(4).to_dense(),
            [0, 0, 3, 2, 1].map(BigInt::from).to_vec()
        );
    }

    #[test]
    fn json_round_trip() {
        let p = Poly::from_dense([1, 0, 5].map(BigInt::from));
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(
            text,
            r#"{"vars":["t"],"terms":[{"t":0,"c":"1"},{"t":2,"c":"5"}]}"#
        );
        let back: Poly = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
    }
}
