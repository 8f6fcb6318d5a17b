use std::collections::BTreeMap;
use std::fmt::{self, Display};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Ring, UnivariatePolynomial};

/// Sparse polynomial in two commuting variables `q` and `t`.
///
/// Terms are keyed by `(deg_q, deg_t)` and kept in lexicographic order; no
/// zero coefficient is ever stored, so structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QtPolynomial<C> {
    terms: BTreeMap<(u32, u32), C>,
}

impl<C> Default for QtPolynomial<C> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Ring> QtPolynomial<C> {
    pub fn monomial(deg_q: u32, deg_t: u32, coefficient: C) -> Self {
        let mut p = Self::default();
        p.add_term(deg_q, deg_t, coefficient);
        p
    }

    pub fn q() -> Self {
        Self::monomial(1, 0, C::one())
    }

    pub fn t() -> Self {
        Self::monomial(0, 1, C::one())
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), C)>>(terms: I) -> Self {
        let mut p = Self::default();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, deg_q: u32, deg_t: u32, coefficient: C) {
        if coefficient.is_zero() {
            return;
        }
        let key = (deg_q, deg_t);
        match self.terms.remove(&key) {
            Some(old) => {
                let sum = old + coefficient;
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
            None => {
                self.terms.insert(key, coefficient);
            }
        }
    }

    pub fn coefficient(&self, deg_q: u32, deg_t: u32) -> C {
        self.terms
            .get(&(deg_q, deg_t))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// Nonzero terms, lexicographic by `(deg_q, deg_t)`.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &C)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// `p(t, q)`.
    pub fn swap_variables(&self) -> Self {
        Self::from_terms(self.terms().map(|((i, j), c)| ((j, i), c.clone())))
    }

    /// `p(1, t)` as a polynomial in `t`.
    pub fn specialize_q1(&self) -> UnivariatePolynomial<C> {
        UnivariatePolynomial::from_terms(self.terms().map(|((_, j), c)| (j, c.clone())))
    }

    /// `p(q, 1)` as a polynomial in `q`.
    pub fn specialize_t1(&self) -> UnivariatePolynomial<C> {
        UnivariatePolynomial::from_terms(self.terms().map(|((i, _), c)| (i, c.clone())))
    }

    /// Exact value at `(q0, t0)` in any ring receiving the coefficients.
    pub fn eval<R>(&self, q0: &R, t0: &R) -> R
    where
        R: Ring + From<C>,
    {
        let mut q_powers: Vec<R> = vec![R::one()];
        let mut t_powers: Vec<R> = vec![R::one()];
        let mut acc = R::zero();
        for ((i, j), c) in self.terms() {
            while q_powers.len() <= i as usize {
                let next = q_powers.last().unwrap().clone() * q0.clone();
                q_powers.push(next);
            }
            while t_powers.len() <= j as usize {
                let next = t_powers.last().unwrap().clone() * t0.clone();
                t_powers.push(next);
            }
            acc = acc
                + R::from(c.clone()) * q_powers[i as usize].clone() * t_powers[j as usize].clone();
        }
        acc
    }
}

/// Exact value of an integer polynomial at a rational point.
pub fn qt_eval(p: &QtPolynomial<BigInt>, q0: &BigRational, t0: &BigRational) -> BigRational {
    p.eval(q0, t0)
}

/// `p(1, t)`.
pub fn qt_specialize_q1<C: Ring>(p: &QtPolynomial<C>) -> UnivariatePolynomial<C> {
    p.specialize_q1()
}

impl<C: Ring> Zero for QtPolynomial<C> {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring> One for QtPolynomial<C> {
    fn one() -> Self {
        Self::monomial(0, 0, C::one())
    }
}

impl<C: Ring> Add<&QtPolynomial<C>> for &QtPolynomial<C> {
    type Output = QtPolynomial<C>;
    fn add(self, rhs: &QtPolynomial<C>) -> QtPolynomial<C> {
        let mut out = self.clone();
        for ((i, j), c) in rhs.terms() {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl<C: Ring> Add for QtPolynomial<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<C: Ring> Neg for QtPolynomial<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl<C: Ring> Sub for QtPolynomial<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Ring> Mul<&QtPolynomial<C>> for &QtPolynomial<C> {
    type Output = QtPolynomial<C>;
    fn mul(self, rhs: &QtPolynomial<C>) -> QtPolynomial<C> {
        let mut out = QtPolynomial::default();
        for ((a, b), x) in self.terms() {
            for ((c, d), y) in rhs.terms() {
                out.add_term(a + c, b + d, x.clone() * y.clone());
            }
        }
        out
    }
}

impl<C: Ring> Mul for QtPolynomial<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Ring + Display> Display for QtPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, ((i, j), c)) in self.terms().enumerate() {
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_owned()),
                None => (false, text),
            };
            if negative {
                f.write_str("-")?;
            } else if n > 0 {
                f.write_str("+")?;
            }
            let mut factors = Vec::new();
            if magnitude != "1" || (i == 0 && j == 0) {
                factors.push(magnitude);
            }
            for (var, e) in [("q", i), ("t", j)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_owned()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    q: u32,
    t: u32,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

impl<C: Ring + Display> Serialize for QtPolynomial<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            vars: vec!["q".to_owned(), "t".to_owned()],
            terms: self
                .terms()
                .map(|((q, t), c)| TermJson {
                    q,
                    t,
                    c: c.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, C: Ring + FromStr> Deserialize<'de> for QtPolynomial<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(deserializer)?;
        if raw.vars != ["q", "t"] {
            return Err(D::Error::custom(format!(
                "expected vars [\"q\",\"t\"], got {:?}",
                raw.vars
            )));
        }
        let mut p = Self::default();
        for term in raw.terms {
            let c = term
                .c
                .parse::<C>()
                .map_err(|_| D::Error::custom(format!("bad coefficient {:?}", term.c)))?;
            p.add_term(term.q, term.t, c);
        }
        Ok(p)
    }
}
