//! The standard Young tableaux formula for `C_{md,nd}(q,t)`.
//!
//! For a tableau `T` of size `N = nd` let `z_i = q^{col(i)} t^{row(i)}` be
//! the content of the box labeled `i` (0-indexed). The summand of `T` is
//!
//! ```text
//! Π z_i^{S_i} / Π_{i≥2} (1 − z_i⁻¹)(1 − qt z_{i−1}/z_i)
//!   · Π_{i<j} (1 − z_i/z_j)(1 − qt z_i/z_j) / ((1 − q z_i/z_j)(1 − t z_i/z_j))
//! ```
//!
//! Factors `1 − q^a t^b` with `(a, b) = (0, 0)` vanish identically in
//! numerator and denominator alike and are omitted. The sum is evaluated
//! exactly at rational points and compared with the `q,t`-Catalan polynomial.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebra::{qt_eval, signed_pow};
use crate::dyck::{qt_catalan, serialize_display};
use crate::{gcd, Error, Result};

/// Largest `nd` accepted by [`verify_identity`].
pub const MAX_TABLEAU_SIZE: u32 = 8;

/// A partition as a weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Option<Self> {
        let valid = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        valid.then_some(Self(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Length of the column below row 0 at index `col`.
    pub fn column_length(&self, col: u32) -> u32 {
        self.0.iter().take_while(|&&p| p > col).count() as u32
    }

    /// Number of standard tableaux of this shape by the hook length formula.
    pub fn hook_length_count(&self) -> BigUint {
        let mut hooks = BigUint::one();
        for (row, &len) in self.0.iter().enumerate() {
            for col in 0..len {
                let arm = len - col - 1;
                let leg = self.column_length(col) - row as u32 - 1;
                hooks *= arm + leg + 1;
            }
        }
        (1..=self.size()).map(BigUint::from).product::<BigUint>() / hooks
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(current.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            current.push(p);
            rec(rest - p, p, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A standard Young tableau, stored as the `(row, col)` cell of each label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    shape: Partition,
    cells: Vec<(u32, u32)>,
}

impl StandardTableau {
    /// Builds a tableau from its rows of labels `1..=N`.
    pub fn from_rows(rows: &[Vec<u32>]) -> Option<Self> {
        let shape = Partition::new(rows.iter().map(|r| r.len() as u32).collect())?;
        let size = shape.size() as usize;
        let mut cells = vec![None; size];
        for (r, row) in rows.iter().enumerate() {
            for (c, &label) in row.iter().enumerate() {
                let slot = cells.get_mut((label as usize).checked_sub(1)?)?;
                if slot.is_some() {
                    return None;
                }
                *slot = Some((r as u32, c as u32));
                let left_ok = c == 0 || row[c - 1] < label;
                let up_ok = r == 0 || rows[r - 1][c] < label;
                if !left_ok || !up_ok {
                    return None;
                }
            }
        }
        let cells = cells.into_iter().collect::<Option<Vec<_>>>()?;
        Some(Self { shape, cells })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn size(&self) -> u32 {
        self.cells.len() as u32
    }

    /// `(row, col)` of the box labeled `label` (1-based).
    pub fn cell(&self, label: u32) -> (u32, u32) {
        self.cells[label as usize - 1]
    }

    /// Labels row by row.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        let mut rows: Vec<Vec<u32>> = self
            .shape
            .parts()
            .iter()
            .map(|&p| vec![0; p as usize])
            .collect();
        for (i, &(r, c)) in self.cells.iter().enumerate() {
            rows[r as usize][c as usize] = i as u32 + 1;
        }
        rows
    }
}

/// All standard tableaux with `n` boxes, grouped by shape in the order of
/// [`partitions`] and, within a shape, in lexicographic order of the row
/// index sequence of labels `1, 2, ...`.
pub fn enumerate_syt(n: u32) -> Vec<StandardTableau> {
    fn rec(
        shape: &Partition,
        filled: &mut Vec<u32>,
        cells: &mut Vec<(u32, u32)>,
        out: &mut Vec<StandardTableau>,
    ) {
        if cells.len() as u32 == shape.size() {
            out.push(StandardTableau {
                shape: shape.clone(),
                cells: cells.clone(),
            });
            return;
        }
        for r in 0..filled.len() {
            let c = filled[r];
            if c < shape.0[r] && (r == 0 || filled[r - 1] > c) {
                filled[r] += 1;
                cells.push((r as u32, c));
                rec(shape, filled, cells, out);
                cells.pop();
                filled[r] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    for shape in partitions(n) {
        let mut filled = vec![0; shape.0.len()];
        rec(&shape, &mut filled, &mut Vec::new(), &mut out);
    }
    out
}

/// `S_i = ⌈im/n⌉ − ⌈(i−1)m/n⌉` for `i = 1..nd`.
pub fn s_sequence(n: u32, m: u32, d: u32) -> Result<Vec<u32>> {
    check_params(n, m, d)?;
    let ceil = |i: u64| (i * m as u64).div_ceil(n as u64) as u32;
    Ok((1..=(n * d) as u64)
        .map(|i| ceil(i) - ceil(i - 1))
        .collect())
}

fn check_params(n: u32, m: u32, d: u32) -> Result<()> {
    for (name, value) in [("n", n), ("m", m), ("d", d)] {
        if value == 0 {
            return Err(Error::ZeroParameter { name });
        }
    }
    if gcd(n as u64, m as u64) != 1 {
        return Err(Error::NotCoprime {
            first: n as u64,
            second: m as u64,
        });
    }
    Ok(())
}

/// A rational point `(q0, t0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvaluationPoint {
    #[serde(serialize_with = "serialize_display")]
    pub q0: BigRational,
    #[serde(serialize_with = "serialize_display")]
    pub t0: BigRational,
}

impl EvaluationPoint {
    pub fn new(q0: BigRational, t0: BigRational) -> Self {
        Self { q0, t0 }
    }

    pub fn from_integers(q0: i64, t0: i64) -> Self {
        Self::new(
            BigRational::from_integer(q0.into()),
            BigRational::from_integer(t0.into()),
        )
    }

    /// A random point with numerators in `[-20, 20] ∖ {0}` and denominators
    /// in `[1, 20]`.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let mut coordinate = || {
            let numerator = loop {
                let x: i64 = rng.gen_range(-20..=20);
                if x != 0 {
                    break x;
                }
            };
            let denominator: i64 = rng.gen_range(1..=20);
            BigRational::new(BigInt::from(numerator), BigInt::from(denominator))
        };
        let q0 = coordinate();
        let t0 = coordinate();
        Self { q0, t0 }
    }
}

struct Powers<'a> {
    point: &'a EvaluationPoint,
    cache: HashMap<(i64, i64), BigRational>,
}

impl<'a> Powers<'a> {
    fn new(point: &'a EvaluationPoint) -> Self {
        Self {
            point,
            cache: HashMap::new(),
        }
    }

    fn monomial(&mut self, a: i64, b: i64) -> Result<BigRational> {
        if let Some(v) = self.cache.get(&(a, b)) {
            return Ok(v.clone());
        }
        let qa = signed_pow(&self.point.q0, a).ok_or(Error::Pole)?;
        let tb = signed_pow(&self.point.t0, b).ok_or(Error::Pole)?;
        let v = qa * tb;
        self.cache.insert((a, b), v.clone());
        Ok(v)
    }

    /// `1 − q^a t^b`, or `None` when the factor is identically zero.
    fn factor(&mut self, a: i64, b: i64) -> Result<Option<BigRational>> {
        if (a, b) == (0, 0) {
            return Ok(None);
        }
        Ok(Some(BigRational::one() - self.monomial(a, b)?))
    }
}

fn summand(tableau: &StandardTableau, s: &[u32], point: &EvaluationPoint) -> Result<BigRational> {
    let mut powers = Powers::new(point);
    let z: Vec<(i64, i64)> = tableau
        .cells
        .iter()
        .map(|&(r, c)| (c as i64, r as i64))
        .collect();
    let mut numerator = BigRational::one();
    let mut denominator = BigRational::one();
    let (mut a, mut b) = (0i64, 0i64);
    for (zi, &si) in z.iter().zip(s) {
        a += zi.0 * si as i64;
        b += zi.1 * si as i64;
    }
    numerator *= powers.monomial(a, b)?;
    let mul = |target: &mut BigRational, f: Option<BigRational>| {
        if let Some(f) = f {
            *target *= f;
        }
    };
    for i in 1..z.len() {
        mul(&mut denominator, powers.factor(-z[i].0, -z[i].1)?);
        mul(
            &mut denominator,
            powers.factor(1 + z[i - 1].0 - z[i].0, 1 + z[i - 1].1 - z[i].1)?,
        );
    }
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let (da, db) = (z[i].0 - z[j].0, z[i].1 - z[j].1);
            mul(&mut numerator, powers.factor(da, db)?);
            mul(&mut numerator, powers.factor(da + 1, db + 1)?);
            mul(&mut denominator, powers.factor(da + 1, db)?);
            mul(&mut denominator, powers.factor(da, db + 1)?);
        }
    }
    if denominator.is_zero() {
        return Err(Error::Pole);
    }
    Ok(numerator / denominator)
}

/// Exact value of the tableau sum at `point`; [`Error::Pole`] when a
/// denominator vanishes there.
pub fn negut_eval(n: u32, m: u32, d: u32, point: &EvaluationPoint) -> Result<BigRational> {
    let s = s_sequence(n, m, d)?;
    if point.q0.is_zero() || point.t0.is_zero() {
        return Err(Error::Pole);
    }
    enumerate_syt(n * d)
        .par_iter()
        .map(|tableau| summand(tableau, &s, point))
        .try_reduce(BigRational::zero, |x, y| Ok(x + y))
}

/// Outcome of a randomized identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub params: IdentityParams,
    pub points: Vec<EvaluationPoint>,
    #[serde(serialize_with = "serialize_rationals")]
    pub lhs: Vec<BigRational>,
    #[serde(serialize_with = "serialize_rationals")]
    pub rhs: Vec<BigRational>,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityParams {
    pub n: u32,
    pub m: u32,
    pub d: u32,
}

fn serialize_rationals<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(ToString::to_string))
}

const MAX_RESAMPLES: usize = 1000;

/// Compares the tableau sum with `C_{nd,md}(q0,t0)` at `trials` random
/// points drawn from a generator seeded with `seed`. Points hitting a pole
/// are replaced.
pub fn verify_identity(n: u32, m: u32, d: u32, trials: usize, seed: u64) -> Result<IdentityReport> {
    check_params(n, m, d)?;
    if n * d > MAX_TABLEAU_SIZE {
        return Err(Error::TooLarge {
            what: "nd",
            limit: MAX_TABLEAU_SIZE as u64,
        });
    }
    let catalan = qt_catalan(n * d, m * d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = IdentityReport {
        identity: "tableau sum equals qt-Catalan".into(),
        params: IdentityParams { n, m, d },
        points: Vec::new(),
        lhs: Vec::new(),
        rhs: Vec::new(),
        pass: true,
    };
    let mut attempts = 0;
    while report.points.len() < trials {
        attempts += 1;
        if attempts > MAX_RESAMPLES + trials {
            return Err(Error::Pole);
        }
        let point = EvaluationPoint::random(&mut rng);
        let lhs = match negut_eval(n, m, d, &point) {
            Ok(v) => v,
            Err(Error::Pole) => continue,
            Err(e) => return Err(e),
        };
        let rhs = qt_eval(&catalan, &point.q0, &point.t0);
        report.pass &= lhs == rhs;
        report.points.push(point);
        report.lhs.push(lhs);
        report.rhs.push(rhs);
    }
    Ok(report)
}
