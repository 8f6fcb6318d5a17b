//! Rectangular Dyck paths and their statistics.
//!
//! A Dyck path in an `a × b` rectangle is identified with the Young diagram
//! `D` between the path and the top-left corner. It fits under the staircase
//! `λ_{a,b}`, whose row `i` (1-indexed, `i < a`) has `⌊b(a−i)/a⌋` boxes. With
//! this convention `area(D) = δ − |D|` where `δ = |λ_{a,b}|`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{QtPolynomial, TruncatedSeries, UnivariatePolynomial};
use crate::{gcd, Error, Poly, QtPoly, Result, Series};

/// An `a × b` rectangle; `a` is the height and `b` the width.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rectangle {
    a: u32,
    b: u32,
}

impl Rectangle {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == 0 {
            return Err(Error::ZeroParameter { name: "a" });
        }
        if b == 0 {
            return Err(Error::ZeroParameter { name: "b" });
        }
        Ok(Self { a, b })
    }

    pub fn height(&self) -> u32 {
        self.a
    }

    pub fn width(&self) -> u32 {
        self.b
    }

    /// `(n', m')` coprime with `m'/n' = b/a`.
    pub fn reduced_slope(&self) -> (u32, u32) {
        let g = gcd(self.a as u64, self.b as u64) as u32;
        (self.a / g, self.b / g)
    }

    pub fn staircase(&self) -> Vec<u32> {
        staircase(self.a, self.b)
    }

    pub fn delta(&self) -> u32 {
        self.staircase().iter().sum()
    }
}

/// Rows `⌊b(a−i)/a⌋` for `i = 1..a−1`; trailing rows may be empty.
pub fn staircase(a: u32, b: u32) -> Vec<u32> {
    let (a64, b64) = (a as u64, b as u64);
    (1..a64).map(|i| (b64 * (a64 - i) / a64) as u32).collect()
}

/// Number of boxes of the staircase `λ_{a,b}`.
pub fn delta(a: u32, b: u32) -> u32 {
    staircase(a, b).iter().sum()
}

/// A subdiagram of the staircase of its rectangle.
///
/// Rows are stored for `i = 1..a−1`, padded with zeros, so two paths in the
/// same rectangle compare equal exactly when their diagrams agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyckPath {
    rect: Rectangle,
    rows: Vec<u32>,
}

impl DyckPath {
    /// Validates a row vector; shorter vectors are padded with empty rows.
    pub fn new(rect: Rectangle, mut rows: Vec<u32>) -> Result<Self> {
        let stair = rect.staircase();
        while rows.len() > stair.len() && rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.len() > stair.len() {
            return Err(Error::InvalidPath(format!(
                "{} nonzero rows but the staircase has {}",
                rows.len(),
                stair.len()
            )));
        }
        rows.resize(stair.len(), 0);
        for i in 0..rows.len() {
            if rows[i] > stair[i] {
                return Err(Error::InvalidPath(format!(
                    "row {} has length {} above the staircase bound {}",
                    i + 1,
                    rows[i],
                    stair[i]
                )));
            }
            if i > 0 && rows[i] > rows[i - 1] {
                return Err(Error::InvalidPath(format!(
                    "rows {} and {} increase",
                    i,
                    i + 1
                )));
            }
        }
        Ok(Self { rect, rows })
    }

    pub fn empty(rect: Rectangle) -> Self {
        Self {
            rect,
            rows: vec![0; rect.staircase().len()],
        }
    }

    pub fn full(rect: Rectangle) -> Self {
        Self {
            rect,
            rows: rect.staircase(),
        }
    }

    pub fn rect(&self) -> Rectangle {
        self.rect
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// `|D|`.
    pub fn size(&self) -> u32 {
        self.rows.iter().sum()
    }

    pub fn area(&self) -> u32 {
        self.rect.delta() - self.size()
    }

    /// Number of cells `c ∈ D` with `arm/(leg+1) ≤ m'/n' < (arm+1)/leg`,
    /// where the right bound is `+∞` when `leg = 0`.
    pub fn dinv(&self) -> u32 {
        let (n, m) = self.rect.reduced_slope();
        let (n, m) = (n as u64, m as u64);
        let width = self.rows.first().copied().unwrap_or(0) as usize;
        let mut column = vec![0u64; width];
        for &r in &self.rows {
            for c in column.iter_mut().take(r as usize) {
                *c += 1;
            }
        }
        let mut count = 0;
        for (i, &r) in self.rows.iter().enumerate() {
            for (j, &col) in column.iter().enumerate().take(r as usize) {
                let arm = (r as usize - j - 1) as u64;
                let leg = col - i as u64 - 1;
                let lower = arm * n <= m * (leg + 1);
                let upper = leg == 0 || m * leg < (arm + 1) * n;
                if lower && upper {
                    count += 1;
                }
            }
        }
        count
    }
}

impl Serialize for DyckPath {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(serializer)
    }
}

/// All paths in `rect`, lexicographic on row vectors, largest first.
pub fn enumerate_paths(rect: Rectangle) -> Vec<DyckPath> {
    let stair = rect.staircase();
    let mut out = Vec::new();
    let mut rows = Vec::with_capacity(stair.len());
    extend_paths(&stair, u32::MAX, &mut rows, &mut |rows| {
        out.push(DyckPath {
            rect,
            rows: rows.to_vec(),
        })
    });
    out
}

fn extend_paths(stair: &[u32], prev: u32, rows: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    let i = rows.len();
    if i == stair.len() {
        emit(rows);
        return;
    }
    for v in (0..=prev.min(stair[i])).rev() {
        rows.push(v);
        extend_paths(stair, v, rows, emit);
        rows.pop();
    }
}

/// Number of paths in an `a × b` rectangle, by dynamic programming over rows.
pub fn count_paths(a: u32, b: u32) -> Result<BigUint> {
    let rect = Rectangle::new(a, b)?;
    let stair = rect.staircase();
    let Some(&first) = stair.first() else {
        return Ok(BigUint::one());
    };
    // ways[v]: number of ways to fill the rows below with the current row of length v.
    let mut ways = vec![BigUint::one(); first as usize + 1];
    for &bound in stair.iter().rev() {
        let mut next = vec![BigUint::zero(); first as usize + 1];
        let mut prefix = BigUint::zero();
        for v in 0..=first as usize {
            if v <= bound as usize {
                prefix += &ways[v];
            }
            next[v] = prefix.clone();
        }
        ways = next;
    }
    Ok(ways[first as usize].clone())
}

/// `C_{a,b}(q,t) = Σ_D q^{area(D)} t^{dinv(D)}`.
pub fn qt_catalan(a: u32, b: u32) -> Result<QtPoly> {
    let rect = Rectangle::new(a, b)?;
    let delta = rect.delta();
    let counts = enumerate_paths(rect)
        .par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<(u32, u32), u64>, path| {
            *acc.entry((delta - path.size(), path.dinv())).or_default() += 1;
            acc
        })
        .reduce(BTreeMap::new, merge_counts);
    Ok(QtPolynomial::from_terms(
        counts.into_iter().map(|(k, c)| (k, BigInt::from(c))),
    ))
}

fn merge_counts<K: Ord>(mut a: BTreeMap<K, u64>, b: BTreeMap<K, u64>) -> BTreeMap<K, u64> {
    for (k, c) in b {
        *a.entry(k).or_default() += c;
    }
    a
}

fn coprime_rect(n: u32, m: u32, d: u32) -> Result<Rectangle> {
    for (name, v) in [("n", n), ("m", m), ("d", d)] {
        if v == 0 {
            return Err(Error::ZeroParameter { name });
        }
    }
    if gcd(n as u64, m as u64) != 1 {
        return Err(Error::NotCoprime {
            first: n as u64,
            second: m as u64,
        });
    }
    Rectangle::new(n * d, m * d)
}

fn statistic_polynomial(rect: Rectangle, stat: impl Fn(&DyckPath) -> u32 + Sync) -> Poly {
    let counts = enumerate_paths(rect)
        .par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<u32, u64>, path| {
            *acc.entry(stat(path)).or_default() += 1;
            acc
        })
        .reduce(BTreeMap::new, merge_counts);
    UnivariatePolynomial::from_terms(counts.into_iter().map(|(k, c)| (k, BigInt::from(c))))
}

/// `Σ_D t^{δ−dinv(D)}` over paths in the `nd × md` rectangle; the
/// cohomological flag doubles every exponent.
pub fn poincare(n: u32, m: u32, d: u32, cohomological: bool) -> Result<Poly> {
    let rect = coprime_rect(n, m, d)?;
    let delta = rect.delta();
    let p = statistic_polynomial(rect, |path| delta - path.dinv());
    Ok(if cohomological {
        p.scale_exponents(2)
    } else {
        p
    })
}

/// `Σ_D t^{δ−area(D)} = Σ_D t^{|D|}`.
pub fn poincare_by_area(n: u32, m: u32, d: u32) -> Result<Poly> {
    let rect = coprime_rect(n, m, d)?;
    Ok(statistic_polynomial(rect, DyckPath::size))
}

/// `exp(Σ_{d≥1} z^d binom((m+n)d, md)/((m+n)d))` truncated at `z^{d_max}`.
pub fn bizley_series(n: u32, m: u32, d_max: u32) -> Result<Series> {
    coprime_rect(n, m, 1)?;
    let k = (m + n) as u64;
    let log = (0..=d_max as u64).map(|d| {
        if d == 0 {
            return BigRational::zero();
        }
        let binom = num_integer::binomial(BigInt::from(k * d), BigInt::from(m as u64 * d));
        BigRational::new(binom, BigInt::from(k * d))
    });
    TruncatedSeries::new(d_max as usize, log).exp()
}

/// One degree of the Bizley comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BizleyRow {
    pub d: u32,
    #[serde(serialize_with = "serialize_display")]
    pub series_coefficient: BigRational,
    #[serde(serialize_with = "serialize_display")]
    pub path_count: BigUint,
}

impl BizleyRow {
    pub fn holds(&self) -> bool {
        self.series_coefficient == BigRational::from_integer(BigInt::from(self.path_count.clone()))
    }
}

pub(crate) fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(
    value: &T,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}

/// Series coefficients next to the path counts `c_{nd,md}` for `d = 1..d_max`.
pub fn bizley_table(n: u32, m: u32, d_max: u32) -> Result<Vec<BizleyRow>> {
    let series = bizley_series(n, m, d_max)?;
    (1..=d_max)
        .map(|d| {
            Ok(BizleyRow {
                d,
                series_coefficient: series.coefficient(d as usize).cloned().unwrap_or_default(),
                path_count: BigUint::from(enumerate_paths(Rectangle::new(n * d, m * d)?).len()),
            })
        })
        .collect()
}

pub fn bizley_check(n: u32, m: u32, d_max: u32) -> Result<bool> {
    Ok(bizley_table(n, m, d_max)?.iter().all(BizleyRow::holds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qt_eval;
    use proptest::prelude::*;

    fn rect(a: u32, b: u32) -> Rectangle {
        Rectangle::new(a, b).unwrap()
    }

    fn path(a: u32, b: u32, rows: &[u32]) -> DyckPath {
        DyckPath::new(rect(a, b), rows.to_vec()).unwrap()
    }

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    /// Independent oracle: all monotone lattice paths in the rectangle that
    /// stay weakly below the diagonal, as north/east step words.
    fn lattice_path_count(a: u32, b: u32) -> usize {
        let mut count = 0;
        for mask in 0u64..(1 << (a + b)) {
            if mask.count_ones() != b {
                continue;
            }
            // Bit set = east step; walk from (0,0) to (b,a) with y·b ≤ x·a.
            let (mut x, mut y) = (0u64, 0u64);
            let mut ok = true;
            for k in 0..(a + b) {
                if mask >> k & 1 == 1 {
                    x += 1;
                } else {
                    y += 1;
                }
                if y * b as u64 > x * a as u64 {
                    ok = false;
                    break;
                }
            }
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn staircase_examples() {
        assert_eq!(staircase(4, 6), vec![4, 3, 1]);
        assert_eq!(staircase(2, 3), vec![1]);
        assert!(staircase(1, 7).is_empty());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(4, 6), 8);
        assert_eq!(delta(2, 3), 1);
        assert_eq!(delta(1, 5), 0);
    }

    #[test]
    fn reduced_slope_is_coprime() {
        assert_eq!(rect(4, 6).reduced_slope(), (2, 3));
        assert_eq!(rect(3, 3).reduced_slope(), (1, 1));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_paths(rect(4, 6)).len(), 23);
        assert_eq!(enumerate_paths(rect(2, 3)).len(), 2);
        let one = enumerate_paths(rect(1, 1));
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].size(), 0);
    }

    #[test]
    fn enumeration_is_lexicographic_largest_first() {
        let paths = enumerate_paths(rect(4, 6));
        assert_eq!(paths.first().unwrap().rows(), &[4, 3, 1]);
        assert_eq!(paths.last().unwrap().rows(), &[0, 0, 0]);
        for w in paths.windows(2) {
            assert!(w[0].rows() > w[1].rows());
        }
    }

    #[test]
    fn counts_match_lattice_path_oracle() {
        for a in 1..=6 {
            for b in 1..=6 {
                let expected = lattice_path_count(a, b);
                assert_eq!(enumerate_paths(rect(a, b)).len(), expected, "({a},{b})");
                assert_eq!(
                    count_paths(a, b).unwrap(),
                    BigUint::from(expected),
                    "({a},{b})"
                );
            }
        }
    }

    #[test]
    fn area_examples() {
        assert_eq!(DyckPath::full(rect(4, 6)).area(), 0);
        assert_eq!(DyckPath::empty(rect(4, 6)).area(), 8);
        assert_eq!(path(4, 6, &[4, 3, 0]).area(), 1);
    }

    #[test]
    fn dinv_examples() {
        assert_eq!(DyckPath::empty(rect(4, 6)).dinv(), 0);
        assert_eq!(path(2, 3, &[1]).dinv(), 1);
        let mut histogram = vec![0; 9];
        for p in enumerate_paths(rect(4, 6)) {
            histogram[p.dinv() as usize] += 1;
        }
        assert_eq!(histogram, vec![1, 3, 4, 4, 4, 3, 2, 1, 1]);
    }

    #[test]
    fn path_validation() {
        assert!(DyckPath::new(rect(4, 6), vec![5, 0, 0]).is_err());
        assert!(DyckPath::new(rect(4, 6), vec![1, 2, 0]).is_err());
        assert!(DyckPath::new(rect(4, 6), vec![1, 1, 1, 1]).is_err());
        assert_eq!(
            DyckPath::new(rect(4, 6), vec![2]).unwrap().rows(),
            &[2, 0, 0]
        );
    }

    #[test]
    fn path_serializes_as_row_array() {
        assert_eq!(
            serde_json::to_string(&path(4, 6, &[4, 3, 1])).unwrap(),
            "[4,3,1]"
        );
    }

    #[test]
    fn qt_catalan_examples() {
        assert_eq!(qt_catalan(1, 1).unwrap(), QtPoly::one());
        let q_plus_t = QtPoly::q() + QtPoly::t();
        assert_eq!(qt_catalan(2, 3).unwrap(), q_plus_t);
        assert_eq!(qt_catalan(2, 2).unwrap(), q_plus_t);
        assert_eq!(
            qt_eval(&qt_catalan(2, 3).unwrap(), &int(1), &int(1)),
            int(2)
        );
    }

    #[test]
    fn specialization_of_4_6() {
        let spec = qt_catalan(4, 6).unwrap().specialize_q1();
        let dense: Vec<BigInt> = spec.to_dense();
        let expected: Vec<BigInt> = [1, 3, 4, 4, 4, 3, 2, 1, 1]
            .into_iter()
            .map(BigInt::from)
            .collect();
        assert_eq!(dense, expected);
    }

    #[test]
    fn poincare_examples() {
        assert_eq!(
            poincare(2, 3, 2, false).unwrap().to_string(),
            "1+t+2t^2+3t^3+4t^4+4t^5+4t^6+3t^7+t^8"
        );
        assert_eq!(poincare(1, 1, 2, false).unwrap().to_string(), "1+t");
        assert_eq!(poincare(1, 1, 2, true).unwrap().to_string(), "1+t^2");
        assert_eq!(poincare(2, 3, 1, false).unwrap().to_string(), "1+t");
        assert_eq!(
            poincare(2, 4, 1, false),
            Err(Error::NotCoprime {
                first: 2,
                second: 4
            })
        );
    }

    #[test]
    fn poincare_by_area_matches() {
        for (n, m, d) in [(1, 1, 3), (2, 3, 2), (1, 2, 3), (3, 4, 1)] {
            assert_eq!(
                poincare(n, m, d, false).unwrap(),
                poincare_by_area(n, m, d).unwrap()
            );
        }
    }

    #[test]
    fn bizley_examples() {
        let table = bizley_table(2, 3, 2).unwrap();
        assert_eq!(table[0].series_coefficient, int(2));
        assert_eq!(table[1].series_coefficient, int(23));
        assert!(table.iter().all(BizleyRow::holds));
        assert!(bizley_check(1, 1, 3).unwrap());
        let t34 = bizley_table(3, 4, 1).unwrap();
        assert_eq!(t34[0].path_count, BigUint::from(5u32));
        assert!(t34[0].holds());
        assert!(bizley_check(2, 4, 1).is_err());
    }

    fn small_rect() -> impl Strategy<Value = (u32, u32)> {
        (1u32..=7, 1u32..=7).prop_filter("small", |(a, b)| a * b <= 30)
    }

    proptest! {
        #[test]
        fn statistics_stay_in_range((a, b) in small_rect()) {
            let r = rect(a, b);
            let delta = r.delta();
            for p in enumerate_paths(r) {
                prop_assert!(p.dinv() <= delta);
                prop_assert!(p.area() <= delta);
            }
        }

        #[test]
        fn qt_catalan_symmetric_and_transposable((a, b) in small_rect()) {
            let c = qt_catalan(a, b).unwrap();
            prop_assert_eq!(c.swap_variables(), c.clone());
            prop_assert_eq!(qt_catalan(b, a).unwrap(), c.clone());
            let count = enumerate_paths(rect(a, b)).len() as i64;
            prop_assert_eq!(qt_eval(&c, &int(1), &int(1)), int(count));
        }
    }
}
