//! Cabled Dyck paths and `s`-admissible subsets.
//!
//! An `s`-admissible `(nd, md)`-invariant subset is sent to a `(d, s)` pattern
//! path together with one admissible tuple per vertical run. The map goes
//! through the transform `Δ̄_j = Δ_{sj} − (s−1)j`, which turns `s`-admissibility
//! into ordinary admissibility of consecutive residues.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::classes::{ClassDecomposition, Component};
use crate::dyck::count_paths;
use crate::invariant::{admissible_subsets, CurveParams, InvariantSubset};
use crate::{gcd, Error, Result};

/// A lattice path in the `d × s` rectangle weakly below the diagonal, given
/// by alternating vertical runs `v_i` and horizontal runs `h_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PatternPath {
    v: Vec<u32>,
    h: Vec<u32>,
}

impl PatternPath {
    pub fn new(d: u32, s: u32, v: Vec<u32>, h: Vec<u32>) -> Result<Self> {
        if v.len() != h.len() || v.is_empty() {
            return Err(Error::InvalidPattern(format!(
                "{} vertical and {} horizontal runs",
                v.len(),
                h.len()
            )));
        }
        if v.iter().chain(&h).any(|&x| x == 0) {
            return Err(Error::InvalidPattern("runs must be positive".into()));
        }
        if v.iter().sum::<u32>() != d || h.iter().sum::<u32>() != s {
            return Err(Error::InvalidPattern(format!(
                "runs do not fill the {d} x {s} rectangle"
            )));
        }
        let (mut sv, mut sh) = (0u64, 0u64);
        for (a, b) in v.iter().zip(&h) {
            sv += *a as u64;
            sh += *b as u64;
            if sh * d as u64 > s as u64 * sv {
                return Err(Error::InvalidPattern("path crosses the diagonal".into()));
            }
        }
        Ok(Self { v, h })
    }

    pub fn vertical_runs(&self) -> &[u32] {
        &self.v
    }

    pub fn horizontal_runs(&self) -> &[u32] {
        &self.h
    }

    /// Start row `t_i` of each vertical run.
    pub fn run_starts(&self) -> Vec<u32> {
        self.v
            .iter()
            .scan(0, |acc, &x| Some(std::mem::replace(acc, *acc + x)))
            .collect()
    }

    /// `q_i = h_1 + ... + h_i` before each vertical run (so `q_0 = 0`).
    pub fn run_depths(&self) -> Vec<u32> {
        self.h
            .iter()
            .scan(0, |acc, &x| Some(std::mem::replace(acc, *acc + x)))
            .collect()
    }
}

impl fmt::Display for PatternPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[u32]| xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "v=({}) h=({})", join(&self.v), join(&self.h))
    }
}

fn check_coprime(d: u32, s: u32) -> Result<()> {
    if d == 0 {
        return Err(Error::ZeroParameter { name: "d" });
    }
    if s == 0 {
        return Err(Error::ZeroParameter { name: "s" });
    }
    if gcd(d as u64, s as u64) != 1 {
        return Err(Error::NotCoprime {
            first: d as u64,
            second: s as u64,
        });
    }
    Ok(())
}

/// All `(d, s)` pattern paths, sorted by `(v, h)`.
pub fn enumerate_patterns(d: u32, s: u32) -> Result<Vec<PatternPath>> {
    check_coprime(d, s)?;
    let mut out = Vec::new();
    let mut v = Vec::new();
    let mut h = Vec::new();
    extend_pattern(d, s, 0, 0, &mut v, &mut h, &mut out);
    out.sort();
    Ok(out)
}

fn extend_pattern(
    d: u32,
    s: u32,
    sv: u32,
    sh: u32,
    v: &mut Vec<u32>,
    h: &mut Vec<u32>,
    out: &mut Vec<PatternPath>,
) {
    if sv == d {
        if sh == s {
            out.push(PatternPath {
                v: v.clone(),
                h: h.clone(),
            });
        }
        return;
    }
    for a in 1..=d - sv {
        for b in 1..=s - sh {
            if (sh + b) as u64 * d as u64 <= s as u64 * (sv + a) as u64 {
                v.push(a);
                h.push(b);
                extend_pattern(d, s, sv + a, sh + b, v, h, out);
                v.pop();
                h.pop();
            }
        }
    }
}

/// `Σ_P Π_i c_{v_i n, v_i m}` over the `(d, s)` patterns.
pub fn cabled_count(n: u32, m: u32, d: u32, s: u32) -> Result<BigUint> {
    let params = CurveParams::new(n, m, d, s)?;
    let mut total = BigUint::default();
    for pattern in enumerate_patterns(d, s)? {
        total += pattern_weight(params, &pattern)?;
    }
    Ok(total)
}

/// `Π_i c_{v_i n, v_i m}` for one pattern.
pub fn pattern_weight(params: CurveParams, pattern: &PatternPath) -> Result<BigUint> {
    let mut product = BigUint::one();
    for &v in pattern.vertical_runs() {
        product *= count_paths(v * params.n(), v * params.m())?;
    }
    Ok(product)
}

/// The curve families with a known closed form for `d = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `(n, m) = (2, q)` with `q` odd.
    TwoQ(u32),
    ThreeFour,
    ThreeFive,
}

impl Family {
    pub fn n_m(&self) -> (u32, u32) {
        match *self {
            Family::TwoQ(q) => (2, q),
            Family::ThreeFour => (3, 4),
            Family::ThreeFive => (3, 5),
        }
    }
}

/// Euler characteristic for `d = 2` and odd `s` from the closed forms
/// `(q+1)(q²+5q+3)/12 + (q+1)²(2q+s)/8`, `229/2 + 25(8+s)/2`,
/// `511/2 + 49(10+s)/2`.
pub fn piontkowski_chi(family: Family, s: u32) -> Result<BigRational> {
    if s.is_multiple_of(2) {
        return Err(Error::InvalidFamily(format!("s = {s} must be odd")));
    }
    let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let s = s as i64;
    Ok(match family {
        Family::TwoQ(q) => {
            if q.is_multiple_of(2) {
                return Err(Error::InvalidFamily(format!("q = {q} must be odd")));
            }
            let q = q as i64;
            r((q + 1) * (q * q + 5 * q + 3), 12) + r((q + 1) * (q + 1) * (2 * q + s), 8)
        }
        Family::ThreeFour => r(229, 2) + r(25 * (8 + s), 2),
        Family::ThreeFive => r(511, 2) + r(49 * (10 + s), 2),
    })
}

/// Decomposition of `Δ̄`, with component `j` equal to `Δ_{sj} − (s−1)j`.
pub fn bar_decomposition(delta: &InvariantSubset) -> ClassDecomposition {
    let params = delta.params();
    let (d, s) = (params.d() as i64, params.s() as i64);
    let original = ClassDecomposition::decompose(delta);
    let components = (0..d)
        .map(|j| {
            let source = &original.components()[(s * j % d) as usize];
            Component {
                theta: source.theta.clone(),
                shift: source.shift - s * j / d,
                residue: j as u32,
            }
        })
        .collect();
    ClassDecomposition::new(params, components).expect("residues 0..d are distinct")
}

/// The components `Δ̄_0, ..., Δ̄_{d−1}`.
pub fn bar_transform(delta: &InvariantSubset) -> Vec<Component> {
    bar_decomposition(delta).components().to_vec()
}

/// Rebuilds `Δ` from `Δ̄` via `Δ_{sj} = Δ̄_j + (s−1)j`.
pub fn bar_inverse(params: CurveParams, bar: &[Component]) -> Result<InvariantSubset> {
    let (d, s) = (params.d() as i64, params.s() as i64);
    let components = bar
        .iter()
        .map(|c| {
            let j = c.residue as i64;
            Component {
                theta: c.theta.clone(),
                shift: c.shift + s * j / d,
                residue: (s * j % d) as u32,
            }
        })
        .collect();
    ClassDecomposition::new(params, components)?.reassemble()
}

/// A pattern path with one admissible tuple per vertical run. Run `i` is
/// stored as a decomposition with modulus `v_i` whose first component has
/// minimum 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CabledPathData {
    pub pattern: PatternPath,
    pub runs: Vec<ClassDecomposition>,
}

/// The cabled path of an `s`-admissible subset.
pub fn to_cabled(delta: &InvariantSubset) -> Result<CabledPathData> {
    let params = delta.params();
    let s = params.s();
    if let Some(residue) = delta.suspicious_residue(s as i64) {
        return Err(Error::NotAdmissible {
            s: s as u64,
            residue,
        });
    }
    let d = params.d() as i64;
    let bar = bar_transform(delta);
    let mins: Vec<i64> = bar.iter().map(|c| c.min(params.d())).collect();
    let mut starts = vec![0usize];
    let mut floor = mins[0];
    for (j, &x) in mins.iter().enumerate().skip(1) {
        if x < floor {
            starts.push(j);
            floor = x;
        }
    }
    let depths: Vec<i64> = starts.iter().map(|&t| (t as i64 - mins[t]) / d).collect();
    let mut v = Vec::new();
    let mut h = Vec::new();
    let mut runs = Vec::new();
    for (i, &t) in starts.iter().enumerate() {
        let end = starts.get(i + 1).copied().unwrap_or(d as usize);
        let next_depth = depths.get(i + 1).copied().unwrap_or(s as i64);
        v.push((end - t) as u32);
        h.push((next_depth - depths[i]) as u32);
        let run_params = CurveParams::new(params.n(), params.m(), (end - t) as u32, 1)?;
        let components = (t..end)
            .map(|j| Component {
                theta: bar[j].theta.clone(),
                shift: bar[j].shift - bar[t].shift,
                residue: (j - t) as u32,
            })
            .collect();
        runs.push(ClassDecomposition::new(run_params, components)?);
    }
    let pattern = PatternPath::new(params.d(), s, v, h)?;
    Ok(CabledPathData { pattern, runs })
}

/// Inverse of [`to_cabled`]; rejects data that does not come from an
/// `s`-admissible subset.
pub fn from_cabled(params: CurveParams, data: &CabledPathData) -> Result<InvariantSubset> {
    let pattern = PatternPath::new(
        params.d(),
        params.s(),
        data.pattern.v.clone(),
        data.pattern.h.clone(),
    )?;
    if data.runs.len() != pattern.v.len() {
        return Err(Error::InvalidPattern(format!(
            "{} runs of data for {} vertical runs",
            data.runs.len(),
            pattern.v.len()
        )));
    }
    let mut bar = Vec::new();
    for ((run, &t), (&v, &q)) in data
        .runs
        .iter()
        .zip(&pattern.run_starts())
        .zip(pattern.v.iter().zip(&pattern.run_depths()))
    {
        let rp = run.params();
        if (rp.n(), rp.m(), rp.d()) != (params.n(), params.m(), v) {
            return Err(Error::InvalidPattern(
                "run parameters do not match the pattern".into(),
            ));
        }
        let run_subset = run.reassemble()?;
        if let Some(residue) = run_subset.suspicious_residue(1) {
            return Err(Error::NotAdmissible { s: 1, residue });
        }
        for c in run.components() {
            bar.push(Component {
                theta: c.theta.clone(),
                shift: c.shift - q as i64,
                residue: t + c.residue,
            });
        }
    }
    let delta = bar_inverse(params, &bar)?;
    if to_cabled(&delta)? != *data {
        return Err(Error::InvalidPattern(
            "run minima contradict the pattern".into(),
        ));
    }
    Ok(delta)
}

/// Number of `s`-admissible subsets, from a bound-stable enumeration.
pub fn count_s_admissible(params: CurveParams) -> Result<usize> {
    Ok(admissible_subsets(params, None)?.len())
}
