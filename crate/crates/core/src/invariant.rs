//! Cofinite `(nd, md)`-invariant subsets of `Z≥0`.
//!
//! A subset is stored by its `nd`-generators: `gens[r]` is the smallest
//! element congruent to `r` modulo `nd`, so `x ∈ Δ ⟺ x ≥ gens[x mod nd]`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::{gcd, Error, Result};

/// Parameters of the curve `(t^{nd}, t^{md} + λ t^{md+s} + ...)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CurveParams {
    n: u32,
    m: u32,
    d: u32,
    s: u32,
}

impl CurveParams {
    pub fn new(n: u32, m: u32, d: u32, s: u32) -> Result<Self> {
        for (name, v) in [("n", n), ("m", m), ("d", d), ("s", s)] {
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
        if gcd(d as u64, s as u64) != 1 {
            return Err(Error::NotCoprime {
                first: d as u64,
                second: s as u64,
            });
        }
        Ok(Self { n, m, d, s })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// `nd`, the modulus of the generator vector.
    pub fn nd(&self) -> i64 {
        self.n as i64 * self.d as i64
    }

    pub fn md(&self) -> i64 {
        self.m as i64 * self.d as i64
    }

    /// The same curve with a different second Puiseux shift.
    pub fn with_s(&self, s: u32) -> Result<Self> {
        Self::new(self.n, self.m, self.d, s)
    }

    /// `d·(nmd + nd + md)`.
    pub fn default_bound(&self) -> i64 {
        let (n, m, d) = (self.n as i64, self.m as i64, self.d as i64);
        d * (n * m * d + n * d + m * d)
    }
}

/// A 0-normalized cofinite `(nd, md)`-invariant subset of `Z≥0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantSubset {
    params: CurveParams,
    gens: Vec<i64>,
}

/// The `nd`-generators arranged by residue modulo `d` and cyclically ordered
/// so that `rows[j][i] + md = rows[j][i+1] + alpha[j][i]·nd` with `alpha ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorGrid {
    pub rows: Vec<Vec<i64>>,
    pub alpha: Vec<Vec<i64>>,
}

impl InvariantSubset {
    /// Validates residues, 0-normalization and `md`-invariance; never
    /// normalizes silently.
    pub fn from_generators(params: CurveParams, gens: Vec<i64>) -> Result<Self> {
        let nd = params.nd();
        let md = params.md();
        if gens.len() as i64 != nd {
            return Err(Error::WrongGeneratorCount {
                expected: nd as usize,
                found: gens.len(),
            });
        }
        for (r, &g) in gens.iter().enumerate() {
            if g < 0 || g.rem_euclid(nd) != r as i64 {
                return Err(Error::ResidueMismatch {
                    residue: r,
                    value: g,
                    modulus: nd,
                });
            }
        }
        let min = *gens.iter().min().expect("nd ≥ 1");
        if min != 0 {
            return Err(Error::NotNormalized { min });
        }
        for (r, &g) in gens.iter().enumerate() {
            let next = ((r as i64 + md) % nd) as usize;
            if gens[next] > g + md {
                return Err(Error::NotInvariant {
                    residue: r,
                    generator: g,
                    witness: g + md,
                });
            }
        }
        Ok(Self { params, gens })
    }

    /// The subset `{x ≥ 0 : x ∉ missing}`; fails if it is not invariant.
    pub fn from_complement(params: CurveParams, missing: &[i64]) -> Result<Self> {
        let missing: BTreeSet<i64> = missing.iter().copied().collect();
        let nd = params.nd();
        let gens = (0..nd)
            .map(|r| {
                let mut x = r;
                while missing.contains(&x) {
                    x += nd;
                }
                x
            })
            .collect();
        let subset = Self::from_generators(params, gens)?;
        if let Some(&x) = missing.iter().find(|&&x| x >= 0 && subset.contains(x)) {
            return Err(Error::NotInvariant {
                residue: x.rem_euclid(nd) as usize,
                generator: x - nd,
                witness: x,
            });
        }
        Ok(subset)
    }

    /// `Z≥0` itself.
    pub fn full(params: CurveParams) -> Self {
        Self {
            params,
            gens: (0..params.nd()).collect(),
        }
    }

    pub fn params(&self) -> CurveParams {
        self.params
    }

    /// Generators indexed by residue modulo `nd`.
    pub fn gens(&self) -> &[i64] {
        &self.gens
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= 0 && x >= self.gens[x.rem_euclid(self.params.nd()) as usize]
    }

    /// Largest generator; every integer above it minus `nd` lies in `Δ`.
    pub fn max_generator(&self) -> i64 {
        *self.gens.iter().max().expect("nd ≥ 1")
    }

    /// Largest non-member of `Z≥0`, or `-1` for `Z≥0`.
    pub fn frobenius(&self) -> i64 {
        self.max_generator() - self.params.nd()
    }

    /// `[x, ∞) ∖ Δ`, sorted.
    pub fn gaps(&self, x: i64) -> Vec<i64> {
        (x.max(0)..=self.frobenius())
            .filter(|&y| !self.contains(y))
            .collect()
    }

    pub fn num_gaps(&self, x: i64) -> usize {
        (x.max(0)..=self.frobenius())
            .filter(|&y| !self.contains(y))
            .count()
    }

    pub fn generator_grid(&self) -> GeneratorGrid {
        let (nd, md) = (self.params.nd(), self.params.md());
        let mut rows = Vec::with_capacity(self.params.d as usize);
        let mut alpha = Vec::with_capacity(self.params.d as usize);
        for j in 0..self.params.d as usize {
            let mut row = vec![self.gens[j]];
            for _ in 1..self.params.n {
                let last = *row.last().unwrap();
                row.push(self.gens[((last + md) % nd) as usize]);
            }
            let a = (0..row.len())
                .map(|i| (row[i] + md - row[(i + 1) % row.len()]) / nd)
                .collect();
            rows.push(row);
            alpha.push(a);
        }
        GeneratorGrid { rows, alpha }
    }

    /// `x` is `j`-suspicious when `a[j][i] + md + x ∉ Δ` for every `i`.
    pub fn is_suspicious(&self, x: i64, j: usize) -> Result<bool> {
        if x <= 0 {
            return Err(Error::ZeroShift);
        }
        let d = self.params.d as usize;
        if j >= d {
            return Err(Error::ResidueOutOfRange {
                residue: j,
                modulus: d,
            });
        }
        let (nd, md) = (self.params.nd(), self.params.md());
        // The residues a[j][i] mod nd are exactly those congruent to j mod d.
        Ok((j as i64..nd)
            .step_by(d)
            .all(|r| !self.contains(self.gens[r as usize] + md + x)))
    }

    /// First residue `j` for which `x` is `j`-suspicious.
    pub fn suspicious_residue(&self, x: i64) -> Option<usize> {
        (0..self.params.d as usize).find(|&j| self.is_suspicious(x, j).unwrap_or(false))
    }

    pub fn is_s_admissible(&self, s: u32) -> bool {
        self.suspicious_residue(s as i64).is_none()
    }

    pub fn is_admissible(&self) -> bool {
        self.is_s_admissible(1)
    }

    /// `Σ (|Gaps(a)| − |Gaps(a + md)|)` over the `nd`-generators.
    pub fn dim(&self) -> u64 {
        let md = self.params.md();
        self.gens
            .iter()
            .map(|&a| (self.num_gaps(a) - self.num_gaps(a + md)) as u64)
            .sum()
    }

    /// `#{(a, b) : a an nd-generator, b an md-cogenerator, a < b}`.
    pub fn dim_by_pairs(&self) -> u64 {
        let cogens = self.md_cogenerators();
        self.gens
            .iter()
            .map(|&a| cogens.iter().filter(|&&b| a < b).count() as u64)
            .sum()
    }

    /// `{b ≥ 0 : b ∉ Δ, b + md ∈ Δ}`, sorted.
    pub fn md_cogenerators(&self) -> Vec<i64> {
        let md = self.params.md();
        self.gaps(0)
            .into_iter()
            .filter(|&b| self.contains(b + md))
            .collect()
    }

    /// The residue component `Δ_r = {x ∈ Δ : x ≡ r mod d}` as its generators.
    pub fn component_generators(&self, r: usize) -> Vec<i64> {
        let d = self.params.d as usize;
        self.gens.iter().copied().skip(r % d).step_by(d).collect()
    }

    pub fn component_min(&self, r: usize) -> i64 {
        *self.component_generators(r).iter().min().expect("n ≥ 1")
    }
}

impl Serialize for InvariantSubset {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        SubsetJson {
            n: self.params.n,
            m: self.params.m,
            d: self.params.d,
            s: Some(self.params.s),
            gens: self.gens.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for InvariantSubset {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = SubsetJson::deserialize(deserializer)?;
        let params = CurveParams::new(raw.n, raw.m, raw.d, raw.s.unwrap_or(1))
            .map_err(serde::de::Error::custom)?;
        Self::from_generators(params, raw.gens).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct SubsetJson {
    n: u32,
    m: u32,
    d: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<u32>,
    gens: Vec<i64>,
}

/// Every 0-normalized `(nd, md)`-invariant subset with all generators at most
/// `bound`, sorted lexicographically by generator vector.
pub fn enumerate_bounded(params: CurveParams, bound: i64) -> Result<Vec<InvariantSubset>> {
    let nd = params.nd();
    if bound < nd {
        return Err(Error::BoundTooSmall { bound, min: nd });
    }
    let md = params.md();
    // Residues of each class mod d, in the cyclic order r ↦ r + md (mod nd).
    let cycles: Vec<Vec<usize>> = (0..params.d as i64)
        .map(|j| {
            let mut cycle = vec![j as usize];
            for _ in 1..params.n {
                cycle.push(((*cycle.last().unwrap() as i64 + md) % nd) as usize);
            }
            cycle
        })
        .collect();
    let mut gens = vec![0i64; nd as usize];
    let mut out = Vec::new();
    fill_cycles(&cycles, 0, 0, nd, md, bound, &mut gens, &mut |g| {
        out.push(InvariantSubset {
            params,
            gens: g.to_vec(),
        })
    });
    out.sort_by(|a, b| a.gens.cmp(&b.gens));
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn fill_cycles(
    cycles: &[Vec<usize>],
    class: usize,
    pos: usize,
    nd: i64,
    md: i64,
    bound: i64,
    gens: &mut [i64],
    emit: &mut impl FnMut(&[i64]),
) {
    if class == cycles.len() {
        emit(gens);
        return;
    }
    let cycle = &cycles[class];
    if pos == cycle.len() {
        // Closing condition of the cycle: first ≤ last + md.
        if gens[cycle[0]] <= gens[cycle[pos - 1]] + md {
            fill_cycles(cycles, class + 1, 0, nd, md, bound, gens, emit);
        }
        return;
    }
    let r = cycle[pos] as i64;
    let hi = if pos == 0 {
        bound
    } else {
        bound.min(gens[cycle[pos - 1]] + md)
    };
    let values: Vec<i64> = if r == 0 {
        vec![0]
    } else {
        (r..=hi).step_by(nd as usize).collect()
    };
    for v in values {
        gens[r as usize] = v;
        fill_cycles(cycles, class, pos + 1, nd, md, bound, gens, emit);
    }
}

/// The `s`-admissible subsets with generators at most `bound` (default
/// [`CurveParams::default_bound`]), certified by repeating the count at twice
/// the bound.
pub fn admissible_subsets(params: CurveParams, bound: Option<i64>) -> Result<Vec<InvariantSubset>> {
    let bound = bound.unwrap_or_else(|| params.default_bound());
    let s = params.s;
    let at = |b: i64| -> Result<Vec<InvariantSubset>> {
        Ok(enumerate_bounded(params, b)?
            .into_iter()
            .filter(|x| x.is_s_admissible(s))
            .collect())
    };
    let found = at(bound)?;
    let doubled = at(2 * bound)?;
    if doubled.len() != found.len() {
        return Err(Error::BoundUnstable {
            bound,
            count: found.len(),
            doubled: 2 * bound,
            doubled_count: doubled.len(),
        });
    }
    Ok(found)
}

/// Number of gaps of the semigroup generated by `nd`, `md` and `nmd + 1`.
pub fn semigroup_delta(params: CurveParams) -> u64 {
    let (nd, md) = (params.nd(), params.md());
    let extra = params.n as i64 * md + 1;
    // `nd` and `nmd + 1` are coprime, so every integer above their Frobenius
    // number lies in the semigroup.
    let limit = (nd * extra - nd - extra).max(0) as usize;
    let mut member = vec![false; limit + 1];
    member[0] = true;
    for x in 1..=limit as i64 {
        member[x as usize] = [nd, md, extra]
            .iter()
            .any(|&g| x >= g && member[(x - g) as usize]);
    }
    member.iter().filter(|&&b| !b).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::{delta, enumerate_paths, Rectangle};
    use proptest::prelude::*;

    fn params(n: u32, m: u32, d: u32, s: u32) -> CurveParams {
        CurveParams::new(n, m, d, s).unwrap()
    }

    fn example_2_3() -> InvariantSubset {
        InvariantSubset::from_generators(params(2, 3, 2, 1), vec![0, 13, 2, 15]).unwrap()
    }

    fn example_6_2() -> InvariantSubset {
        let p = params(2, 3, 3, 1);
        let mut gens = vec![0; 6];
        for g in [0, 3, 7, 10, 17, 20] {
            gens[g as usize % 6] = g;
        }
        InvariantSubset::from_generators(p, gens).unwrap()
    }

    #[test]
    fn params_validation() {
        assert_eq!(
            CurveParams::new(2, 4, 1, 1),
            Err(Error::NotCoprime {
                first: 2,
                second: 4
            })
        );
        assert_eq!(
            CurveParams::new(2, 3, 2, 2),
            Err(Error::NotCoprime {
                first: 2,
                second: 2
            })
        );
        assert_eq!(
            CurveParams::new(0, 1, 1, 1),
            Err(Error::ZeroParameter { name: "n" })
        );
    }

    #[test]
    fn from_generators_examples() {
        let p = params(2, 3, 2, 1);
        let full = InvariantSubset::from_generators(p, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(full, InvariantSubset::full(p));
        let ex = example_2_3();
        let members: Vec<i64> = (0..16).filter(|&x| ex.contains(x)).collect();
        assert_eq!(members, vec![0, 2, 4, 6, 8, 10, 12, 13, 14, 15]);
        assert_eq!(
            InvariantSubset::from_generators(p, vec![0, 13, 2, 16]),
            Err(Error::ResidueMismatch {
                residue: 3,
                value: 16,
                modulus: 4
            })
        );
    }

    #[test]
    fn from_generators_rejects_bad_input() {
        let p = params(2, 3, 2, 1);
        assert_eq!(
            InvariantSubset::from_generators(p, vec![4, 1, 2, 3]),
            Err(Error::NotNormalized { min: 1 })
        );
        assert_eq!(
            InvariantSubset::from_generators(p, vec![0, 1, 10, 3]),
            Err(Error::NotInvariant {
                residue: 0,
                generator: 0,
                witness: 6
            })
        );
        assert!(matches!(
            InvariantSubset::from_generators(p, vec![0, 1, 2]),
            Err(Error::WrongGeneratorCount {
                expected: 4,
                found: 3
            })
        ));
    }

    #[test]
    fn from_complement_round_trip() {
        let ex =
            InvariantSubset::from_complement(params(2, 3, 2, 1), &[1, 3, 5, 7, 9, 11]).unwrap();
        assert_eq!(ex, example_2_3());
        assert!(InvariantSubset::from_complement(params(2, 3, 2, 1), &[6]).is_err());
    }

    #[test]
    fn gaps_examples() {
        let full = InvariantSubset::full(params(2, 3, 2, 1));
        assert!(full.gaps(0).is_empty());
        let ex = example_6_2();
        assert_eq!(ex.gaps(3), vec![4, 5, 8, 11, 14]);
        assert_eq!(ex.gaps(0).len(), 7);
    }

    #[test]
    fn generator_grid_examples() {
        let full = InvariantSubset::full(params(2, 3, 2, 1)).generator_grid();
        assert_eq!(full.rows, vec![vec![0, 2], vec![1, 3]]);
        let ex = example_2_3().generator_grid();
        assert_eq!(ex.rows, vec![vec![0, 2], vec![13, 15]]);
        let grid = example_6_2().generator_grid();
        let mut all: Vec<i64> = grid.rows.concat();
        all.sort();
        assert_eq!(all, vec![0, 3, 7, 10, 17, 20]);
        assert!(grid.alpha.iter().flatten().all(|&a| a >= 0));
    }

    #[test]
    fn suspicious_examples() {
        assert_eq!(example_2_3().is_suspicious(1, 0), Ok(true));
        let full = InvariantSubset::full(params(2, 3, 2, 1));
        assert!((1..6).all(|x| (0..2).all(|j| !full.is_suspicious(x, j).unwrap())));
        let ex = example_6_2();
        let hits: Vec<usize> = (0..3)
            .filter(|&j| ex.is_suspicious(2, j).unwrap())
            .collect();
        assert_eq!(hits.len(), 1);
        for x in (1..30).filter(|&x| x != 2) {
            assert!((0..3).all(|j| !ex.is_suspicious(x, j).unwrap()), "x = {x}");
        }
        assert_eq!(ex.is_suspicious(0, 0), Err(Error::ZeroShift));
    }

    #[test]
    fn admissibility_examples() {
        assert!(!example_2_3().is_admissible());
        assert!(InvariantSubset::full(params(2, 3, 2, 1)).is_s_admissible(5));
        let p = params(2, 3, 2, 3);
        let seventh = InvariantSubset::from_complement(p, &[3]).unwrap();
        assert!(seventh.is_s_admissible(3));
    }

    #[test]
    fn dim_examples() {
        assert_eq!(example_6_2().dim(), 14);
        assert_eq!(InvariantSubset::full(params(2, 3, 2, 1)).dim(), 0);
        let missing_three = InvariantSubset::from_complement(params(2, 3, 2, 3), &[3]).unwrap();
        assert_eq!(missing_three.dim(), missing_three.dim_by_pairs());
        assert_eq!(example_6_2().dim_by_pairs(), 14);
    }

    #[test]
    fn cogenerator_examples() {
        assert!(InvariantSubset::full(params(2, 3, 2, 1))
            .md_cogenerators()
            .is_empty());
        let cogens = example_2_3().md_cogenerators();
        assert!(cogens.contains(&7) && cogens.contains(&9));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_bounded(params(1, 1, 1, 1), 10).unwrap().len(), 1);
        let adm = |p: CurveParams, b| {
            enumerate_bounded(p, b)
                .unwrap()
                .into_iter()
                .filter(|x| x.is_admissible())
                .count()
        };
        assert_eq!(adm(params(2, 3, 1, 1), 30), 2);
        assert_eq!(adm(params(2, 3, 2, 1), 60), 23);
        assert!(matches!(
            enumerate_bounded(params(2, 3, 2, 1), 3),
            Err(Error::BoundTooSmall { bound: 3, min: 4 })
        ));
    }

    #[test]
    fn enumeration_is_sorted_and_complete() {
        // Brute force over all generator vectors for a small case.
        let p = params(1, 2, 3, 1);
        let bound = 14;
        let listed = enumerate_bounded(p, bound).unwrap();
        let mut brute = Vec::new();
        for g1 in (1..=bound).step_by(3) {
            for g2 in (2..=bound).step_by(3) {
                if let Ok(x) = InvariantSubset::from_generators(p, vec![0, g1, g2]) {
                    brute.push(x);
                }
            }
        }
        brute.sort_by(|a, b| a.gens().cmp(b.gens()));
        assert_eq!(listed, brute);
    }

    #[test]
    fn admissible_counts_are_bound_stable() {
        let found = admissible_subsets(params(2, 3, 2, 1), None).unwrap();
        assert_eq!(found.len(), 23);
        assert!(matches!(
            admissible_subsets(params(2, 3, 2, 1), Some(4)),
            Err(Error::BoundUnstable { .. })
        ));
    }

    #[test]
    fn semigroup_delta_examples() {
        assert_eq!(semigroup_delta(params(2, 3, 2, 1)), 8);
        assert_eq!(semigroup_delta(params(1, 1, 1, 1)), 0);
        assert_eq!(semigroup_delta(params(2, 3, 1, 1)), 1);
        for (n, m, d) in [(1, 2, 3), (2, 3, 2), (3, 4, 2), (1, 1, 4)] {
            assert_eq!(
                semigroup_delta(params(n, m, d, 1)),
                delta(n * d, m * d) as u64
            );
        }
    }

    #[test]
    fn json_round_trip() {
        let ex = example_2_3();
        let text = serde_json::to_string(&ex).unwrap();
        assert_eq!(text, r#"{"n":2,"m":3,"d":2,"s":1,"gens":[0,13,2,15]}"#);
        let back: InvariantSubset = serde_json::from_str(&text).unwrap();
        assert_eq!(back, ex);
        let bad = r#"{"n":2,"m":3,"d":2,"gens":[0,13,2,16]}"#;
        assert!(serde_json::from_str::<InvariantSubset>(bad).is_err());
    }

    #[test]
    fn admissible_count_matches_dyck_for_d1() {
        for (n, m) in [(1, 1), (2, 3), (3, 2), (1, 4)] {
            let p = params(n, m, 1, 1);
            let found = admissible_subsets(p, None).unwrap();
            let all = enumerate_bounded(p, p.default_bound()).unwrap();
            assert_eq!(found.len(), all.len());
            assert_eq!(
                found.len(),
                enumerate_paths(Rectangle::new(n, m).unwrap()).len()
            );
        }
    }

    fn small_params() -> impl Strategy<Value = CurveParams> {
        prop::sample::select(vec![
            (1, 1, 2),
            (1, 1, 3),
            (1, 2, 2),
            (2, 1, 2),
            (1, 2, 3),
            (2, 3, 2),
        ])
        .prop_map(|(n, m, d)| params(n, m, d, 1))
    }

    proptest! {
        #[test]
        fn dim_formulas_agree(p in small_params(), pick in any::<prop::sample::Index>()) {
            let all = enumerate_bounded(p, p.default_bound()).unwrap();
            let x = pick.get(&all);
            prop_assert_eq!(x.dim(), x.dim_by_pairs());
        }

        #[test]
        fn admissible_subsets_are_conductor_invariant(p in small_params(), pick in any::<prop::sample::Index>()) {
            let adm = admissible_subsets(p, None).unwrap();
            let x = pick.get(&adm);
            let c = p.n() as i64 * p.md() + 1;
            prop_assert!(x.gens().iter().all(|&g| x.contains(g + c)));
        }
    }
}
