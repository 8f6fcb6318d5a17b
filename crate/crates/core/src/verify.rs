//! Named cross-validation suites.
//!
//! Each suite runs a fixed family of exact checks and reports every check by
//! name, so a failure points at the offending parameters or subset.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;

use crate::cabled::{
    bar_transform, cabled_count, count_s_admissible, from_cabled, piontkowski_chi, to_cabled,
    Family,
};
use crate::classes::{
    build_bicolored, minimal_point, monotone_path, normalize, ClassDecomposition, Color,
};
use crate::dyck::{
    bizley_series, bizley_table, count_paths, delta, enumerate_paths, poincare, poincare_by_area,
    qt_catalan, Rectangle,
};
use crate::invariant::{admissible_subsets, enumerate_bounded, CurveParams, InvariantSubset};
use crate::shuffle::verify_identity;
use crate::{gcd, Result};

/// Parameters shared by all suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Largest `nd·md` covered by the symmetry and specialization suites.
    pub max_size: u32,
    pub seed: u64,
    pub trials: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_size: 48,
            seed: 7,
            trials: 5,
        }
    }
}

/// A single named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// The checks of one suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        Self {
            suite: suite.name().into(),
            pass: true,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.pass &= pass;
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    fn equal<T: PartialEq + fmt::Debug>(
        &mut self,
        name: impl Into<String>,
        actual: T,
        expected: T,
    ) {
        let pass = actual == expected;
        let detail = if pass {
            format!("{actual:?}")
        } else {
            format!("got {actual:?}, expected {expected:?}")
        };
        self.check(name, pass, detail);
    }

    /// Records a property checked over many cases, keeping the first
    /// counterexample.
    fn property(&mut self, name: impl Into<String>, cases: usize, violations: Vec<String>) {
        let detail = match violations.first() {
            None => format!("{cases} cases"),
            Some(first) => format!("{} of {cases} cases fail, first: {first}", violations.len()),
        };
        self.check(name, violations.is_empty(), detail);
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// The available suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Golden,
    Bizley,
    Symmetry,
    Specialization,
    Admissible,
    Representatives,
    Properties,
    DimExample,
    Necessity,
    WorkedClasses,
    Shuffle,
    Cabled,
    CabledExample,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Golden,
        Suite::Bizley,
        Suite::Symmetry,
        Suite::Specialization,
        Suite::Admissible,
        Suite::Representatives,
        Suite::Properties,
        Suite::DimExample,
        Suite::Necessity,
        Suite::WorkedClasses,
        Suite::Shuffle,
        Suite::Cabled,
        Suite::CabledExample,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Golden => "golden",
            Suite::Bizley => "bizley",
            Suite::Symmetry => "symmetry",
            Suite::Specialization => "specialization",
            Suite::Admissible => "admissible",
            Suite::Representatives => "representatives",
            Suite::Properties => "properties",
            Suite::DimExample => "dim-example",
            Suite::Necessity => "necessity",
            Suite::WorkedClasses => "worked-classes",
            Suite::Shuffle => "shuffle",
            Suite::Cabled => "cabled",
            Suite::CabledExample => "cabled-example",
        }
    }

    pub fn run(&self, config: &VerifyConfig) -> Result<SuiteReport> {
        match self {
            Suite::Golden => golden(),
            Suite::Bizley => bizley(),
            Suite::Symmetry => symmetry(config),
            Suite::Specialization => specialization(config),
            Suite::Admissible => admissible(),
            Suite::Representatives => representatives(),
            Suite::Properties => properties(),
            Suite::DimExample => dim_example(),
            Suite::Necessity => necessity(),
            Suite::WorkedClasses => worked_classes(),
            Suite::Shuffle => shuffle(config),
            Suite::Cabled => cabled(),
            Suite::CabledExample => cabled_example(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s}"))
    }
}

/// Runs every suite in order.
pub fn run_all(config: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    Suite::ALL.iter().map(|suite| suite.run(config)).collect()
}

/// `(n, m, d)` for the enumeration suites.
pub const ENUMERATION_RANGE: [(u32, u32, u32); 5] =
    [(1, 1, 2), (1, 1, 3), (1, 2, 2), (1, 2, 3), (2, 3, 2)];

/// `(n, m, d)` for the tableau identity.
pub const SHUFFLE_RANGE: [(u32, u32, u32); 5] =
    [(1, 1, 1), (2, 3, 1), (1, 2, 2), (1, 1, 3), (2, 3, 2)];

/// `(n, m, d, s)` for the cabled bijection.
pub const CABLED_RANGE: [(u32, u32, u32, u32); 5] = [
    (1, 1, 2, 3),
    (1, 2, 2, 3),
    (2, 3, 2, 3),
    (1, 1, 3, 2),
    (1, 2, 3, 2),
];

fn params(n: u32, m: u32, d: u32, s: u32) -> CurveParams {
    CurveParams::new(n, m, d, s).expect("suite parameters are valid")
}

/// All `(n, m, d)` with `gcd(n, m) = 1` and `nd·md ≤ max_size`.
pub fn rectangles_up_to(max_size: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for d in 1..=max_size {
        for n in 1..=max_size {
            for m in 1..=max_size {
                if gcd(n as u64, m as u64) == 1
                    && (n * d) as u64 * (m * d) as u64 <= max_size as u64
                {
                    out.push((n, m, d));
                }
            }
        }
    }
    out
}

fn golden() -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Golden);
    r.equal(
        "poincare(2,3,2)",
        poincare(2, 3, 2, false)?.to_string(),
        "1+t+2t^2+3t^3+4t^4+4t^5+4t^6+3t^7+t^8".to_string(),
    );
    r.equal("c(4,6)", count_paths(4, 6)?, BigUint::from(23u32));
    Ok(r)
}

fn bizley() -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Bizley);
    for (n, m) in [(1, 1), (1, 2), (2, 3), (3, 4)] {
        for row in bizley_table(n, m, 4)? {
            r.check(
                format!("series coefficient ({n},{m}) d={}", row.d),
                row.holds(),
                format!("{} vs {}", row.series_coefficient, row.path_count),
            );
        }
    }
    let series = bizley_series(2, 3, 2)?;
    let int = |x: i64| BigRational::from_integer(BigInt::from(x));
    let expected = int(21) + int(2) * int(2) / int(2);
    r.equal(
        "21 + 2^2/2 at (2,3) d=2",
        series.coefficient(2).cloned(),
        Some(expected),
    );
    Ok(r)
}

fn symmetry(config: &VerifyConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Symmetry);
    let mut swap = Vec::new();
    let mut transpose = Vec::new();
    let rects = rectangles_up_to(config.max_size);
    for &(n, m, d) in &rects {
        let c = qt_catalan(n * d, m * d)?;
        if c.swap_variables() != c {
            swap.push(format!("({},{})", n * d, m * d));
        }
        if qt_catalan(m * d, n * d)? != c {
            transpose.push(format!("({},{})", n * d, m * d));
        }
    }
    r.property("q,t symmetry", rects.len(), swap);
    r.property("transpose", rects.len(), transpose);
    Ok(r)
}

fn specialization(config: &VerifyConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Specialization);
    let mut violations = Vec::new();
    let rects = rectangles_up_to(config.max_size);
    for &(n, m, d) in &rects {
        let top = delta(n * d, m * d);
        let from_catalan = qt_catalan(n * d, m * d)?.specialize_q1().reflect(top);
        let by_dinv = poincare(n, m, d, false)?;
        let by_area = poincare_by_area(n, m, d)?;
        if from_catalan != by_dinv || by_dinv != by_area {
            violations.push(format!(
                "({n},{m},{d}): {from_catalan} / {by_dinv} / {by_area}"
            ));
        }
    }
    r.property(
        "t^δ C(1,1/t) = Σ t^(δ-dinv) = Σ t^(δ-area)",
        rects.len(),
        violations,
    );
    Ok(r)
}

fn admissible() -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Admissible);
    for (n, m, d) in ENUMERATION_RANGE {
        let subsets = admissible_subsets(params(n, m, d, 1), None)?;
        r.equal(
            format!("count ({n},{m},{d})"),
            BigUint::from(subsets.len()),
            count_paths(n * d, m * d)?,
        );
        let mut dims: Vec<u64> = subsets.iter().map(InvariantSubset::dim).collect();
        let top = delta(n * d, m * d);
        let mut codinv: Vec<u64> = enumerate_paths(Rectangle::new(n * d, m * d)?)
            .iter()
            .map(|p| (top - p.dinv()) as u64)
            .collect();
        dims.sort_unstable();
        codinv.sort_unstable();
        r.check(
            format!("dim multiset ({n},{m},{d})"),
            dims == codinv,
            format!("{} values", dims.len()),
        );
    }
    Ok(r)
}

fn representatives() -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Representatives);
    for (n, m, d) in ENUMERATION_RANGE {
        let p = params(n, m, d, 1);
        let all = enumerate_bounded(p, p.default_bound())?;
        let mut fibers: BTreeMap<Vec<i64>, Vec<&InvariantSubset>> = BTreeMap::new();
        let mut bad_normal = Vec::new();
        for x in &all {
            let normal = normalize(x)?;
            if normalize(&normal)? != normal || normal.dim() != x.dim() || !normal.is_admissible() {
                bad_normal.push(format!("{:?}", x.gens()));
            }
            fibers.entry(normal.gens().to_vec()).or_default().push(x);
        }
        let bad_fibers = fibers
            .iter()
            .filter(|(_, xs)| xs.iter().filter(|x| x.is_admissible()).count() != 1)
            .map(|(k, _)| format!("{k:?}"))
            .collect();
        r.property(
            format!("normalize idempotent, dim-preserving ({n},{m},{d})"),
            all.len(),
            bad_normal,
        );
        r.property(
            format!("one admissible per fiber ({n},{m},{d})"),
            fibers.len(),
            bad_fibers,
        );
    }
    Ok(r)
}

/// Generators of `Δ_j + shift`, keyed by residue modulo `nd`.
fn shifted_component(x: &InvariantSubset, j: usize, shift: i64) -> BTreeMap<i64, i64> {
    let nd = x.params().nd();
    x.component_generators(j)
        .into_iter()
        .map(|a| ((a + shift).rem_euclid(nd), a + shift))
        .collect()
}

fn component_subset(x: &InvariantSubset, r: usize, c: &BTreeMap<i64, i64>) -> bool {
    let nd = x.params().nd();
    x.component_generators(r)
        .into_iter()
        .all(|b| c.get(&b.rem_euclid(nd)).is_some_and(|&g| b >= g))
}

fn properties() -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Properties);
    let names = [
        "gap propagation",
        "suspicion iff containment",
        "minima rule",
        "last-residue rule",
        "predecessor-gap rule",
        "(mnd+1)-invariance",
        "dim formulas agree",
    ];
    let mut violations: Vec<Vec<String>> = vec![Vec::new(); names.len()];
    let mut cases = 0;
    for (n, m, d) in ENUMERATION_RANGE {
        let p = params(n, m, d, 1);
        let (nd, md, du) = (p.nd(), p.md(), d as usize);
        for x in enumerate_bounded(p, p.default_bound())? {
            cases += 1;
            let tag = |what: String| format!("({n},{m},{d}) {:?} {what}", x.gens());
            let grid = x.generator_grid();
            let top = x.max_generator() + md + nd + 1;
            for j in 0..du {
                let row = &grid.rows[j];
                for i in 0..row.len() {
                    let next = row[(i + 1) % row.len()];
                    for shift in -md..=top {
                        if !x.contains(row[i] + md + shift)
                            && (x.contains(row[i] + shift) || x.contains(next + shift))
                        {
                            violations[0].push(tag(format!("a={} x={shift}", row[i])));
                        }
                    }
                }
            }
            let admissible = x.is_admissible();
            for shift in 1..=top {
                for j in 0..du {
                    let suspicious = x.is_suspicious(shift, j)?;
                    let target = (j + shift as usize) % du;
                    let contained =
                        component_subset(&x, target, &shifted_component(&x, j, md + nd + shift));
                    if suspicious != contained {
                        violations[1].push(tag(format!("x={shift} j={j}")));
                    }
                    if x.component_min(target) <= x.component_min(j) && suspicious {
                        violations[2].push(tag(format!("x={shift} j={j}")));
                    }
                    if admissible && suspicious && row_has_no_predecessor_gap(&x, j, shift) {
                        violations[4].push(tag(format!("x={shift} j={j}")));
                    }
                }
                let last = (du - shift as usize % du) % du;
                if x.is_suspicious(shift, last)? {
                    violations[3].push(tag(format!("x={shift}")));
                }
            }
            let conductor = p.md() * n as i64 + 1;
            if admissible && x.gens().iter().any(|&g| !x.contains(g + conductor)) {
                violations[5].push(tag(String::new()));
            }
            if x.dim() != x.dim_by_pairs() {
                violations[6].push(tag(format!("{} vs {}", x.dim(), x.dim_by_pairs())));
            }
        }
    }
    for (name, v) in names.iter().zip(violations) {
        r.property(*name, cases, v);
    }
    Ok(r)
}

fn row_has_no_predecessor_gap(x: &InvariantSubset, j: usize, shift: i64) -> bool {
    x.component_generators(j)
        .iter()
        .all(|&a| x.contains(a + shift - 1))
}

/// The 6-generators `{0, 3, 7, 10, 17, 20}` with `(n, m, d) = (2, 3, 3)`.
pub fn dim_example_subset() -> Result<InvariantSubset> {
    let mut gens = vec![0, 3, 7, 10, 17, 20];
    gens.sort_by_key(|g| g % 6);
    InvariantSubset::from_generators(params(2, 3, 3, 1), gens)
}

/// The subset with generators `[0, 13, 2, 15]` for `(t^4, t^6 + t^7)`.
pub fn necessity_example_subset() -> Result<InvariantSubset> {
    InvariantSubset::from_generators(params(2, 3, 2, 1), vec![0, 13, 2, 15])
}

fn dim_example() -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::DimExample);
    let x = dim_example_subset()?;
    r.equal("dim", x.dim(), 14);
    r.equal("dim by pairs", x.dim_by_pairs(), 14);
    Ok(r)
}

fn necessity() -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Necessity);
    let x = necessity_example_subset()?;
    r.equal("rejected", x.is_admissible(), false);
    r.equal("1 is 0-suspicious", x.suspicious_residue(1), Some(0));
    Ok(r)
}

/// The two minimal representatives for `(n, m, d) = (3, 2, 3)`.
pub fn d3_reference_subsets() -> Result<(InvariantSubset, InvariantSubset)> {
    let p = params(3, 2, 3, 1);
    Ok((
        InvariantSubset::from_complement(p, &[1, 3, 4, 7, 10, 13, 16, 22])?,
        InvariantSubset::from_complement(p, &[2, 3, 5, 8, 11, 14, 17, 23])?,
    ))
}

/// The reference subset `Z≥0 ∖ {2,3,4,6,7,10,11,14,15,18,19,22,23,30}` for
/// `d = 4`, read with `(n, m) = (3, 2)` and with `(2, 3)`.
pub fn d4_reference_subsets() -> Result<Vec<InvariantSubset>> {
    let missing = [2, 3, 4, 6, 7, 10, 11, 14, 15, 18, 19, 22, 23, 30];
    [(3, 2), (2, 3)]
        .into_iter()
        .map(|(n, m)| InvariantSubset::from_complement(params(n, m, 4, 1), &missing))
        .collect()
}

fn worked_classes() -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::WorkedClasses);
    let (first, second) = d3_reference_subsets()?;
    r.equal(
        "d=3 classification",
        (first.is_admissible(), second.is_admissible()),
        (true, false),
    );
    let dec = ClassDecomposition::decompose(&first);
    let minimal = minimal_point(&dec)?;
    let g = build_bicolored(&minimal, &dec)?;
    r.equal(
        "d=3 edges",
        (
            g.edge(Color::Blue, 0, 1),
            g.edge(Color::Blue, 0, 2),
            g.edge(Color::Green, 1, 2),
        ),
        (true, true, true),
    );
    r.equal("d=3 path", monotone_path(&g), vec![0, 1, 2]);
    r.equal("d=3 normalize", normalize(&second)?, first);

    let reference = d4_reference_subsets()?.remove(0);
    let dec = ClassDecomposition::decompose(&reference);
    let minimal = minimal_point(&dec)?;
    r.equal("d=4 minimal point", &minimal, &dec);
    let g = build_bicolored(&minimal, &dec)?;
    let blue: BTreeSet<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|e| e.color == Color::Blue)
        .map(|e| (e.from, e.to))
        .collect();
    r.equal(
        "d=4 blue edges",
        blue,
        BTreeSet::from([(0, 1), (0, 2), (0, 3), (2, 3)]),
    );
    // Θ_2 = Z≥6∖{7} and Θ_3 = Z≥6 both lie in Θ_1 + n + m = Z≥5.
    let green: BTreeSet<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|e| e.color == Color::Green)
        .map(|e| (e.from, e.to))
        .collect();
    r.equal(
        "d=4 green edges by containment",
        green,
        BTreeSet::from([(2, 1), (3, 1)]),
    );
    r.equal("d=4 monotone path", monotone_path(&g), vec![0, 2, 3, 1]);
    let normal = normalize(&reference)?;
    r.equal(
        "d=4 representative admissible",
        normal.is_admissible(),
        true,
    );
    r.equal(
        "d=4 representative gaps",
        normal.gaps(0),
        vec![1, 2, 4, 5, 6, 9, 10, 13, 14, 17, 18, 21, 22, 29],
    );
    Ok(r)
}

fn shuffle(config: &VerifyConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Shuffle);
    for (n, m, d) in SHUFFLE_RANGE {
        let report = verify_identity(n, m, d, config.trials, config.seed)?;
        let points: Vec<String> = report
            .points
            .iter()
            .map(|p| format!("({},{})", p.q0, p.t0))
            .collect();
        r.check(
            format!("identity ({n},{m},{d})"),
            report.pass,
            points.join(" "),
        );
    }
    Ok(r)
}

fn cabled() -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Cabled);
    for (n, m, d, s) in CABLED_RANGE {
        let p = params(n, m, d, s);
        let subsets = admissible_subsets(p, None)?;
        r.equal(
            format!("count ({n},{m},{d},{s})"),
            cabled_count(n, m, d, s)?,
            BigUint::from(count_s_admissible(p)?),
        );
        let mut images = HashSet::new();
        let mut round_trip = Vec::new();
        for x in &subsets {
            let data = to_cabled(x)?;
            if from_cabled(p, &data).as_ref() != Ok(x) {
                round_trip.push(format!("{:?}", x.gens()));
            }
            images.insert(data);
        }
        r.equal(
            format!("injective ({n},{m},{d},{s})"),
            images.len(),
            subsets.len(),
        );
        r.property(
            format!("round trip ({n},{m},{d},{s})"),
            subsets.len(),
            round_trip,
        );
    }
    for family in [
        Family::TwoQ(3),
        Family::TwoQ(5),
        Family::ThreeFour,
        Family::ThreeFive,
    ] {
        let (n, m) = family.n_m();
        for s in [1, 3, 5] {
            let count = BigRational::from_integer(BigInt::from(cabled_count(n, m, 2, s)?));
            r.equal(
                format!("closed form ({n},{m}) s={s}"),
                count,
                piontkowski_chi(family, s)?,
            );
        }
    }
    r.equal("c(6,8)", count_paths(6, 8)?, BigUint::from(227u32));
    r.equal("c(6,10)", count_paths(6, 10)?, BigUint::from(525u32));
    Ok(r)
}

/// `Z≥0 ∖ {3}` with `(n, m, d, s) = (2, 3, 2, 3)`.
pub fn cabled_example_subset() -> Result<InvariantSubset> {
    InvariantSubset::from_complement(params(2, 3, 2, 3), &[3])
}

fn cabled_example() -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::CabledExample);
    let x = cabled_example_subset()?;
    let bar = bar_transform(&x);
    let window = |k: usize| {
        (-6..12)
            .filter(|&y| bar[k].contains(2, y))
            .collect::<Vec<i64>>()
    };
    r.equal("bar component 0", window(0), vec![0, 2, 4, 6, 8, 10]);
    r.equal("bar component 1", window(1), vec![-1, 3, 5, 7, 9, 11]);
    let data = to_cabled(&x)?;
    r.equal(
        "vertical runs",
        data.pattern.vertical_runs().to_vec(),
        vec![1, 1],
    );
    r.equal(
        "horizontal runs",
        data.pattern.horizontal_runs().to_vec(),
        vec![1, 2],
    );
    r.equal("round trip", from_cabled(x.params(), &data)?, x);
    Ok(r)
}
