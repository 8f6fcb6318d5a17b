//! Equivalence classes of `(nd, md)`-invariant subsets.
//!
//! A subset splits by residue modulo `d` into scaled copies of `(n, m)`-invariant
//! subsets: `Δ_k = d·(Θ⁰_k + shift_k) + residue_k` with `Θ⁰_k` 0-normalized.
//! Two subsets are equivalent when their shift vectors lie in the same region
//! of the arrangement cut out by skeleton collisions. Each class has a unique
//! admissible representative, reached by [`normalize`].

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::invariant::{CurveParams, InvariantSubset};
use crate::{gcd, Error, Result};

/// A 0-normalized `(n, m)`-invariant subset of `Z≥0`, stored by its
/// `n`-generators indexed by residue modulo `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallInvariantSubset {
    n: u32,
    m: u32,
    gens: Vec<i64>,
}

impl SmallInvariantSubset {
    pub fn new(n: u32, m: u32, gens: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroParameter { name: "n" });
        }
        if m == 0 {
            return Err(Error::ZeroParameter { name: "m" });
        }
        if gcd(n as u64, m as u64) != 1 {
            return Err(Error::NotCoprime {
                first: n as u64,
                second: m as u64,
            });
        }
        let modulus = n as i64;
        if gens.len() != n as usize {
            return Err(Error::WrongGeneratorCount {
                expected: n as usize,
                found: gens.len(),
            });
        }
        for (r, &g) in gens.iter().enumerate() {
            if g < 0 || g.rem_euclid(modulus) != r as i64 {
                return Err(Error::ResidueMismatch {
                    residue: r,
                    value: g,
                    modulus,
                });
            }
        }
        let min = *gens.iter().min().expect("n ≥ 1");
        if min != 0 {
            return Err(Error::NotNormalized { min });
        }
        for (r, &g) in gens.iter().enumerate() {
            if gens[(r + m as usize) % n as usize] > g + m as i64 {
                return Err(Error::NotInvariant {
                    residue: r,
                    generator: g,
                    witness: g + m as i64,
                });
            }
        }
        Ok(Self { n, m, gens })
    }

    pub fn full(n: u32, m: u32) -> Result<Self> {
        Self::new(n, m, (0..n as i64).collect())
    }

    /// `{y ≥ 0 : y ∉ missing}`; fails if that set is not invariant.
    pub fn from_complement(n: u32, m: u32, missing: &[i64]) -> Result<Self> {
        let missing: BTreeSet<i64> = missing.iter().copied().collect();
        let gens = (0..n as i64)
            .map(|r| {
                let mut y = r;
                while missing.contains(&y) {
                    y += n as i64;
                }
                y
            })
            .collect();
        let theta = Self::new(n, m, gens)?;
        if let Some(&y) = missing.iter().find(|&&y| y >= 0 && theta.contains(y)) {
            return Err(Error::NotInvariant {
                residue: y.rem_euclid(n as i64) as usize,
                generator: y - n as i64,
                witness: y,
            });
        }
        Ok(theta)
    }

    /// Builds the 0-normalized translate of a subset of `Z` given by one
    /// generator per residue modulo `n`, in any order. Returns the subset and
    /// the translation that was removed.
    fn normalized_from_translate(n: u32, m: u32, generators: &[i64]) -> Result<(Self, i64)> {
        let shift = *generators.iter().min().expect("n ≥ 1");
        let mut gens = vec![0; n as usize];
        for &g in generators {
            gens[(g - shift).rem_euclid(n as i64) as usize] = g - shift;
        }
        Ok((Self::new(n, m, gens)?, shift))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Generators indexed by residue modulo `n`.
    pub fn gens(&self) -> &[i64] {
        &self.gens
    }

    pub fn contains(&self, y: i64) -> bool {
        y >= 0 && y >= self.gens[y.rem_euclid(self.n as i64) as usize]
    }

    pub fn max_generator(&self) -> i64 {
        *self.gens.iter().max().expect("n ≥ 1")
    }

    /// The `n`-generators, sorted.
    pub fn generators(&self) -> Vec<i64> {
        let mut g = self.gens.clone();
        g.sort_unstable();
        g
    }

    /// `{b : b ∉ Θ, b + m ∈ Θ}`, one per residue modulo `m`, sorted.
    pub fn m_cogenerators(&self) -> Vec<i64> {
        let m = self.m as i64;
        let mut cogens: Vec<i64> = (-m..=self.max_generator())
            .filter(|&b| !self.contains(b) && self.contains(b + m))
            .collect();
        cogens.sort_unstable();
        cogens
    }

    /// Union of `n`-generators and `m`-cogenerators.
    pub fn skeleton(&self) -> Skeleton {
        Skeleton(
            self.generators()
                .into_iter()
                .chain(self.m_cogenerators())
                .collect(),
        )
    }

    /// `Θ + a ⊆ other + b`, decided residue by residue on generators.
    pub fn translate_is_subset(&self, a: i64, other: &Self, b: i64) -> bool {
        let n = self.n as i64;
        let lifted = |theta: &Self, shift: i64| {
            let mut out = vec![0; theta.n as usize];
            for &g in &theta.gens {
                out[(g + shift).rem_euclid(n) as usize] = g + shift;
            }
            out
        };
        let mine = lifted(self, a);
        let theirs = lifted(other, b);
        mine.iter().zip(&theirs).all(|(x, y)| x >= y)
    }
}

/// Union of the `n`-generators and `m`-cogenerators of an `(n, m)`-invariant
/// subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton(BTreeSet<i64>);

impl Skeleton {
    pub fn elements(&self) -> &BTreeSet<i64> {
        &self.0
    }

    pub fn shifted(&self, by: i64) -> Skeleton {
        Skeleton(self.0.iter().map(|x| x + by).collect())
    }

    pub fn intersects(&self, other: &Skeleton) -> bool {
        self.0.intersection(&other.0).next().is_some()
    }
}

/// `(S_i + shift_i) ∩ (S_j + shift_j) ≠ ∅`, with shifts in units of the
/// small lattice (so the scaled statement multiplies everything by `d`).
pub fn skeletons_intersect(
    theta_i: &SmallInvariantSubset,
    shift_i: i64,
    theta_j: &SmallInvariantSubset,
    shift_j: i64,
) -> bool {
    theta_i
        .skeleton()
        .shifted(shift_i)
        .intersects(&theta_j.skeleton().shifted(shift_j))
}

/// Which containment holds between two translates with disjoint skeletons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Containment {
    /// `Θ_i ⊂ Θ_j + n + m`.
    IInJ,
    /// `Θ_j ⊂ Θ_i + n + m`.
    JInI,
}

/// Decides `Θ_i + shift_i ⊂ Θ_j + shift_j + n + m` or the reverse. In the
/// errors, `i = 0` names the first argument and `j = 1` the second.
pub fn containment_direction(
    theta_i: &SmallInvariantSubset,
    shift_i: i64,
    theta_j: &SmallInvariantSubset,
    shift_j: i64,
) -> Result<Containment> {
    if skeletons_intersect(theta_i, shift_i, theta_j, shift_j) {
        return Err(Error::SkeletonsIntersect { i: 0, j: 1 });
    }
    let nm = (theta_i.n + theta_i.m) as i64;
    if theta_i.translate_is_subset(shift_i, theta_j, shift_j + nm) {
        Ok(Containment::IInJ)
    } else if theta_j.translate_is_subset(shift_j, theta_i, shift_i + nm) {
        Ok(Containment::JInI)
    } else {
        Err(Error::NoContainment { i: 0, j: 1 })
    }
}

/// One residue component `d·(Θ⁰ + shift) + residue`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    pub theta: SmallInvariantSubset,
    pub shift: i64,
    pub residue: u32,
}

impl Component {
    /// Smallest element `d·shift + residue`.
    pub fn min(&self, d: u32) -> i64 {
        d as i64 * self.shift + self.residue as i64
    }

    pub fn contains(&self, d: u32, x: i64) -> bool {
        let d = d as i64;
        (x - self.residue as i64).rem_euclid(d) == 0
            && self
                .theta
                .contains((x - self.residue as i64).div_euclid(d) - self.shift)
    }
}

/// A subset split into residue components; components may cover fewer than
/// `d` residues, as needed for the per-run data of cabled paths.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassDecomposition {
    params: CurveParams,
    components: Vec<Component>,
}

impl ClassDecomposition {
    /// Validates that residues are distinct and below `d`, and that every
    /// component uses the `(n, m)` of the parameters.
    pub fn new(params: CurveParams, components: Vec<Component>) -> Result<Self> {
        let d = params.d();
        if components.is_empty() || components.len() > d as usize {
            return Err(Error::InvalidDecomposition(format!(
                "{} components for d = {d}",
                components.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for c in &components {
            if c.residue >= d || !seen.insert(c.residue) {
                return Err(Error::InvalidDecomposition(format!(
                    "residue {} repeated or out of range",
                    c.residue
                )));
            }
            if (c.theta.n, c.theta.m) != (params.n(), params.m()) {
                return Err(Error::InvalidDecomposition(format!(
                    "component is ({},{})-invariant, expected ({},{})",
                    c.theta.n,
                    c.theta.m,
                    params.n(),
                    params.m()
                )));
            }
        }
        Ok(Self { params, components })
    }

    /// Splits `Δ` by residue modulo `d`; component `k` has residue `k`.
    pub fn decompose(delta: &InvariantSubset) -> Self {
        let params = delta.params();
        let d = params.d();
        let components = (0..d)
            .map(|k| {
                let lifted: Vec<i64> = delta
                    .component_generators(k as usize)
                    .iter()
                    .map(|&x| (x - k as i64) / d as i64)
                    .collect();
                let (theta, shift) = SmallInvariantSubset::normalized_from_translate(
                    params.n(),
                    params.m(),
                    &lifted,
                )
                .expect("residue components of an invariant subset are invariant");
                Component {
                    theta,
                    shift,
                    residue: k,
                }
            })
            .collect();
        Self { params, components }
    }

    pub fn params(&self) -> CurveParams {
        self.params
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.components
            .iter()
            .any(|c| c.contains(self.params.d(), x))
    }

    /// Rebuilds the invariant subset; requires one component per residue and
    /// a 0-normalized union.
    pub fn reassemble(&self) -> Result<InvariantSubset> {
        let d = self.params.d();
        if self.components.len() != d as usize {
            return Err(Error::InvalidDecomposition(format!(
                "{} components cannot cover {d} residues",
                self.components.len()
            )));
        }
        let nd = self.params.nd();
        let mut gens = vec![0; nd as usize];
        for c in &self.components {
            for &y in c.theta.gens() {
                let x = d as i64 * (y + c.shift) + c.residue as i64;
                gens[x.rem_euclid(nd) as usize] = x;
            }
        }
        InvariantSubset::from_generators(self.params, gens)
    }

    fn skeletons(&self) -> Vec<Skeleton> {
        self.components
            .iter()
            .map(|c| c.theta.skeleton().shifted(c.shift))
            .collect()
    }

    /// Pairs `i < j` of component indices whose shifted skeletons meet.
    pub fn intersecting_pairs(&self) -> Vec<(usize, usize)> {
        let sk = self.skeletons();
        let mut out = Vec::new();
        for i in 0..sk.len() {
            for j in i + 1..sk.len() {
                if sk[i].intersects(&sk[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Whether the skeleton intersection graph is connected.
    pub fn is_connected(&self) -> bool {
        let pairs = self.intersecting_pairs();
        let mut reached = BTreeSet::from([0usize]);
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            for &(a, b) in &pairs {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if reached.insert(w) {
                    stack.push(w);
                }
            }
        }
        reached.len() == self.components.len()
    }

    /// Containment between components `i` and `j` with disjoint skeletons.
    pub fn containment(&self, i: usize, j: usize) -> Result<Containment> {
        let (a, b) = (&self.components[i], &self.components[j]);
        containment_direction(&a.theta, a.shift, &b.theta, b.shift).map_err(|e| match e {
            Error::SkeletonsIntersect { .. } => Error::SkeletonsIntersect { i, j },
            Error::NoContainment { .. } => Error::NoContainment { i, j },
            other => other,
        })
    }

    /// Admissibility of the tuple read in residue order: for consecutive
    /// residues `k, k+1` present, `Θ_{k+1} ⊄ Θ_k + n + m`.
    pub fn is_admissible_tuple(&self) -> bool {
        let by_residue: BTreeMap<u32, &Component> =
            self.components.iter().map(|c| (c.residue, c)).collect();
        let nm = (self.params.n() + self.params.m()) as i64;
        by_residue
            .iter()
            .all(|(&r, low)| match by_residue.get(&(r + 1)) {
                Some(high) => {
                    !high
                        .theta
                        .translate_is_subset(high.shift, &low.theta, low.shift + nm)
                }
                None => true,
            })
    }
}

/// Lowers shifts until the skeleton graph is connected, never moving
/// component 0.
///
/// Blue edges join components whose skeletons meet and point towards the
/// component that sits higher in the input than at the current point. While
/// some components are not reachable from component 0 along blue edges, all
/// of them descend together one lattice step at a time until one of their
/// skeletons meets a skeleton outside the group.
pub fn minimal_point(dec: &ClassDecomposition) -> Result<ClassDecomposition> {
    let d = dec.params.d() as i64;
    let original: Vec<i64> = dec
        .components
        .iter()
        .map(|c| c.min(dec.params.d()))
        .collect();
    let base: Vec<Skeleton> = dec.components.iter().map(|c| c.theta.skeleton()).collect();
    let mut shifts: Vec<i64> = dec.components.iter().map(|c| c.shift).collect();
    let k = shifts.len();
    let meets = |shifts: &[i64], i: usize, j: usize| {
        base[i]
            .shifted(shifts[i])
            .intersects(&base[j].shifted(shifts[j]))
    };
    loop {
        let mut reached = BTreeSet::from([0usize]);
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            for j in 0..k {
                if !reached.contains(&j)
                    && meets(&shifts, i, j)
                    && original[j] - original[i] > d * (shifts[j] - shifts[i])
                {
                    reached.insert(j);
                    stack.push(j);
                }
            }
        }
        if reached.len() == k {
            break;
        }
        let group: Vec<usize> = (0..k).filter(|i| !reached.contains(i)).collect();
        let below_everything = |shifts: &[i64]| {
            group.iter().all(|&i| {
                (0..k).filter(|j| !group.contains(j)).all(|j| {
                    base[i].elements().last().unwrap() + shifts[i]
                        < base[j].elements().first().unwrap() + shifts[j]
                })
            })
        };
        loop {
            for &i in &group {
                shifts[i] -= 1;
            }
            if group
                .iter()
                .any(|&i| (0..k).any(|j| !group.contains(&j) && meets(&shifts, i, j)))
            {
                break;
            }
            if below_everything(&shifts) {
                return Err(Error::InvalidDecomposition(
                    "descent passed below every skeleton without meeting one".into(),
                ));
            }
        }
    }
    let components = dec
        .components
        .iter()
        .zip(shifts)
        .map(|(c, shift)| Component { shift, ..c.clone() })
        .collect();
    Ok(ClassDecomposition {
        params: dec.params,
        components,
    })
}

/// Edge colors of the bicolored digraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    Blue,
    Green,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub color: Color,
}

/// A complete digraph on `0..size` with every pair joined by one colored,
/// oriented edge: blue edges are acyclic with `0` the unique source and green
/// edges are transitive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BicoloredDigraph {
    size: usize,
    edges: Vec<Edge>,
}

impl BicoloredDigraph {
    pub fn new(size: usize, mut edges: Vec<Edge>) -> Result<Self> {
        edges.sort();
        let mut pairs = BTreeSet::new();
        for e in &edges {
            if e.from >= size || e.to >= size || e.from == e.to {
                return Err(Error::InvalidDigraph(format!(
                    "bad edge {} -> {}",
                    e.from, e.to
                )));
            }
            if !pairs.insert((e.from.min(e.to), e.from.max(e.to))) {
                return Err(Error::InvalidDigraph(format!(
                    "pair {{{}, {}}} has two edges",
                    e.from, e.to
                )));
            }
        }
        if pairs.len() != size * size.saturating_sub(1) / 2 {
            return Err(Error::InvalidDigraph("some pair has no edge".into()));
        }
        let g = Self { size, edges };
        for v in 1..size {
            if !g.has(Color::Blue, None, Some(v)) {
                return Err(Error::InvalidDigraph(format!(
                    "vertex {v} is a second blue source"
                )));
            }
        }
        if g.has(Color::Blue, None, Some(0)) {
            return Err(Error::InvalidDigraph(
                "vertex 0 has an incoming blue edge".into(),
            ));
        }
        if g.topological_order(Color::Blue).is_none() {
            return Err(Error::InvalidDigraph("blue edges contain a cycle".into()));
        }
        for a in &g.edges {
            for b in &g.edges {
                if a.color == Color::Green
                    && b.color == Color::Green
                    && a.to == b.from
                    && !g.edge(Color::Green, a.from, b.to)
                {
                    return Err(Error::InvalidDigraph(format!(
                        "green {} -> {} -> {} without {} -> {}",
                        a.from, a.to, b.to, a.from, b.to
                    )));
                }
            }
        }
        Ok(g)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, color: Color, from: usize, to: usize) -> bool {
        self.edges.contains(&Edge { from, to, color })
    }

    fn has(&self, color: Color, from: Option<usize>, to: Option<usize>) -> bool {
        self.edges.iter().any(|e| {
            e.color == color && from.is_none_or(|f| e.from == f) && to.is_none_or(|t| e.to == t)
        })
    }

    fn topological_order(&self, color: Color) -> Option<Vec<usize>> {
        let mut indegree = vec![0usize; self.size];
        for e in self.edges.iter().filter(|e| e.color == color) {
            indegree[e.to] += 1;
        }
        let mut ready: Vec<usize> = (0..self.size).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::new();
        while let Some(v) = ready.pop() {
            order.push(v);
            for e in self
                .edges
                .iter()
                .filter(|e| e.color == color && e.from == v)
            {
                indegree[e.to] -= 1;
                if indegree[e.to] == 0 {
                    ready.push(e.to);
                }
            }
        }
        (order.len() == self.size).then_some(order)
    }
}

/// Bicolored digraph of a decomposition at its minimal point. Blue edges
/// point towards the component lifted more in `original`; green edges go from
/// `Θ_i` to `Θ_j` when `Θ_i ⊂ Θ_j + n + m`.
pub fn build_bicolored(
    minimal: &ClassDecomposition,
    original: &ClassDecomposition,
) -> Result<BicoloredDigraph> {
    if minimal.len() != original.len() {
        return Err(Error::InvalidDigraph(
            "decompositions have different lengths".into(),
        ));
    }
    let d = minimal.params.d();
    let mut edges = Vec::new();
    let skeletons = minimal.skeletons();
    for i in 0..minimal.len() {
        for j in i + 1..minimal.len() {
            if skeletons[i].intersects(&skeletons[j]) {
                let lift = original.components[j].min(d) - original.components[i].min(d);
                let at_min = d as i64 * (minimal.components[j].shift - minimal.components[i].shift);
                let (from, to) = if lift > at_min { (i, j) } else { (j, i) };
                edges.push(Edge {
                    from,
                    to,
                    color: Color::Blue,
                });
            } else {
                let (from, to) = match minimal.containment(i, j)? {
                    Containment::IInJ => (i, j),
                    Containment::JInI => (j, i),
                };
                edges.push(Edge {
                    from,
                    to,
                    color: Color::Green,
                });
            }
        }
    }
    BicoloredDigraph::new(minimal.len(), edges)
}

/// The unique Hamiltonian path that is monotone for the blue order: at each
/// step take, among the blue sources of the unused vertices, the one with no
/// incoming green edge from another such source.
pub fn monotone_path(g: &BicoloredDigraph) -> Vec<usize> {
    let mut rest: BTreeSet<usize> = (0..g.size).collect();
    let mut path = Vec::with_capacity(g.size);
    while !rest.is_empty() {
        let sources: Vec<usize> = rest
            .iter()
            .copied()
            .filter(|&v| !rest.iter().any(|&w| g.edge(Color::Blue, w, v)))
            .collect();
        let next = *sources
            .iter()
            .find(|&&v| !sources.iter().any(|&w| g.edge(Color::Green, w, v)))
            .expect("sources of a valid digraph are totally ordered by green edges");
        path.push(next);
        rest.remove(&next);
    }
    path
}

/// The admissible tuple in the class of `dec`: components placed at the
/// minimal point, with residues `0, 1, ...` assigned along the monotone path.
pub fn normalize_tuple(dec: &ClassDecomposition) -> Result<ClassDecomposition> {
    let minimal = minimal_point(dec)?;
    let graph = build_bicolored(&minimal, dec)?;
    let components = monotone_path(&graph)
        .into_iter()
        .enumerate()
        .map(|(p, k)| Component {
            residue: p as u32,
            ..minimal.components[k].clone()
        })
        .collect();
    ClassDecomposition::new(dec.params, components)
}

/// The unique admissible subset equivalent to `delta`.
pub fn normalize(delta: &InvariantSubset) -> Result<InvariantSubset> {
    normalize_tuple(&ClassDecomposition::decompose(delta))?.reassemble()
}

impl Serialize for Component {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        ComponentJson {
            theta_gens: self.theta.gens.clone(),
            shift: self.shift,
            residue: self.residue,
        }
        .serialize(serializer)
    }
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    theta_gens: Vec<i64>,
    shift: i64,
    residue: u32,
}

#[derive(Serialize, Deserialize)]
struct DecompositionJson {
    n: u32,
    m: u32,
    d: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<u32>,
    components: Vec<ComponentJson>,
}

impl Serialize for ClassDecomposition {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        DecompositionJson {
            n: self.params.n(),
            m: self.params.m(),
            d: self.params.d(),
            s: Some(self.params.s()),
            components: self
                .components
                .iter()
                .map(|c| ComponentJson {
                    theta_gens: c.theta.gens.clone(),
                    shift: c.shift,
                    residue: c.residue,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ClassDecomposition {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = DecompositionJson::deserialize(deserializer)?;
        let params =
            CurveParams::new(raw.n, raw.m, raw.d, raw.s.unwrap_or(1)).map_err(D::Error::custom)?;
        let components = raw
            .components
            .into_iter()
            .map(|c| {
                Ok(Component {
                    theta: SmallInvariantSubset::new(raw.n, raw.m, c.theta_gens)?,
                    shift: c.shift,
                    residue: c.residue,
                })
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Self::new(params, components).map_err(D::Error::custom)
    }
}
