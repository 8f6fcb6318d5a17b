use std::collections::BTreeMap;

use compjac::cabled::{cabled_count, from_cabled, to_cabled, CabledPathData};
use compjac::classes::{normalize, ClassDecomposition};
use compjac::dyck::{count_paths, delta, enumerate_paths, qt_catalan, Rectangle};
use compjac::invariant::{admissible_subsets, enumerate_bounded, CurveParams, InvariantSubset};
use compjac::shuffle::verify_identity;
use compjac::QtPoly;
use num_bigint::BigUint;
use proptest::prelude::*;

fn params(n: u32, m: u32, d: u32, s: u32) -> CurveParams {
    CurveParams::new(n, m, d, s).unwrap()
}

fn dim_histogram(xs: &[InvariantSubset]) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for x in xs {
        *h.entry(x.dim()).or_default() += 1;
    }
    h
}

#[test]
fn admissible_dims_match_codinv_beyond_acceptance_range() {
    for (n, m, d) in [(1, 3, 2), (2, 1, 2), (3, 2, 2), (1, 1, 4)] {
        let subsets = admissible_subsets(params(n, m, d, 1), None).unwrap();
        let top = delta(n * d, m * d);
        let mut codinv = BTreeMap::new();
        for p in enumerate_paths(Rectangle::new(n * d, m * d).unwrap()) {
            *codinv.entry((top - p.dinv()) as u64).or_default() += 1;
        }
        assert_eq!(dim_histogram(&subsets), codinv, "({n},{m},{d})");
    }
}

#[test]
fn every_class_has_an_admissible_member() {
    for (n, m, d) in [(1, 3, 2), (2, 1, 3)] {
        let p = params(n, m, d, 1);
        let all = enumerate_bounded(p, p.default_bound()).unwrap();
        let mut reps: Vec<InvariantSubset> = all.iter().map(|x| normalize(x).unwrap()).collect();
        reps.sort_by(|a, b| a.gens().cmp(b.gens()));
        reps.dedup();
        assert_eq!(
            BigUint::from(reps.len()),
            count_paths(n * d, m * d).unwrap()
        );
        assert!(reps.iter().all(InvariantSubset::is_admissible));
    }
}

#[test]
fn cabled_bijection_beyond_acceptance_range() {
    for (n, m, d, s) in [(1, 1, 2, 5), (1, 1, 4, 3), (1, 3, 2, 3)] {
        let p = params(n, m, d, s);
        let subsets = admissible_subsets(p, None).unwrap();
        assert_eq!(
            BigUint::from(subsets.len()),
            cabled_count(n, m, d, s).unwrap()
        );
        for x in &subsets {
            assert_eq!(&from_cabled(p, &to_cabled(x).unwrap()).unwrap(), x);
        }
    }
}

#[test]
fn json_round_trips() {
    let x = InvariantSubset::from_complement(params(2, 3, 2, 3), &[3]).unwrap();
    let back: InvariantSubset = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
    assert_eq!(back, x);

    let dec = ClassDecomposition::decompose(&x);
    let back: ClassDecomposition =
        serde_json::from_str(&serde_json::to_string(&dec).unwrap()).unwrap();
    assert_eq!(back, dec);

    let data = to_cabled(&x).unwrap();
    let back: CabledPathData =
        serde_json::from_str(&serde_json::to_string(&data).unwrap()).unwrap();
    assert_eq!(back, data);

    let c = qt_catalan(4, 6).unwrap();
    let back: QtPoly = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
    assert_eq!(back, c);
}

#[test]
fn tableau_identity_beyond_acceptance_range() {
    for (n, m, d) in [(1, 3, 2), (3, 1, 2), (1, 2, 4)] {
        assert!(
            verify_identity(n, m, d, 2, 3).unwrap().pass,
            "({n},{m},{d})"
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
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalize_is_a_dim_preserving_retraction(p in small_params(), pick in any::<prop::sample::Index>()) {
        let all = enumerate_bounded(p, p.default_bound()).unwrap();
        let x = pick.get(&all);
        let normal = normalize(x).unwrap();
        prop_assert!(normal.is_admissible());
        prop_assert_eq!(normal.dim(), x.dim());
        prop_assert_eq!(normalize(&normal).unwrap(), normal.clone());
        if x.is_admissible() {
            prop_assert_eq!(&normal, x);
        }
    }

    #[test]
    fn decomposition_reassembles(p in small_params(), pick in any::<prop::sample::Index>()) {
        let all = enumerate_bounded(p, p.default_bound()).unwrap();
        let x = pick.get(&all);
        prop_assert_eq!(&ClassDecomposition::decompose(x).reassemble().unwrap(), x);
    }

    #[test]
    fn s_admissible_subsets_round_trip(s in prop::sample::select(vec![1u32, 3, 5]), pick in any::<prop::sample::Index>()) {
        let p = params(1, 2, 2, s);
        let subsets = admissible_subsets(p, None).unwrap();
        let x = pick.get(&subsets);
        let data = to_cabled(x).unwrap();
        prop_assert_eq!(&from_cabled(p, &data).unwrap(), x);
    }
}
