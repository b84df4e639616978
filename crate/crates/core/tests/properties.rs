use std::collections::BTreeSet;

use proptest::prelude::*;

use sphclosure::io::{self, CorpusEntry};
use sphclosure::quotients::{enumerate_distinguished, is_distinguished, quotient_system};
use sphclosure::rootsys::catalogue::match_kind;
use sphclosure::rootsys::{support_of_weight, DynkinKind, RootSystem};
use sphclosure::spherical::{diagram, localize};
use sphclosure::{Divisor, RootKind};

fn corpus() -> Vec<CorpusEntry> {
    io::corpus()
}

fn any_entry() -> impl Strategy<Value = CorpusEntry> {
    let all = corpus();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn small_root_system() -> impl Strategy<Value = RootSystem> {
    prop_oneof![
        (1usize..6).prop_map(|n| RootSystem::new(&[(DynkinKind::A, n)]).unwrap()),
        (2usize..6).prop_map(|n| RootSystem::new(&[(DynkinKind::B, n)]).unwrap()),
        (2usize..6).prop_map(|n| RootSystem::new(&[(DynkinKind::C, n)]).unwrap()),
        (4usize..6).prop_map(|n| RootSystem::new(&[(DynkinKind::D, n)]).unwrap()),
        Just(RootSystem::new(&[(DynkinKind::F4, 4)]).unwrap()),
        Just(RootSystem::new(&[(DynkinKind::G2, 2)]).unwrap()),
        Just(RootSystem::new(&[(DynkinKind::A, 1), (DynkinKind::G2, 2)]).unwrap()),
    ]
}

fn subset_of(n: usize) -> impl Strategy<Value = BTreeSet<usize>> {
    proptest::collection::btree_set(0..n.max(1), 0..=n).prop_map(move |s| s.into_iter().filter(|&i| i < n).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simple_iff_basis_vector(rs in small_root_system(), raw in proptest::collection::vec(0i64..3, 6)) {
        let v: Vec<i64> = raw.into_iter().take(rs.rank()).chain(std::iter::repeat(0)).take(rs.rank()).collect();
        let unit = v.iter().filter(|&&x| x == 1).count() == 1 && v.iter().all(|&x| x == 0 || x == 1);
        prop_assert_eq!(match_kind(&rs, &v) == Some(RootKind::Simple), unit);
    }

    #[test]
    fn doubling_a_simple_root(rs in small_root_system(), i in 0usize..6) {
        let i = i % rs.rank();
        let a = rs.simple_root(i);
        let two: Vec<i64> = a.iter().map(|x| 2 * x).collect();
        prop_assert_eq!(match_kind(&rs, &a), Some(RootKind::Simple));
        prop_assert_eq!(match_kind(&rs, &two), Some(RootKind::DoubledSimple));
        let four: Vec<i64> = a.iter().map(|x| 4 * x).collect();
        prop_assert_eq!(match_kind(&rs, &four), None);
    }

    #[test]
    fn localization_composes((e, outer, inner) in any_entry().prop_flat_map(|e| {
        let r = e.system.sigma.len();
        (Just(e), subset_of(r), subset_of(r))
    })) {
        let sys = &e.system;
        let inner: BTreeSet<usize> = inner.intersection(&outer).copied().collect();
        let (w1, q1) = localize(sys, &outer).unwrap();
        let keep: Vec<usize> = outer.iter().copied().collect();
        let inner_in_w1: BTreeSet<usize> = inner.iter().map(|k| keep.iter().position(|x| x == k).unwrap()).collect();
        let (w2, q2) = localize(&w1, &inner_in_w1).unwrap();
        let (direct, q) = localize(sys, &inner).unwrap();
        prop_assert_eq!(&w2, &direct);
        prop_assert_eq!(q1.compose(&q2), q);
    }

    #[test]
    fn localization_preserves_weights((e, subset, mult) in any_entry().prop_flat_map(|e| {
        let r = e.system.sigma.len();
        let n = e.system.colors.len();
        (Just(e), subset_of(r), proptest::collection::vec(0u64..4, n))
    })) {
        let sys = &e.system;
        let d = Divisor { mult };
        let (w, q) = localize(sys, &subset).unwrap();
        prop_assert!(w.validate().is_ok());
        prop_assert_eq!(w.omega_of_divisor(&q.apply(&d)), sys.omega_of_divisor(&d));
    }

    #[test]
    fn weight_support_is_moved_roots((e, mult) in any_entry().prop_flat_map(|e| {
        let n = e.system.colors.len();
        (Just(e), proptest::collection::vec(0u64..3, n))
    })) {
        let sys = &e.system;
        let d = Divisor { mult };
        let moved: BTreeSet<usize> = d.support().iter().flat_map(|&i| sys.colors[i].moved_by.iter().copied()).collect();
        let weight: BTreeSet<usize> = support_of_weight(&sys.omega_of_divisor(&d)).into_iter().collect();
        prop_assert_eq!(weight, moved);
    }
}

#[test]
fn quotient_by_nothing_is_identity() {
    for e in corpus() {
        let q = quotient_system(&e.system, &is_distinguished(&e.system, &BTreeSet::new()).unwrap()).unwrap();
        assert_eq!(q.result, e.system, "{}", e.name);
    }
}

/// Quotienting by `D1` and then by what is left of `D2 ⊇ D1` equals
/// quotienting by `D2` at once.
#[test]
fn quotients_compose() {
    let mut pairs = 0;
    for e in corpus() {
        let sys = &e.system;
        let all = enumerate_distinguished(sys).unwrap();
        for d1 in &all {
            let q1 = quotient_system(sys, &is_distinguished(sys, d1).unwrap()).unwrap().result;
            for d2 in all.iter().filter(|d2| d1.is_subset(d2)) {
                let rest: BTreeSet<usize> = d2
                    .difference(d1)
                    .map(|&i| q1.color_index(&sys.colors[i].id).unwrap())
                    .collect();
                let step = is_distinguished(&q1, &rest).expect("image of a distinguished set");
                let two_steps = quotient_system(&q1, &step).unwrap().result;
                let direct = quotient_system(sys, &is_distinguished(sys, d2).unwrap()).unwrap().result;
                let key = |s: &sphclosure::SphericalSystem| {
                    let mut sigma = s.sigma.clone();
                    sigma.sort();
                    (sigma, s.sp.clone(), s.colors.iter().map(|c| (c.id.clone(), c.kind, c.moved_by.clone())).collect::<Vec<_>>())
                };
                assert_eq!(key(&two_steps), key(&direct), "{} {d1:?} {d2:?}", e.name);
                pairs += 1;
            }
        }
    }
    assert!(pairs > 50);
}

#[test]
fn diagrams_round_trip() {
    for e in corpus() {
        let text = diagram::render(&e.system);
        assert_eq!(diagram::parse(&text).unwrap(), e.system, "{}\n{text}", e.name);
    }
}
