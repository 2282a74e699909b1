mod common;

use std::collections::BTreeSet;

use arrangement_core::complex::{chain_complex, homology, nerve};
use arrangement_core::models::{
    enumerate_faces, essentialize, feasible, intersection_poset, periodic_quotient, sphere_faces, whitney_oracle,
    EnumerationOptions, Family, Hyperplane, HyperplaneArrangement, Model, ModelKind, PeriodicModel,
    PeriodicOptions, Sign, SignVector, SphereModel,
};
use arrangement_core::rational::{self, Rational};
use arrangement_core::{Error, Strategy};

fn all_sign_vectors(k: usize) -> Vec<SignVector> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Sign>| {
                [Sign::Neg, Sign::Zero, Sign::Pos].into_iter().map(move |s| {
                    let mut q = p.clone();
                    q.push(s);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(SignVector).collect()
}

fn arrangement(name: &str) -> HyperplaneArrangement {
    match common::model(name) {
        Model::Hyperplane(a) => a,
        Model::Sphere(s) => s.arrangement().clone(),
        Model::Periodic(_) => panic!("not a hyperplane fixture"),
    }
}

#[test]
fn pruned_enumeration_matches_exhaustive_search() {
    for name in common::HYPERPLANE.iter().chain(common::SPHERE) {
        let a = arrangement(name);
        let exhaustive: BTreeSet<SignVector> = all_sign_vectors(a.len())
            .into_iter()
            .filter(|s| feasible(s, &a).is_some())
            .collect();
        let fd = common::faces(name);
        let mut found: BTreeSet<SignVector> = fd.faces.iter().filter_map(|f| f.sign.clone()).collect();
        if fd.kind == ModelKind::Sphere {
            let zero = SignVector(vec![Sign::Zero; a.len()]);
            let has_zero = exhaustive.contains(&zero);
            assert!(has_zero);
            found.insert(zero);
        }
        assert_eq!(found, exhaustive, "{name}");
    }
}

#[test]
fn samples_realize_their_sign_vectors() {
    for name in common::HYPERPLANE.iter().chain(common::SPHERE) {
        let a = arrangement(name);
        let fd = common::faces(name);
        for f in &fd.faces {
            assert_eq!(&a.sign_vector(&f.sample), f.sign.as_ref().unwrap(), "{name} {}", f.label);
        }
    }
}

#[test]
fn hyperplane_examples() {
    assert_eq!(common::faces("boolean2").counts(), vec![1, 4, 4]);
    assert_eq!(common::faces("generic3").counts(), vec![3, 9, 7]);
    let empty = HyperplaneArrangement::new(2, vec![]).unwrap();
    let fd = enumerate_faces(&empty, &EnumerationOptions::default(), Strategy::Sequential).unwrap();
    assert_eq!(fd.counts(), vec![0, 0, 1]);
}

#[test]
fn zaslavsky_cross_check() {
    for name in common::HYPERPLANE {
        let w = whitney_oracle(&arrangement(name));
        let fd = common::faces(name);
        assert_eq!(fd.chambers().len() as u64, w.chambers, "{name}");
    }
}

#[test]
fn sphere_examples() {
    assert_eq!(common::faces("two-great-circles").counts(), vec![2, 4, 4]);
    assert_eq!(common::faces("octahedral").counts(), vec![6, 12, 8]);
    let one = SphereModel::new(HyperplaneArrangement::new(3, vec![Hyperplane::from_ints(&[1, 0, 0], 0)]).unwrap())
        .unwrap();
    assert!(matches!(
        sphere_faces(&one, &EnumerationOptions::default(), Strategy::Sequential),
        Err(Error::NotCellular(_))
    ));
    let lone_line = HyperplaneArrangement::new(2, vec![Hyperplane::from_ints(&[1, 0], 0)]).unwrap();
    assert!(matches!(SphereModel::new(lone_line), Err(Error::InvalidModel(_))));
}

#[test]
fn periodic_examples() {
    let one = common::faces("one-point-circle");
    assert_eq!(one.counts(), vec![1, 1]);
    assert_eq!(one.category.num_morphisms(), 2);
    assert!(!one.regular);
    let two = common::faces("two-points-circle");
    assert_eq!(two.counts(), vec![2, 2]);
    assert_eq!(two.category.num_morphisms(), 4);
    assert!(two.regular);
    let torus = common::faces("torus3");
    assert_eq!(torus.counts(), vec![3, 9, 6]);
}

#[test]
fn circle_counts_for_spread_offsets() {
    for k in 1..=5i64 {
        let fams = (0..k)
            .map(|i| Family {
                normal: vec![1],
                offset: Rational::new(i.into(), k.into()),
            })
            .collect();
        let p = PeriodicModel::new(1, fams).unwrap();
        let fd = periodic_quotient(&p, &PeriodicOptions::default(), Strategy::Sequential).unwrap();
        assert_eq!(fd.counts(), vec![k as usize, k as usize]);
        assert_eq!(fd.category.num_morphisms(), 2 * k as usize);
        assert_eq!(fd.regular, k >= 2);
    }
}

#[test]
fn translation_invariant_family_is_not_cellular() {
    let p = PeriodicModel::new(
        2,
        vec![Family {
            normal: vec![1, 0],
            offset: rational::int(0),
        }],
    )
    .unwrap();
    assert!(matches!(
        periodic_quotient(&p, &PeriodicOptions::default(), Strategy::Sequential),
        Err(Error::NotCellular(_))
    ));
}

#[test]
fn small_window_is_reported() {
    let p = PeriodicModel::new(
        2,
        vec![
            Family { normal: vec![1, 2], offset: rational::int(0) },
            Family { normal: vec![2, 1], offset: rational::int(0) },
            Family { normal: vec![1, -1], offset: rational::int(0) },
        ],
    )
    .unwrap();
    let narrow = PeriodicOptions { window_low: 0, window_high: 1 };
    assert!(matches!(
        periodic_quotient(&p, &narrow, Strategy::Sequential),
        Err(Error::WindowInsufficient(_))
    ));
}

#[test]
fn periodic_model_validation() {
    let bad = |normal: Vec<i64>, offset: Rational| PeriodicModel::new(normal.len(), vec![Family { normal, offset }]);
    assert!(bad(vec![2, 4], rational::int(0)).is_err());
    assert!(bad(vec![0, 0], rational::int(0)).is_err());
    assert!(bad(vec![1], rational::int(1)).is_err());
    let dup = PeriodicModel::new(
        1,
        vec![
            Family { normal: vec![1], offset: Rational::new(1.into(), 3.into()) },
            Family { normal: vec![-1], offset: Rational::new(2.into(), 3.into()) },
        ],
    );
    assert!(dup.is_err());
}

#[test]
fn every_face_category_is_valid() {
    for name in common::all() {
        let fd = common::faces(name);
        assert!(fd.category.validate().is_valid(), "{name}");
        if fd.regular {
            assert!(fd.category.is_poset());
        }
        for f in 0..fd.num_faces() {
            if !fd.is_chamber(f) {
                assert!(!fd.chambers_above(f).is_empty());
            }
        }
    }
}

#[test]
fn nerve_has_the_homology_of_the_ambient_manifold() {
    for name in common::all() {
        let fd = common::faces(name);
        let h = homology(&chain_complex(&nerve(&fd.category, Strategy::default()).unwrap()).unwrap(), Strategy::default());
        let l = fd.manifold_dim;
        let mut expected = vec![0usize; h.betti.len().max(l + 1)];
        match fd.kind {
            ModelKind::Hyperplane => expected[0] = 1,
            ModelKind::Sphere => {
                expected[0] += 1;
                expected[l] += 1;
            }
            ModelKind::Periodic => {
                for (k, e) in expected.iter_mut().enumerate().take(l + 1) {
                    *e = binomial(l, k);
                }
            }
        }
        let mut got = h.betti.clone();
        got.resize(expected.len(), 0);
        assert_eq!(got, expected, "{name}");
        assert!(h.is_torsion_free(), "{name}");
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn intersection_poset_examples() {
    let count_by_rank = |name: &str| {
        let p = intersection_poset(&common::faces(name)).unwrap();
        let mut c = Vec::new();
        for i in 0..p.len() {
            let r = p.rank(i).unwrap();
            if c.len() <= r {
                c.resize(r + 1, 0);
            }
            c[r] += 1;
        }
        c
    };
    assert_eq!(count_by_rank("boolean2"), vec![1, 2, 1]);
    assert_eq!(count_by_rank("torus3"), vec![1, 3, 3]);
    assert_eq!(count_by_rank("concurrent3"), vec![1, 3, 1]);
    assert_eq!(count_by_rank("two-great-circles"), vec![1, 2, 2]);
    let p = intersection_poset(&common::faces("torus3")).unwrap();
    assert!((1..p.len()).all(|i| p.lt(0, i)));
}

#[test]
fn intersection_poset_matches_oracle_flats() {
    for name in common::HYPERPLANE {
        let w = whitney_oracle(&arrangement(name));
        let p = intersection_poset(&common::faces(name)).unwrap();
        assert_eq!(p.len(), w.flats.len(), "{name}");
    }
}

#[test]
fn essentialize_preserves_faces() {
    for name in common::HYPERPLANE {
        let a = arrangement(name);
        let e = essentialize(&a).unwrap();
        let opts = EnumerationOptions::default();
        let fa = enumerate_faces(&a, &opts, Strategy::Sequential).unwrap();
        let fe = enumerate_faces(&e, &opts, Strategy::Sequential).unwrap();
        let sa: Vec<_> = fa.faces.iter().map(|f| f.sign.clone()).collect();
        let se: Vec<_> = fe.faces.iter().map(|f| f.sign.clone()).collect();
        assert_eq!(sa, se, "{name}");
        assert_eq!(fa.category, fe.category);
        assert_eq!(
            intersection_poset(&fa).unwrap().covers(),
            intersection_poset(&fe).unwrap().covers()
        );
    }
}

#[test]
fn strategies_agree() {
    for name in common::all() {
        let m = common::model(name);
        let a = m.build(&Default::default(), Strategy::Sequential).unwrap();
        let b = m.build(&Default::default(), Strategy::Parallel).unwrap();
        assert_eq!(a.to_json(), b.to_json(), "{name}");
    }
}
