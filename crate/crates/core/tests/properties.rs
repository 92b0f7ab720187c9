//! Cross-module properties: braids against projection, generation and the
//! absolute order.

use std::collections::HashSet;

use extweyl::absorder::{self, Generation, LengthSearch, SliceBudgets};
use extweyl::arith::IntMatrix;
use extweyl::group::{ExtendedWeylGroup, Reflection};
use extweyl::hurwitz::{self, BraidWord, Factorization};
use extweyl::space::ProjVector;

fn standard(g: &ExtendedWeylGroup) -> Factorization {
    hurwitz::standard_factorization(g, &g.default_ordering()).unwrap()
}

#[test]
fn generation_is_braid_invariant() {
    for arms in [vec![1], vec![1, 1], vec![1, 2]] {
        let g = ExtendedWeylGroup::from_arms(&arms).unwrap();
        let s = standard(&g);
        for seed in 0..20 {
            let (f, _) = hurwitz::random_walk(&g, &s, 25, seed).unwrap();
            assert!(
                matches!(
                    absorder::generates(&g, &f, 200_000).unwrap(),
                    Generation::Generating(_)
                ),
                "{arms:?} seed {seed}"
            );
        }
    }
}

#[test]
fn non_generating_tuples_stay_non_generating() {
    let g = ExtendedWeylGroup::from_arms(&[1]).unwrap();
    let f = Factorization::new(vec![
        Reflection::new(ProjVector::new(vec![0, 1]), 0),
        Reflection::new(ProjVector::new(vec![1, 0]), 0),
        Reflection::new(ProjVector::new(vec![1, 0]), 2),
    ]);
    for seed in 0..10 {
        let (h, _) = hurwitz::random_walk(&g, &f, 15, seed).unwrap();
        assert!(matches!(
            absorder::generates(&g, &h, 10_000).unwrap(),
            Generation::NotGenerating { .. }
        ));
    }
}

/// Projected tuples of walks from the standard factorization of `[1, 1]`
/// all lie in the Hurwitz orbit of the projected standard tuple, computed
/// by brute force in the finite group.
#[test]
fn projection_stays_in_finite_orbit() {
    let g = ExtendedWeylGroup::from_arms(&[1, 1]).unwrap();
    let s = standard(&g);
    let project = |f: &Factorization| -> Vec<IntMatrix> {
        f.tuple
            .iter()
            .map(|t| g.projected_reflection(&t.root).unwrap())
            .collect()
    };
    let start = project(&s);
    let mut orbit: HashSet<Vec<IntMatrix>> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    while let Some(f) = frontier.pop() {
        for i in 0..f.len() - 1 {
            let (a, b) = (f[i].clone(), f[i + 1].clone());
            let mut r = f.clone();
            r[i] = b.clone();
            r[i + 1] = b.mul(&a).unwrap().mul(&b).unwrap();
            let mut l = f.clone();
            l[i] = a.mul(&b).unwrap().mul(&a).unwrap();
            l[i + 1] = a;
            for h in [r, l] {
                if orbit.insert(h.clone()) {
                    frontier.push(h);
                }
            }
        }
    }
    for seed in 0..50 {
        let (f, _) = hurwitz::random_walk(&g, &s, 30, seed).unwrap();
        assert!(orbit.contains(&project(&f)), "seed {seed}");
    }
}

#[test]
fn braid_word_roundtrip_through_inverse() {
    let g = ExtendedWeylGroup::from_arms(&[2, 2, 3]).unwrap();
    let s = standard(&g);
    let (f, w) = hurwitz::random_walk(&g, &s, 40, 5).unwrap();
    assert_eq!(hurwitz::apply_braid(&g, &f, &w.inverse()).unwrap(), s);
    assert_eq!(w.inverse().inverse(), w);
    assert_eq!(BraidWord::default().inverse(), BraidWord::default());
}

#[test]
fn wild_connect_roundtrip() {
    let g = ExtendedWeylGroup::from_arms(&[2, 2, 3]).unwrap();
    let s = standard(&g);
    for seed in 0..5 {
        let (f, _) = hurwitz::random_walk(&g, &s, 15, seed).unwrap();
        let out = hurwitz::connect(&g, &f, &s, 1_000_000).unwrap();
        let w = out.word().expect("connected");
        assert_eq!(hurwitz::apply_braid(&g, &f, &w).unwrap(), s);
    }
}

#[test]
fn slice_elements_are_below_c() {
    let g = ExtendedWeylGroup::from_arms(&[1]).unwrap();
    let o = g.default_ordering();
    let slice = absorder::interval_slice(
        &g,
        &o,
        SliceBudgets {
            move_budget: 3,
            k_bound: 2,
            node_cap: 100_000,
        },
    )
    .unwrap();
    let params = LengthSearch {
        k_bound: 6,
        ..LengthSearch::default()
    };
    for e in &slice.elements {
        let w = g.element(e.matrix.clone()).unwrap();
        let witness = absorder::below(&g, &w, &o, params)
            .unwrap()
            .expect("below c");
        assert_eq!(witness.prefix_len, e.length);
    }
}

#[test]
fn dihedral_reflections_appear_in_generous_slices() {
    let g = ExtendedWeylGroup::from_arms(&[1]).unwrap();
    let o = g.default_ordering();
    let k_bound = 2;
    let slice = absorder::interval_slice(
        &g,
        &o,
        SliceBudgets {
            move_budget: 8,
            k_bound,
            node_cap: 1_000_000,
        },
    )
    .unwrap();
    let alpha1 = g.space().proj_basis_vector(0);
    for k in -k_bound..=k_bound {
        let t = g
            .reflection_element(&Reflection::new(alpha1.clone(), k))
            .unwrap();
        assert!(
            slice
                .elements
                .iter()
                .any(|e| &e.matrix == t.matrix() && e.length == 1),
            "(α1, {k}) missing"
        );
    }
}
