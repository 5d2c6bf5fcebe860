mod common;

use std::sync::Arc;

use common::{random_complex, random_morphism, random_sequence, random_sigma_complex, rng, vect3};
use nexang_core::complexes::*;
use nexang_core::search::Search;
use nexang_core::{fixtures, AddFunctor, AddMorphism, BaseCategory, Config};
use proptest::prelude::*;
use rand::Rng;

/// Categories with their Σ: identity on `F_3`-spaces (nontrivial sign),
/// identity on dual-number modules, and the strict swap.
fn with_sigma(i: usize) -> (Arc<BaseCategory>, AddFunctor) {
    match i {
        0 => {
            let c = vect3();
            (c.clone(), AddFunctor::identity(c))
        }
        1 => {
            let c = fixtures::dual_numbers_modules();
            (c.clone(), AddFunctor::identity(c))
        }
        _ => {
            let (c, t) = fixtures::swapped();
            (c, t.sigma().clone())
        }
    }
}

fn random_chain_map(cat: &BaseCategory, x: &Complex, y: &Complex, s: u64) -> ComplexMorphism {
    let (space, sys) = chain_maps(cat, x, y, &[]).unwrap();
    components_from(&sys, x, y, &space.sample(cat.field(), &mut rng(s)))
}

/// Every tuple of components, for tiny complexes.
fn all_morphisms(cat: &BaseCategory, x: &Complex, y: &Complex) -> Vec<ComplexMorphism> {
    let mut out = vec![Vec::<AddMorphism>::new()];
    for i in 0..x.len() {
        out = out
            .into_iter()
            .flat_map(|pre| {
                cat.hom_elements(&x.objects[i], &y.objects[i]).map(move |h| {
                    let mut v = pre.clone();
                    v.push(h);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(|components| ComplexMorphism { components }).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn chain_map_space_matches_enumeration(c in 0usize..2, m in 2usize..4, s: u64) {
        let (cat, _) = with_sigma(c);
        let mut g = rng(s);
        let (x, y) = (random_complex(&cat, m, &mut g), random_complex(&cat, m, &mut g));
        let total: usize = (0..m).map(|i| cat.hom_dim(&x.objects[i], &y.objects[i])).sum();
        prop_assume!(total <= 10);
        let (space, sys) = chain_maps(&cat, &x, &y, &[]).unwrap();
        let brute = all_morphisms(&cat, &x, &y).into_iter().filter(|f| is_chain_map(&cat, &x, &y, f)).count() as u64;
        prop_assert_eq!(space.size(cat.field()), brute);
        for v in space.points(cat.field()).take(20) {
            prop_assert!(is_chain_map(&cat, &x, &y, &components_from(&sys, &x, &y, &v)));
        }
    }

    #[test]
    fn perturbing_by_a_null_homotopy_is_detected(c in 0usize..2, m in 2usize..5, s: u64) {
        let (cat, _) = with_sigma(c);
        let mut g = rng(s);
        let (x, y) = (random_complex(&cat, m, &mut g), random_complex(&cat, m, &mut g));
        let f = random_chain_map(&cat, &x, &y, g.gen());
        let h: Vec<AddMorphism> = (1..m).map(|i| random_morphism(&cat, &x.objects[i], &y.objects[i - 1], &mut g)).collect();
        let fg = ComplexMorphism {
            components: (0..m)
                .map(|i| {
                    let mut d = cat.zero(&x.objects[i], &y.objects[i]);
                    if i >= 1 {
                        d = cat.add(&d, &cat.compose(&y.diffs[i - 1], &h[i - 1]));
                    }
                    if i + 1 < m {
                        d = cat.add(&d, &cat.compose(&h[i], &x.diffs[i]));
                    }
                    cat.sub(&f.components[i], &d)
                })
                .collect(),
        };
        prop_assert!(is_chain_map(&cat, &x, &y, &fg));
        prop_assert!(verify_homotopy(&cat, &x, &y, &f, &fg, &h));
        let found = find_homotopy(&cat, &x, &y, &f, &fg);
        prop_assert!(found.is_some_and(|k| verify_homotopy(&cat, &x, &y, &f, &fg, &k)));
    }

    #[test]
    fn mapping_cones_are_complexes(c in 0usize..2, n in 1usize..4, s: u64) {
        let (cat, _) = with_sigma(c);
        let mut g = rng(s);
        let (x, y) = (random_complex(&cat, n + 1, &mut g), random_complex(&cat, n + 1, &mut g));
        let f = random_chain_map(&cat, &x, &y, g.gen());
        let cone = mapping_cone(&cat, &x, &y, &f).unwrap();
        prop_assert_eq!(cone.len(), n + 2);
        prop_assert!(cone.is_complex(&cat));
        prop_assert_eq!(cone.first(), &x.objects[0]);
        prop_assert_eq!(cone.last(), &y.objects[n]);
    }

    /// `n + 2` left rotations for a strict Σ give `Σ` of the sequence with
    /// every map scaled by `(-1)^n`.
    #[test]
    fn full_rotation_is_a_signed_shift(c in 0usize..3, n in 1usize..4, s: u64) {
        let (cat, sigma) = with_sigma(c);
        let x = random_sequence(&cat, &sigma, n, &mut rng(s));
        let sign = if n % 2 == 0 { 1 } else { cat.field().p() - 1 };
        let mut r = x.clone();
        for _ in 0..n + 2 {
            r = left_rotation(&cat, &sigma, &r);
        }
        for i in 0..n + 2 {
            prop_assert_eq!(&r.objects[i], &sigma.object(&x.objects[i]));
        }
        for i in 0..n + 1 {
            prop_assert_eq!(&r.diffs[i], &cat.scale(sign, &sigma.morphism(&x.diffs[i])));
        }
        prop_assert_eq!(&r.last, &cat.scale(sign, &sigma.morphism(&x.last)));
    }

    #[test]
    fn angle_cones_of_sigma_morphisms_are_complexes(c in 0usize..3, n in 1usize..4, s: u64) {
        let (cat, sigma) = with_sigma(c);
        let mut g = rng(s);
        let (x, y) = (random_sigma_complex(&cat, &sigma, n, &mut g), random_sigma_complex(&cat, &sigma, n, &mut g));
        prop_assert!(x.is_complex(&cat, &sigma));
        let (sys, _) = sigma_morphism_system(&cat, &sigma, &x, &y);
        let v = sys.solve(cat.field()).unwrap().sample(cat.field(), &mut g);
        let parts = sys.split(&v);
        let f = ComplexMorphism {
            components: (0..n + 2).map(|i| cat.morphism(&x.objects[i], &y.objects[i], parts[i].clone())).collect(),
        };
        prop_assert!(is_sigma_morphism(&cat, &sigma, &x, &y, &f));
        let cone = cone_of_angle_morphism(&cat, &sigma, &x, &y, &f).unwrap();
        prop_assert!(cone.is_complex(&cat, &sigma));
    }

    #[test]
    fn a_complex_is_homotopy_equivalent_to_itself(c in 0usize..2, m in 2usize..5, s: u64) {
        let (cat, _) = with_sigma(c);
        let x = random_complex(&cat, m, &mut rng(s));
        let found = homotopy_equivalent(&cat, &x, &x, &Config::new(2));
        prop_assert!(matches!(&found, Search::Found(f) if is_homotopy_equivalence(&cat, &x, &x, f).unwrap()));
    }
}

#[test]
fn cone_of_zero_map_is_the_split_sum() {
    let (cat, _) = with_sigma(0);
    let x = random_complex(&cat, 3, &mut rng(7));
    let cone = mapping_cone(&cat, &x, &x, &x.zero_to(&cat, &x)).unwrap();
    assert!(cone.is_complex(&cat));
    assert_eq!(cone.objects[1], [x.objects[1].clone(), x.objects[0].clone()].concat());
}
