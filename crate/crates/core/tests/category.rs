mod common;

use std::sync::Arc;

use common::{random_morphism, random_object, rng, vect3};
use nexang_core::{fixtures, BaseCategory};
use proptest::prelude::*;
use rand::Rng;

fn categories() -> Vec<Arc<BaseCategory>> {
    vec![fixtures::dual_numbers_modules(), fixtures::idempotent_algebra(), fixtures::doubled(), fixtures::two_simples(), vect3()]
}

fn category() -> impl Strategy<Value = Arc<BaseCategory>> {
    (0..categories().len()).prop_map(|i| categories().swap_remove(i))
}

#[test]
fn fixtures_obey_the_laws() {
    for cat in categories() {
        assert!(cat.validate().is_empty(), "{cat}");
        assert!(cat.opposite().validate().is_empty(), "{cat} (opposite)");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn composition_is_associative_and_unital(cat in category(), s: u64) {
        let mut g = rng(s);
        let obs: Vec<Vec<usize>> = (0..4).map(|_| random_object(&cat, 3, &mut g)).collect();
        let f = random_morphism(&cat, &obs[0], &obs[1], &mut g);
        let h = random_morphism(&cat, &obs[1], &obs[2], &mut g);
        let k = random_morphism(&cat, &obs[2], &obs[3], &mut g);
        prop_assert_eq!(cat.compose(&k, &cat.compose(&h, &f)), cat.compose(&cat.compose(&k, &h), &f));
        prop_assert_eq!(cat.compose(&cat.identity(&obs[1]), &f), f.clone());
        prop_assert_eq!(cat.compose(&f, &cat.identity(&obs[0])), f);
    }

    #[test]
    fn composition_is_bilinear(cat in category(), s: u64) {
        let mut g = rng(s);
        let (x, y, z) = (random_object(&cat, 3, &mut g), random_object(&cat, 3, &mut g), random_object(&cat, 3, &mut g));
        let (f1, f2) = (random_morphism(&cat, &x, &y, &mut g), random_morphism(&cat, &x, &y, &mut g));
        let h = random_morphism(&cat, &y, &z, &mut g);
        prop_assert_eq!(cat.compose(&h, &cat.add(&f1, &f2)), cat.add(&cat.compose(&h, &f1), &cat.compose(&h, &f2)));
        prop_assert!(cat.is_zero(&cat.add(&f1, &cat.neg(&f1))));
    }

    /// `post_matrix` and `pre_matrix` are composition written as matrices.
    #[test]
    fn composition_matrices(cat in category(), s: u64) {
        let mut g = rng(s);
        let (x, y, w) = (random_object(&cat, 3, &mut g), random_object(&cat, 3, &mut g), random_object(&cat, 3, &mut g));
        let f = random_morphism(&cat, &x, &y, &mut g);
        let h = random_morphism(&cat, &y, &w, &mut g);
        let fld = cat.field();
        prop_assert_eq!(cat.post_matrix(&h, &x).mul_vec(fld, &f.coords), cat.compose(&h, &f).coords);
        prop_assert_eq!(cat.pre_matrix(&f, &w).mul_vec(fld, &h.coords), cat.compose(&h, &f).coords);
    }

    #[test]
    fn sums_compose_blockwise(cat in category(), s: u64) {
        let mut g = rng(s);
        let obs: Vec<Vec<usize>> = (0..6).map(|_| random_object(&cat, 2, &mut g)).collect();
        let f = random_morphism(&cat, &obs[0], &obs[1], &mut g);
        let h = random_morphism(&cat, &obs[1], &obs[2], &mut g);
        let f2 = random_morphism(&cat, &obs[3], &obs[4], &mut g);
        let h2 = random_morphism(&cat, &obs[4], &obs[5], &mut g);
        let lhs = cat.compose(&cat.direct_sum(&h, &h2), &cat.direct_sum(&f, &f2));
        prop_assert_eq!(&lhs, &cat.direct_sum(&cat.compose(&h, &f), &cat.compose(&h2, &f2)));
        let (r, c) = (obs[2].len(), obs[0].len());
        prop_assert_eq!(cat.restrict(&lhs, 0, r, 0, c), cat.compose(&h, &f));
        prop_assert!(cat.is_zero(&cat.restrict(&lhs, r, obs[5].len(), 0, c)));
    }

    #[test]
    fn canonical_permutation_is_an_isomorphism(cat in category(), s: u64) {
        let mut g = rng(s);
        let x = random_object(&cat, 4, &mut g);
        let perm = cat.canonical_permutation(&x);
        let p = cat.permutation(&x, &perm);
        prop_assert_eq!(&p.tgt, &cat.canonical(&x));
        let inv = cat.inverse(&p).expect("permutations are invertible");
        prop_assert_eq!(cat.compose(&inv, &p), cat.identity(&x));
    }

    /// `inverse` finds exactly the isomorphisms, checked against a scan of
    /// `Hom(y, x)` for a two-sided inverse.
    #[test]
    fn inverse_matches_a_scan(cat in category(), s: u64) {
        let mut g = rng(s);
        let x = random_object(&cat, 2, &mut g);
        let y = if g.gen_bool(0.5) { x.clone() } else { random_object(&cat, 2, &mut g) };
        let f = random_morphism(&cat, &x, &y, &mut g);
        let scan = cat.hom_elements(&y, &x).find(|h| cat.compose(h, &f) == cat.identity(&x) && cat.compose(&f, h) == cat.identity(&y));
        prop_assert_eq!(cat.inverse(&f), scan);
    }

    #[test]
    fn opposite_reverses_composition(cat in category(), s: u64) {
        let mut g = rng(s);
        let (x, y, z) = (random_object(&cat, 2, &mut g), random_object(&cat, 2, &mut g), random_object(&cat, 2, &mut g));
        let f = random_morphism(&cat, &x, &y, &mut g);
        let h = random_morphism(&cat, &y, &z, &mut g);
        let op = cat.opposite();
        prop_assert_eq!(op.compose(&cat.op_morphism(&f), &cat.op_morphism(&h)), cat.op_morphism(&cat.compose(&h, &f)));
    }
}
