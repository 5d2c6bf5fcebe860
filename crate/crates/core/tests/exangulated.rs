mod common;

use common::{random_morphism, random_object, rng};
use nexang_core::exangulated::*;
use nexang_core::search::Ctx;
use nexang_core::{fixtures, Config, Status};
use proptest::prelude::*;
use rand::Rng;

fn ctx_at(cat: std::sync::Arc<nexang_core::BaseCategory>, bound: usize) -> Ctx {
    Ctx::new(cat, Config::new(bound))
}

#[test]
fn sigma_structure_on_the_triangulated_fixture() {
    let (cat, t) = fixtures::triangulated();
    let ctx = ctx_at(cat, 2);
    let (e, r) = induced_from_sigma(&ctx, &t);
    assert_eq!(e.validate().status, Status::Pass);
    assert_eq!(check_realization(&ctx, &e, &r).status(), Status::Pass);
    let ax = check_exangulated_axioms(&ctx, &e, &r);
    assert_eq!(ax.status(), Status::Pass, "{}", ax.render_text());
}

#[test]
fn exact_structures_induce_exangulations() {
    let k = fixtures::one_object("k");
    let ctx = ctx_at(k.clone(), 2);
    let (e, r, group) = induced_from_exact(&ctx, &fixtures::split_exact_structure(&k, 1, 2)).unwrap();
    assert!(e.is_zero());
    assert_eq!(group.status, Status::Pass);
    let ax = check_exangulated_axioms(&ctx, &e, &r);
    assert_eq!(ax.status(), Status::Pass, "{}", ax.render_text());

    let dn = fixtures::dual_numbers_modules();
    // The Baer sum needs sequences with two summands at the ends.
    let ctx = ctx_at(dn.clone(), 2);
    let (e, r, group) = induced_from_exact(&ctx, &fixtures::dual_numbers_exact(&dn, 2)).unwrap();
    assert_eq!(group.status, Status::Pass);
    assert_eq!(e.dim(&[0], &[0]), 1, "one nonsplit class k -> P -> k");
    assert_eq!(e.validate().status, Status::Pass);
    let rr = check_realization(&ctx, &e, &r);
    assert_eq!(rr.status(), Status::Pass, "{}", rr.render_text());
}

#[test]
fn split_structures_on_dual_numbers() {
    let ctx = ctx_at(fixtures::dual_numbers_modules(), 1);
    for n in 1..=2 {
        let (e, r) = split_structure(&ctx, n);
        let ax = check_exangulated_axioms(&ctx, &e, &r);
        assert_eq!(ax.status(), Status::Pass, "n = {n}:\n{}", ax.render_text());
    }
}

#[test]
fn a_non_exangle_is_rejected() {
    let (cat, t) = fixtures::triangulated();
    let ctx = ctx_at(cat.clone(), 2);
    let (e, _) = induced_from_sigma(&ctx, &t);
    // The split triangle does not realize the nonzero class.
    let d = e.elements(&[0], &[0]).pop().unwrap();
    assert_ne!(d.coords, vec![0]);
    let split = split_complex(&cat, &[0], &[0], 1);
    assert!(!is_n_exangle(&e, &split, &d).unwrap());
    assert!(is_n_exangle(&e, &split, &e.zero_ext(&[0], &[0])).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn actions_are_functorial(s: u64) {
        let cat = fixtures::dual_numbers_modules();
        let ctx = ctx_at(cat.clone(), 2);
        let (e, _, _) = induced_from_exact(&ctx, &fixtures::dual_numbers_exact(&cat, 2)).unwrap();
        let mut g = rng(s);
        let (c, a) = (random_object(&cat, 2, &mut g), random_object(&cat, 2, &mut g));
        let d = e.elements(&c, &a).swap_remove(g.gen_range(0..e.size(&c, &a) as usize));
        let (a2, a3) = (random_object(&cat, 2, &mut g), random_object(&cat, 2, &mut g));
        let (c2, c3) = (random_object(&cat, 2, &mut g), random_object(&cat, 2, &mut g));
        let (x1, x2) = (random_morphism(&cat, &a, &a2, &mut g), random_morphism(&cat, &a2, &a3, &mut g));
        let (z1, z2) = (random_morphism(&cat, &c2, &c, &mut g), random_morphism(&cat, &c3, &c2, &mut g));
        prop_assert_eq!(e.push(&cat.compose(&x2, &x1), &d).unwrap(), e.push(&x2, &e.push(&x1, &d).unwrap()).unwrap());
        prop_assert_eq!(e.pull(&cat.compose(&z1, &z2), &d).unwrap(), e.pull(&z2, &e.pull(&z1, &d).unwrap()).unwrap());
        prop_assert_eq!(e.push(&x1, &e.pull(&z1, &d).unwrap()).unwrap(), e.pull(&z1, &e.push(&x1, &d).unwrap()).unwrap());
        prop_assert_eq!(e.push(&cat.identity(&a), &d).unwrap(), d);
    }

    #[test]
    fn sigma_elements_are_morphisms(c in 0usize..3, s: u64) {
        let (cat, t) = if c == 0 { fixtures::triangulated() } else { fixtures::swapped() };
        let e = sigma_extensions(&cat, t.sigma());
        let mut g = rng(s);
        let (cc, a) = (random_object(&cat, 3, &mut g), random_object(&cat, 3, &mut g));
        let h = random_morphism(&cat, &cc, &t.sigma().object(&a), &mut g);
        let d = sigma_from_hom(&e, t.sigma(), &a, &h);
        prop_assert_eq!(sigma_to_hom(&e, t.sigma(), &d), h.clone());
        // Pushing along x is postcomposing with Σx.
        let a2 = random_object(&cat, 2, &mut g);
        let x = random_morphism(&cat, &a, &a2, &mut g);
        let pushed = sigma_to_hom(&e, t.sigma(), &e.push(&x, &d).unwrap());
        prop_assert_eq!(pushed, cat.compose(&t.sigma().morphism(&x), &h));
    }
}
