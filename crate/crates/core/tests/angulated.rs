mod common;

use std::sync::Arc;

use common::{random_sequence, rng};
use nexang_core::angulated::*;
use nexang_core::complexes::{left_rotation, SigmaSequence};
use nexang_core::search::{Ctx, Search};
use nexang_core::{fixtures, AddFunctor, Config, Status};
use proptest::prelude::*;

fn ctx(t: &Angulation) -> Ctx {
    Ctx::new(t.sigma().src().clone(), Config::new(2))
}

#[test]
fn swapped_fixture_is_triangulated() {
    let (_, t) = fixtures::swapped();
    let r = check_angulation_axioms(&ctx(&t), &t);
    assert_eq!(r.status(), Status::Pass, "{}", r.render_text());
}

#[test]
fn a_non_exact_generator_breaks_f3() {
    let (cat, mut t) = fixtures::triangulated();
    let one = cat.identity(&[0]);
    t.generators.push(SigmaSequence { objects: vec![vec![0]; 3], diffs: vec![one.clone(), one.clone()], last: one });
    let r = check_angulation_axioms(&ctx(&t), &t);
    assert_eq!(r.check("F3").unwrap().status, Status::Fail, "{}", r.render_text());
}

#[test]
fn identity_and_sigma_are_angulated_functors() {
    let (cat, t) = fixtures::swapped();
    let c = ctx(&t);
    // For F = Id, Θ_a is the identity of Σa.
    let theta = (0..2).map(|a| cat.identity(t.sigma().base_object(a))).collect();
    let id = AngulatedFunctorWitness { functor: Arc::new(AddFunctor::identity(cat.clone())), theta };
    assert_eq!(check_angulated_functor(&c, &id, &t, &t).status(), Status::Pass);
    // Σ commutes with itself strictly, so Θ is the identity of Σ².
    let theta = (0..2).map(|a| cat.identity(&[a])).collect();
    let sigma = AngulatedFunctorWitness { functor: Arc::new(t.sigma().clone()), theta };
    assert_eq!(check_angulated_functor(&c, &sigma, &t, &t).status(), Status::Pass);
}

#[test]
fn zero_theta_is_not_natural_iso() {
    let (cat, t) = fixtures::triangulated();
    let w = AngulatedFunctorWitness { functor: Arc::new(AddFunctor::identity(cat.clone())), theta: vec![cat.zero(&[0], &[0])] };
    let r = check_angulated_functor(&ctx(&t), &w, &t, &t);
    assert_eq!(r.check("Θ invertible").unwrap().status, Status::Fail);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// On the stable-module fixture the triangles are exactly the
    /// Σ-sequences whose long Hom sequence is exact.
    #[test]
    fn membership_matches_long_exactness(s: u64) {
        let (cat, t) = fixtures::triangulated();
        let x = random_sequence(&cat, t.sigma(), 1, &mut rng(s));
        let member = contains_angle(&ctx(&t), &t, &x);
        prop_assert!(!matches!(member, Search::Exhausted));
        prop_assert_eq!(member.is_found(), fixtures::is_exact_periodic(&cat, t.sigma(), &x));
    }

    #[test]
    fn right_rotation_undoes_left_rotation(s: u64) {
        let (cat, t) = fixtures::swapped();
        let x = random_sequence(&cat, t.sigma(), 1, &mut rng(s));
        let back = left_rotation(&cat, t.sigma(), &right_rotation(&cat, &t.sigma, &x).unwrap());
        prop_assert!(find_sigma_iso(&ctx(&t), t.sigma(), &back, &x).is_found());
    }

    #[test]
    fn rotations_of_members_are_members(s: u64) {
        let (cat, t) = fixtures::swapped();
        let c = ctx(&t);
        let x = random_sequence(&cat, t.sigma(), 1, &mut rng(s));
        prop_assume!(contains_angle(&c, &t, &x).is_found());
        let l = left_rotation(&cat, t.sigma(), &x);
        let r = right_rotation(&cat, &t.sigma, &x).unwrap();
        prop_assert!(contains_angle(&c, &t, &l).is_found());
        prop_assert!(contains_angle(&c, &t, &r).is_found());
    }
}
