//! Skeletons of base categories and strict inverses of functors between
//! skeletal categories.

use std::sync::Arc;

use crate::category::{AddMorphism, BaseCategory, Universe};
use crate::error::{Error, Result};
use crate::functor::{AddFunctor, EquivalenceWitness};
use crate::linalg::{self, Matrix};
use crate::report::{Check, Status};

/// The full subcategory on one base object per isomorphism class (the
/// least name in each class), with the inclusion `F` and the retraction
/// `G` along the first isomorphism found: `Φ_y: y -> FGy` is that
/// isomorphism, `Ψ` is the identity.
///
/// Sums are not collapsed: two objects of the additive closure that
/// differ only in summand order stay distinct, and the skeleton is taken
/// on base objects.
pub fn compute_skeleton(cat: &Arc<BaseCategory>) -> (Arc<BaseCategory>, EquivalenceWitness) {
    let nb = cat.num_objects();
    let mut order: Vec<usize> = (0..nb).collect();
    order.sort_by(|&a, &b| cat.name(a).cmp(cat.name(b)));
    // rep[b] = (index of the representative among reps, chosen iso b -> rep)
    let mut reps: Vec<usize> = Vec::new();
    let mut to_rep: Vec<Option<(usize, AddMorphism)>> = vec![None; nb];
    for &b in &order {
        let hit =
            reps.iter().enumerate().find_map(|(i, &r)| cat.find_isomorphisms(&[b], &[r]).into_iter().next().map(|f| (i, f)));
        match hit {
            Some(x) => to_rep[b] = Some(x),
            None => {
                to_rep[b] = Some((reps.len(), cat.identity(&[b])));
                reps.push(b);
            }
        }
    }
    let to_rep: Vec<(usize, AddMorphism)> = to_rep.into_iter().map(|x| x.expect("every object has a representative")).collect();
    let k = reps.len();
    let names = reps.iter().map(|&r| cat.name(r).to_string()).collect();
    let dims = reps.iter().map(|&a| reps.iter().map(|&b| cat.base_dim(a, b)).collect()).collect();
    let ids = reps.iter().map(|&a| cat.base_identity(a).to_vec()).collect();
    let skel = Arc::new(
        BaseCategory::from_fn(cat.field(), names, dims, ids, |a, b, c, i, j| {
            let (ra, rb, rc) = (reps[a], reps[b], reps[c]);
            cat.compose_base(ra, rb, rc, &unit_vec(cat.base_dim(rb, rc), i), &unit_vec(cat.base_dim(ra, rb), j))
        })
        .expect("a full subcategory satisfies the category laws"),
    );
    let f = AddFunctor::from_fn(skel.clone(), cat.clone(), reps.iter().map(|&r| vec![r]).collect(), |a, b, t| {
        cat.basis_morphism(reps[a], reps[b], t)
    })
    .expect("inclusion is well formed");
    let g = AddFunctor::from_fn(cat.clone(), skel.clone(), (0..nb).map(|b| vec![to_rep[b].0]).collect(), |a, b, t| {
        let (ia, fa) = &to_rep[a];
        let (ib, fb) = &to_rep[b];
        let fa_inv = cat.inverse(fa).expect("chosen map is an isomorphism");
        let m = cat.compose_all(&[fb, &cat.basis_morphism(a, b, t), &fa_inv]);
        skel.morphism(&[*ia], &[*ib], m.coords)
    })
    .expect("retraction is well formed");
    let unit = (0..nb).map(|b| to_rep[b].1.clone()).collect();
    let counit = (0..k).map(|a| skel.identity(&[a])).collect();
    let w = EquivalenceWitness::new(Arc::new(f), Arc::new(g), unit, counit).expect("witness shapes match");
    (skel, w)
}

fn unit_vec(d: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

/// The strict inverse of a functor that is bijective on base objects and
/// on every base Hom space.
pub fn skeletal_inverse(f: &AddFunctor) -> Result<AddFunctor> {
    let (src, tgt) = (f.src(), f.tgt());
    let nb = src.num_objects();
    if tgt.num_objects() != nb {
        return Err(Error::input("the functor is not bijective on objects"));
    }
    let mut pre = vec![usize::MAX; nb];
    for a in 0..nb {
        let o = f.base_object(a);
        if o.len() != 1 || pre[o[0]] != usize::MAX {
            return Err(Error::input(format!("{} has no unique preimage", tgt.show_object(o))));
        }
        pre[o[0]] = a;
    }
    let fld = src.field();
    let mut homs = Vec::with_capacity(nb);
    for b in 0..nb {
        let mut row = Vec::with_capacity(nb);
        for b2 in 0..nb {
            let m = f.base_matrix(pre[b], pre[b2]);
            let inv: Matrix = if m.rows() == 0 && m.cols() == 0 {
                Matrix::zeros(0, 0)
            } else {
                linalg::inverse(fld, m).ok_or_else(|| {
                    Error::input(format!("the functor is not bijective on Hom({}, {})", tgt.name(b), tgt.name(b2)))
                })?
            };
            row.push(inv);
        }
        homs.push(row);
    }
    AddFunctor::new(tgt.clone(), src.clone(), pre.iter().map(|&a| vec![a]).collect(), homs)
}

/// `G F = Id` checked on every universe object and every Hom coordinate.
pub fn check_identity_on(name: &str, h: &AddFunctor, u: &Universe) -> Check {
    let cat = h.src();
    let mut chk = Check::new(name);
    let objs = u.objects();
    for x in objs {
        chk.record(if h.object(x) == *x { Status::Pass } else { Status::Fail }, || {
            format!("{} is sent to {}", cat.show_object(x), cat.show_object(&h.object(x)))
        });
    }
    for x in objs {
        for y in objs {
            let ok = h.object(x) == *x && h.object(y) == *y && h.hom_matrix(x, y) == Matrix::identity(cat.hom_dim(x, y));
            chk.record(if ok { Status::Pass } else { Status::Fail }, || {
                format!("not the identity on Hom({}, {})", cat.show_object(x), cat.show_object(y))
            });
        }
    }
    chk
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn doubled_collapses_to_one_object() {
        let (skel, w) = compute_skeleton(&fixtures::doubled());
        assert_eq!(skel.names(), &["S".to_string()]);
        assert_eq!(w.validate(None).status(), Status::Pass);
    }

    #[test]
    fn skeletal_categories_keep_all_objects() {
        let c = fixtures::dual_numbers_modules();
        let (skel, w) = compute_skeleton(&c);
        assert_eq!(skel.num_objects(), 2);
        assert_eq!(w.validate(None).status(), Status::Pass);
    }

    #[test]
    fn identity_has_identity_inverse() {
        let c = fixtures::one_object("S");
        let f = AddFunctor::identity(c.clone());
        let g = skeletal_inverse(&f).unwrap();
        assert_eq!(check_identity_on("GF", &f.then(&g), &Universe::new(&c, 2)).status, Status::Pass);
    }
}
