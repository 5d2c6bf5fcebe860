//! Small categories and structures used by the acceptance suite, the
//! benches and the shipped JSON fixtures.

use std::sync::Arc;

use crate::angulated::{Angulation, SigmaStructure};
use crate::category::{AddMorphism, AddObject, BaseCategory};
use crate::complexes::{Complex, SigmaSequence};
use crate::functor::{AddFunctor, EquivalenceWitness};
use crate::homalg::{self, ExactStructure};
use crate::linalg::PrimeField;

fn f2() -> PrimeField {
    PrimeField::new(2).expect("2 is prime")
}

/// One base object with endomorphism ring `F_2`. Named `S` it presents the
/// stable category of `F_2[x]/(x²)`; named `k` it is `F_2`-vector spaces.
pub fn one_object(name: &str) -> Arc<BaseCategory> {
    Arc::new(BaseCategory::from_fn(f2(), vec![name.into()], vec![vec![1]], vec![vec![1]], |_, _, _, _, _| vec![1]).unwrap())
}

/// Two isomorphic base objects `S`, `S'`; every Hom space is spanned by one
/// morphism `e_ab` and `e_bc ∘ e_ab = e_ac`.
pub fn doubled() -> Arc<BaseCategory> {
    Arc::new(
        BaseCategory::from_fn(f2(), vec!["S".into(), "S'".into()], vec![vec![1; 2]; 2], vec![vec![1]; 2], |_, _, _, _, _| {
            vec![1]
        })
        .unwrap(),
    )
}

/// The inclusion of a one-object category into [`doubled`] together with
/// the retraction collapsing `S'` onto `S`.
pub fn doubling(src: Arc<BaseCategory>, dbl: Arc<BaseCategory>) -> EquivalenceWitness {
    let f = AddFunctor::from_fn(src.clone(), dbl.clone(), vec![vec![0]], |_, _, _| dbl.morphism(&[0], &[0], vec![1])).unwrap();
    let g = AddFunctor::from_fn(dbl.clone(), src.clone(), vec![vec![0], vec![0]], |_, _, _| src.morphism(&[0], &[0], vec![1]))
        .unwrap();
    let unit = vec![dbl.identity(&[0]), dbl.morphism(&[1], &[0], vec![1])];
    let counit = vec![src.identity(&[0])];
    EquivalenceWitness::new(Arc::new(f), Arc::new(g), unit, counit).unwrap()
}

/// Modules over the dual numbers `F_2[x]/(x²)`: the simple `k` and the free
/// module `P`, with `ι: k -> P`, `π: P -> k`, `ιπ = x`, `πι = 0`, `x² = 0`.
pub fn dual_numbers_modules() -> Arc<BaseCategory> {
    let dims = vec![vec![1, 1], vec![1, 2]];
    let ids = vec![vec![1], vec![1, 0]];
    let comp = |a: usize, b: usize, c: usize, i: usize, j: usize| -> Vec<u32> {
        match (a, b, c) {
            (0, 0, 0) => vec![1],
            (0, 0, 1) => vec![1],
            (0, 1, 0) => vec![0],
            // 1∘ι = ι, x∘ι = 0
            (0, 1, 1) => vec![if i == 0 { 1 } else { 0 }],
            (1, 0, 0) => vec![1],
            // ι∘π = x
            (1, 0, 1) => vec![0, 1],
            // π∘1 = π, π∘x = 0
            (1, 1, 0) => vec![if j == 0 { 1 } else { 0 }],
            _ => match (i, j) {
                (0, 0) => vec![1, 0],
                (1, 1) => vec![0, 0],
                _ => vec![0, 1],
            },
        }
    };
    Arc::new(BaseCategory::from_fn(f2(), vec!["k".into(), "P".into()], dims, ids, comp).unwrap())
}

/// One object `A` with endomorphisms `F_2 × F_2 = span(1, e)`: the idempotent
/// `e` has nowhere to split.
pub fn idempotent_algebra() -> Arc<BaseCategory> {
    let comp = |_: usize, _: usize, _: usize, i: usize, j: usize| -> Vec<u32> {
        if i == 0 && j == 0 {
            vec![1, 0]
        } else {
            vec![0, 1]
        }
    };
    Arc::new(BaseCategory::from_fn(f2(), vec!["A".into()], vec![vec![2]], vec![vec![1, 0]], comp).unwrap())
}

/// The three rotations of the trivial triangle on the base object `a`:
/// `(a →1 a → 0 → Σa)`, `(a → 0 → Σa →1 Σa)`, `(0 → Σa →1 Σa → 0)`. Signs
/// are dropped, so this is only meant for `F_2`.
pub fn trivial_triangles(cat: &BaseCategory, sigma: &AddFunctor, a: usize) -> Vec<SigmaSequence> {
    let s: AddObject = vec![a];
    let ss = sigma.object(&s);
    let z: AddObject = Vec::new();
    let mk = |objs: [&AddObject; 3], d0: bool, d1: bool, last: bool| {
        let m = |x: &AddObject, y: &AddObject, one: bool| {
            let c = if one { cat.identity(x).coords } else { vec![0; cat.hom_dim(x, y)] };
            AddMorphism { src: x.clone(), tgt: y.clone(), coords: c }
        };
        let objects: Vec<AddObject> = objs.iter().map(|o| (*o).clone()).collect();
        let diffs = vec![m(objs[0], objs[1], d0), m(objs[1], objs[2], d1)];
        let last = m(objs[2], &sigma.object(objs[0]), last);
        SigmaSequence::new(objects, diffs, last, sigma).unwrap()
    };
    vec![mk([&s, &s, &z], true, false, false), mk([&s, &z, &ss], false, false, true), mk([&z, &ss, &ss], false, true, false)]
}

/// [`trivial_triangles`] on the base object `0`.
pub fn triangle_generators(cat: &BaseCategory, sigma: &AddFunctor) -> Vec<SigmaSequence> {
    trivial_triangles(cat, sigma, 0)
}

/// The triangulated stable-module fixture: one object, Σ = Id.
pub fn triangulated() -> (Arc<BaseCategory>, Angulation) {
    let cat = one_object("S");
    let sigma = SigmaStructure::identity(cat.clone());
    let gens = triangle_generators(&cat, sigma.sigma());
    (cat, Angulation::new(1, sigma, gens).unwrap())
}

/// The triangulated fixture with the identity angle removed from the
/// generators: F1(b) must fail.
pub fn triangulated_without_identity() -> (Arc<BaseCategory>, Angulation) {
    let (cat, t) = triangulated();
    let gens = t.generators[1..].to_vec();
    (cat, Angulation::new(1, t.sigma, gens).unwrap())
}

/// Two non-isomorphic base objects `A`, `B` with `End = F_2` and no maps
/// between them.
pub fn two_simples() -> Arc<BaseCategory> {
    let dims = vec![vec![1, 0], vec![0, 1]];
    Arc::new(
        BaseCategory::from_fn(f2(), vec!["A".into(), "B".into()], dims, vec![vec![1]; 2], |a, _, c, _, _| {
            if a == c {
                vec![1]
            } else {
                Vec::new()
            }
        })
        .unwrap(),
    )
}

/// [`two_simples`] with Σ exchanging `A` and `B`, triangulated by the
/// trivial triangles on both objects.
pub fn swapped() -> (Arc<BaseCategory>, Angulation) {
    let cat = two_simples();
    let swap = Arc::new(
        AddFunctor::from_fn(cat.clone(), cat.clone(), vec![vec![1], vec![0]], |a, _, _| {
            let b = 1 - a;
            cat.identity(&[b])
        })
        .unwrap(),
    );
    let ids: Vec<AddMorphism> = (0..2).map(|a| cat.identity(&[a])).collect();
    let w = EquivalenceWitness::new(swap.clone(), swap.clone(), ids.clone(), ids).unwrap();
    let sigma = SigmaStructure::new(w, true).unwrap();
    let mut gens = trivial_triangles(&cat, &swap, 0);
    gens.extend(trivial_triangles(&cat, &swap, 1));
    (cat.clone(), Angulation::new(1, sigma, gens).unwrap())
}

/// Exactness of `Hom(Z, -)` on `X^0 → X^1 → X^2 → ΣX^0 → ΣX^1` at its
/// three interior terms, for every base `Z`: the defining property of the
/// triangles of the stable-module fixture.
pub fn is_exact_periodic(cat: &BaseCategory, sigma: &AddFunctor, s: &SigmaSequence) -> bool {
    let mut diffs = s.diffs.clone();
    diffs.push(s.last.clone());
    diffs.push(sigma.morphism(&s.diffs[0]));
    let long = Complex::from_diffs(diffs);
    (0..cat.num_objects()).all(|z| {
        let seq = homalg::covariant_seq(cat, z, &long);
        (2..=s.objects.len() + 1).all(|i| seq.is_exact_at(cat.field(), i).unwrap())
    })
}

/// The contractible pieces `a →1 a` placed in degrees `i, i+1`, for every
/// base object `a` and `i = 0..=n`.
pub fn split_pieces(cat: &BaseCategory, n: usize) -> Vec<Complex> {
    let mut pieces = Vec::new();
    for a in 0..cat.num_objects() {
        for i in 0..=n {
            let mut objects = vec![Vec::new(); n + 2];
            objects[i] = vec![a];
            objects[i + 1] = vec![a];
            let diffs =
                (0..=n).map(|k| if k == i { cat.identity(&[a]) } else { cat.zero(&objects[k], &objects[k + 1]) }).collect();
            pieces.push(Complex { objects, diffs });
        }
    }
    pieces
}

/// All sums of `pieces` (with repetition) whose end terms have at most
/// `bound` summands and whose interior terms have at most `2 * bound`, so
/// that every sequence between universe objects has a generator.
pub fn sums_of_pieces(cat: &BaseCategory, n: usize, pieces: &[Complex], bound: usize) -> ExactStructure {
    fn rec(cat: &BaseCategory, pieces: &[Complex], bound: usize, start: usize, acc: Complex, out: &mut Vec<Complex>) {
        out.push(acc.clone());
        let last = acc.len() - 1;
        for p in start..pieces.len() {
            let fits = acc.objects.iter().zip(&pieces[p].objects).enumerate().all(|(i, (x, y))| {
                let cap = if i == 0 || i == last { bound } else { 2 * bound };
                x.len() + y.len() <= cap
            });
            if fits {
                rec(cat, pieces, bound, p, acc.direct_sum(cat, &pieces[p]), out);
            }
        }
    }
    let mut gens = Vec::new();
    rec(cat, pieces, bound, 0, homalg_zero(cat, n), &mut gens);
    ExactStructure::new(n, gens).unwrap()
}

/// Split n-exact sequences: sums of [`split_pieces`].
pub fn split_exact_structure(cat: &BaseCategory, n: usize, bound: usize) -> ExactStructure {
    sums_of_pieces(cat, n, &split_pieces(cat, n), bound)
}

/// The nonsplit sequence `k →ι P →π k` of [`dual_numbers_modules`].
pub fn dual_numbers_nonsplit(cat: &BaseCategory) -> Complex {
    let iota = cat.morphism(&[0], &[1], vec![1]);
    let pi = cat.morphism(&[1], &[0], vec![1]);
    Complex::new(vec![vec![0], vec![1], vec![0]], vec![iota, pi]).unwrap()
}

/// All short exact sequences of modules over the dual numbers: split
/// pieces together with `k → P → k`.
pub fn dual_numbers_exact(cat: &BaseCategory, bound: usize) -> ExactStructure {
    let mut pieces = split_pieces(cat, 1);
    pieces.push(dual_numbers_nonsplit(cat));
    sums_of_pieces(cat, 1, &pieces, bound)
}

fn homalg_zero(cat: &BaseCategory, n: usize) -> Complex {
    crate::complexes::zero_chain(cat, n + 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_satisfy_category_laws() {
        for c in [one_object("S"), doubled(), dual_numbers_modules(), idempotent_algebra(), two_simples()] {
            assert!(c.validate().is_empty(), "{}", c);
        }
    }

    #[test]
    fn doubling_is_an_equivalence() {
        let w = doubling(one_object("S"), doubled());
        assert_eq!(w.validate(None).status(), crate::report::Status::Pass);
    }

    #[test]
    fn generators_are_exact_periodic() {
        let (cat, t) = triangulated();
        for g in &t.generators {
            assert!(is_exact_periodic(&cat, t.sigma(), g));
        }
    }

    #[test]
    fn dual_numbers_sequences_are_exact() {
        let c = dual_numbers_modules();
        let xs = dual_numbers_exact(&c, 2);
        assert!(xs.generators.iter().all(|g| homalg::is_n_exact(&c, g)));
        assert!(xs.generators.contains(&dual_numbers_nonsplit(&c)));
    }

    #[test]
    fn split_shapes_for_vector_spaces() {
        let c = one_object("k");
        let xs = split_exact_structure(&c, 1, 2);
        // (a, a + c, c) with a, c <= 2
        assert_eq!(xs.generators.len(), 9);
        assert!(xs.generators.iter().all(|g| homalg::is_n_exact(&c, g)));
    }
}
