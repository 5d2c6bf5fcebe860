//! Random data for the property tests. Everything is driven by a seed so
//! proptest can shrink on it.

#![allow(dead_code)]

use std::sync::Arc;

use nexang_core::complexes::{Complex, SigmaSequence};
use nexang_core::linalg::{self, Matrix};
use nexang_core::{AddFunctor, AddMorphism, BaseCategory, PrimeField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `F_3`-vector spaces: one object with endomorphisms `F_3`.
pub fn vect3() -> Arc<BaseCategory> {
    let f = PrimeField::new(3).unwrap();
    Arc::new(BaseCategory::from_fn(f, vec!["k".into()], vec![vec![1]], vec![vec![1]], |_, _, _, _, _| vec![1]).unwrap())
}

pub fn random_object(cat: &BaseCategory, max: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    (0..rng.gen_range(0..=max)).map(|_| rng.gen_range(0..cat.num_objects())).collect()
}

pub fn random_morphism(cat: &BaseCategory, x: &[usize], y: &[usize], rng: &mut ChaCha8Rng) -> AddMorphism {
    let p = cat.field().p();
    let coords = (0..cat.hom_dim(x, y)).map(|_| rng.gen_range(0..p)).collect();
    cat.morphism(x, y, coords)
}

pub fn random_matrix(f: PrimeField, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::new(rows, cols, (0..rows * cols).map(|_| rng.gen_range(0..f.p())).collect()).unwrap()
}

pub fn random_in_span(f: PrimeField, dim: usize, basis: &[Vec<u32>], rng: &mut ChaCha8Rng) -> Vec<u32> {
    let mut v = vec![0; dim];
    for b in basis {
        f.axpy(&mut v, rng.gen_range(0..f.p()), b);
    }
    v
}

/// A complex with `m` objects, each map drawn among those killing the
/// previous one.
pub fn random_complex(cat: &BaseCategory, m: usize, rng: &mut ChaCha8Rng) -> Complex {
    let f = cat.field();
    let objects: Vec<Vec<usize>> = (0..m).map(|_| random_object(cat, 2, rng)).collect();
    let mut diffs: Vec<AddMorphism> = Vec::new();
    for i in 0..m - 1 {
        let d = if i == 0 {
            random_morphism(cat, &objects[0], &objects[1], rng)
        } else {
            let dim = cat.hom_dim(&objects[i], &objects[i + 1]);
            let basis = linalg::kernel_basis(f, &cat.pre_matrix(&diffs[i - 1], &objects[i + 1]));
            cat.morphism(&objects[i], &objects[i + 1], random_in_span(f, dim, &basis, rng))
        };
        diffs.push(d);
    }
    Complex::new(objects, diffs).unwrap()
}

/// A Σ-sequence with arbitrary maps.
pub fn random_sequence(cat: &BaseCategory, sigma: &AddFunctor, n: usize, rng: &mut ChaCha8Rng) -> SigmaSequence {
    let objects: Vec<Vec<usize>> = (0..n + 2).map(|_| random_object(cat, 2, rng)).collect();
    let diffs = (0..n + 1).map(|i| random_morphism(cat, &objects[i], &objects[i + 1], rng)).collect();
    let last = random_morphism(cat, &objects[n + 1], &sigma.object(&objects[0]), rng);
    SigmaSequence { objects, diffs, last }
}

/// A Σ-sequence whose every consecutive composite vanishes, the last map
/// included.
pub fn random_sigma_complex(cat: &BaseCategory, sigma: &AddFunctor, n: usize, rng: &mut ChaCha8Rng) -> SigmaSequence {
    let f = cat.field();
    let x = random_complex(cat, n + 2, rng);
    let (first, last) = (sigma.object(&x.objects[0]), &x.objects[n + 1]);
    let dim = cat.hom_dim(last, &first);
    let a = cat.pre_matrix(&x.diffs[n], &first);
    let b = cat.post_matrix(&sigma.morphism(&x.diffs[0]), last);
    let basis = linalg::kernel_basis(f, &Matrix::vstack(dim, &[&a, &b]));
    let coords = random_in_span(f, dim, &basis, rng);
    SigmaSequence { objects: x.objects.clone(), diffs: x.diffs.clone(), last: cat.morphism(last, &first, coords) }
}
