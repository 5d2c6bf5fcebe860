//! Shared inputs for the criterion benches.

use nexang_core::linalg::Matrix;
use nexang_core::search::Ctx;
use nexang_core::{fixtures, Config, EquivalenceWitness, PrimeField};

/// A deterministic dense `n × n` matrix over `F_p` (a linear congruential
/// fill, so the bench does not depend on an RNG crate).
pub fn dense_matrix(p: u32, n: usize) -> (PrimeField, Matrix) {
    let f = PrimeField::new(p).expect("prime");
    let mut state = 0x2545_f491_u64;
    let data = (0..n * n)
        .map(|_| {
            state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
            ((state >> 33) % p as u64) as u32
        })
        .collect();
    (f, Matrix::new(n, n, data).expect("square"))
}

pub fn ctx_on_one_object(bound: usize) -> Ctx {
    Ctx::new(fixtures::one_object("k"), Config::new(bound))
}

pub fn doubling_of(name: &str) -> EquivalenceWitness {
    fixtures::doubling(fixtures::one_object(name), fixtures::doubled())
}
