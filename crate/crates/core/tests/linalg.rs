mod common;

use std::collections::HashSet;

use common::{random_matrix, rng};
use nexang_core::linalg::{self, all_vectors, LinearSeq, Matrix};
use nexang_core::PrimeField;
use proptest::prelude::*;

fn field() -> impl Strategy<Value = PrimeField> {
    prop_oneof![Just(2u32), Just(3), Just(5), Just(7)].prop_map(|p| PrimeField::new(p).unwrap())
}

fn matrix(max: usize) -> impl Strategy<Value = (PrimeField, Matrix)> {
    (field(), 0..=max, 0..=max, any::<u64>()).prop_map(|(f, r, c, s)| (f, random_matrix(f, r, c, &mut rng(s))))
}

#[test]
fn field_arithmetic_tables() {
    for p in [2u32, 3, 5, 7, 11] {
        let f = PrimeField::new(p).unwrap();
        for a in 0..p {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in 0..p {
                assert_eq!(f.mul(a, b), a * b % p);
                assert_eq!(f.sub(f.add(a, b), b), a);
            }
        }
        assert_eq!(f.inv(0), None);
        assert_eq!(f.reduce(-1), p - 1);
    }
    assert!(PrimeField::new(4).is_err() && PrimeField::new(1).is_err() && PrimeField::new(0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_nullity((f, m) in matrix(6)) {
        let r = linalg::rank(f, &m);
        let k = linalg::kernel_basis(f, &m);
        prop_assert_eq!(r + k.len(), m.cols());
        prop_assert_eq!(r, linalg::rank(f, &m.transpose()));
        for v in &k {
            prop_assert!(m.mul_vec(f, v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn rank_of_product_is_bounded((f, a) in matrix(5), c in 0usize..5, s: u64) {
        let b = random_matrix(f, a.cols(), c, &mut rng(s));
        let ab = a.mul(f, &b);
        prop_assert!(linalg::rank(f, &ab) <= linalg::rank(f, &a).min(linalg::rank(f, &b)));
    }

    #[test]
    fn inverse_exists_exactly_at_full_rank(f in field(), n in 0usize..5, s: u64) {
        let m = random_matrix(f, n, n, &mut rng(s));
        match linalg::inverse(f, &m) {
            Some(inv) => {
                prop_assert_eq!(linalg::rank(f, &m), n);
                prop_assert_eq!(m.mul(f, &inv), Matrix::identity(n));
                prop_assert_eq!(inv.mul(f, &m), Matrix::identity(n));
            }
            None => prop_assert!(linalg::rank(f, &m) < n),
        }
    }

    /// The solution set equals the brute-force preimage of `b`.
    #[test]
    fn solve_affine_matches_enumeration(f in prop_oneof![Just(2u32), Just(3)].prop_map(|p| PrimeField::new(p).unwrap()),
                                        r in 0usize..4, c in 0usize..4, s: u64, hit: bool) {
        let mut g = rng(s);
        let m = random_matrix(f, r, c, &mut g);
        // Half the time pick `b` in the image so solvable systems occur.
        let b = if hit { m.mul_vec(f, &random_matrix(f, c, 1, &mut g).column(0)) } else { random_matrix(f, r, 1, &mut g).column(0) };
        let brute: HashSet<Vec<u32>> = all_vectors(f, c).filter(|x| m.mul_vec(f, x) == b).collect();
        match linalg::solve_affine(f, &m, &b) {
            None => prop_assert!(brute.is_empty()),
            Some(space) => {
                let pts: HashSet<Vec<u32>> = space.points(f).collect();
                prop_assert_eq!(pts.len() as u64, space.size(f));
                prop_assert_eq!(pts, brute);
            }
        }
    }

    #[test]
    fn exactness_matches_enumeration(f in prop_oneof![Just(2u32), Just(3)].prop_map(|p| PrimeField::new(p).unwrap()),
                                     u in 0usize..4, v in 0usize..4, w in 0usize..4, s: u64) {
        let mut g = rng(s);
        let a = random_matrix(f, v, u, &mut g);
        let b = random_matrix(f, w, v, &mut g);
        let image: HashSet<Vec<u32>> = all_vectors(f, u).map(|x| a.mul_vec(f, &x)).collect();
        let kernel: HashSet<Vec<u32>> = all_vectors(f, v).filter(|x| b.mul_vec(f, x).iter().all(|&e| e == 0)).collect();
        prop_assert_eq!(linalg::exact_pair(f, &a, &b), image == kernel);
        let seq = LinearSeq::new(vec![u, v, w], vec![a, b]).unwrap();
        prop_assert_eq!(seq.is_exact_at(f, 1).unwrap(), image == kernel);
    }

    #[test]
    fn column_space_containment((f, a) in matrix(4), c in 0usize..3, s: u64) {
        let x = random_matrix(f, a.cols(), c, &mut rng(s));
        prop_assert!(linalg::column_space_contains(f, &a, &a.mul(f, &x)));
    }
}
