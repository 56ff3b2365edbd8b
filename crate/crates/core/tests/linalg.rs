use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symrep::linalg::gf2::BitMatrix;
use symrep::linalg::{inverse, is_invertible, kernel, rank, rref, solve, Matrix, Subspace};
use symrep::ring::{Elem, Ring};

fn rings() -> Vec<Ring> {
    vec![
        Ring::prime_field(2).unwrap(),
        Ring::prime_field(3).unwrap(),
        Ring::gf(2, 2).unwrap(),
        Ring::rational(),
    ]
}

fn random_matrix(ring: &Ring, rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Matrix::from_fn(ring, rows, cols, |_, _| ring.random_elem(&mut rng))
}

/// Size of the row space, by enumerating every combination of rows.
fn row_space_size(m: &Matrix) -> usize {
    let r = m.ring();
    let elems: Vec<Elem> = r.elements().unwrap().collect();
    let mut seen = BTreeSet::new();
    let mut coeffs = vec![0usize; m.rows()];
    loop {
        let mut v = vec![r.zero(); m.cols()];
        for (i, &c) in coeffs.iter().enumerate() {
            for (j, x) in v.iter_mut().enumerate() {
                *x = r.add(x, &r.mul(&elems[c], m.get(i, j)));
            }
        }
        seen.insert(v.iter().map(Elem::as_u64).collect::<Vec<_>>());
        let mut k = 0;
        while k < coeffs.len() {
            coeffs[k] += 1;
            if coeffs[k] < elems.len() {
                break;
            }
            coeffs[k] = 0;
            k += 1;
        }
        if k == coeffs.len() {
            return seen.len();
        }
    }
}

#[test]
fn rank_matches_brute_force_row_space() {
    for ring in [
        Ring::prime_field(2).unwrap(),
        Ring::prime_field(3).unwrap(),
        Ring::gf(2, 2).unwrap(),
    ] {
        let q = ring.order().unwrap() as usize;
        for seed in 0..40 {
            let m = random_matrix(
                &ring,
                1 + (seed as usize % 4),
                1 + (seed as usize % 5),
                seed,
            );
            let rk = rank(&m).unwrap();
            assert_eq!(q.pow(rk as u32), row_space_size(&m), "{ring} seed {seed}");
        }
    }
}

#[test]
fn bit_packed_rank_agrees() {
    let gf2 = Ring::prime_field(2).unwrap();
    for seed in 0..50 {
        let m = random_matrix(&gf2, 3 + seed as usize % 70, 2 + seed as usize % 90, seed);
        let mut b = BitMatrix::from_matrix(&m);
        assert_eq!(b.rref().len(), rank(&m).unwrap());
        let reduced = Subspace::from_matrix_rows(&b.to_matrix(&gf2)).unwrap();
        assert_eq!(reduced, Subspace::from_matrix_rows(&m).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(ri in 0usize..4, rows in 1usize..7, cols in 1usize..7, seed in any::<u64>()) {
        let ring = &rings()[ri];
        let m = random_matrix(ring, rows, cols, seed);
        let k = kernel(&m).unwrap();
        prop_assert_eq!(rank(&m).unwrap() + k.dim(), cols);
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(|x| ring.is_zero(x)));
        }
    }

    #[test]
    fn inverse_and_solve(ri in 0usize..4, n in 1usize..6, seed in any::<u64>()) {
        let ring = &rings()[ri];
        let a = random_matrix(ring, n, n, seed);
        let b = random_matrix(ring, n, 2, seed ^ 1);
        if is_invertible(&a) {
            let ai = inverse(&a).unwrap();
            prop_assert!((&a * &ai).is_identity());
            let x = solve(&a, &b).unwrap().unwrap();
            prop_assert_eq!(&a * &x, b);
        } else {
            prop_assert!(inverse(&a).is_err());
            prop_assert!(rank(&a).unwrap() < n);
        }
    }

    #[test]
    fn rref_is_idempotent(ri in 0usize..4, rows in 1usize..6, cols in 1usize..6, seed in any::<u64>()) {
        let ring = &rings()[ri];
        let m = random_matrix(ring, rows, cols, seed);
        let once = rref(&m).unwrap().matrix;
        prop_assert_eq!(rref(&once).unwrap().matrix, once.clone());
    }

    #[test]
    fn subspace_dimension_formula(ri in 0usize..4, d in 1usize..7, a in 0usize..5, b in 0usize..5, seed in any::<u64>()) {
        let ring = &rings()[ri];
        let u = Subspace::from_matrix_rows(&random_matrix(ring, a.min(d), d, seed)).unwrap();
        let w = Subspace::from_matrix_rows(&random_matrix(ring, b.min(d), d, seed ^ 7)).unwrap();
        let s = u.sum(&w).unwrap();
        let i = u.intersect(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&w));
        prop_assert!(u.is_subspace_of(&s) && w.is_subspace_of(&s));
        for v in u.basis_vectors() {
            let c = u.coordinates(&v);
            prop_assert_eq!(c.len(), u.dim());
        }
    }
}
