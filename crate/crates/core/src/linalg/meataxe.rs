//! Spinning, intertwiners, and irreducibility testing.
//!
//! Over finite fields the test is Holt-Rees style: take a random element `A` of the
//! enveloping algebra, an irreducible factor `p` of its characteristic polynomial,
//! spin a null vector of `p(A)` and a null vector of `p(A)^T` (for the dual). If either
//! spin is proper we have an invariant subspace; if both are full and
//! `nullity p(A) = deg p`, the module is irreducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ring::{Elem, Ring};

use super::echelon::{kernel, require_field};
use super::gf2::MaskGens;
use super::poly::{charpoly, isolated_irreducible_factors, small_irreducibles};
use super::{EchelonBuilder, LinalgError, Matrix, Subspace};

/// Outcome of an irreducibility test. `Unknown` only arises over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible(Subspace),
    Unknown(String),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }
}

/// Attempts before the finite-field test gives up with `RandomnessExhausted`.
pub const MEATAXE_ATTEMPTS: usize = 256;

fn check_gens(gens: &[Matrix]) -> Result<(Ring, usize), LinalgError> {
    let first = gens.first().ok_or(LinalgError::EmptyGenerators)?;
    let ring = first.ring().clone();
    let d = first.rows();
    for g in gens {
        if !g.is_square() || g.rows() != d {
            return Err(LinalgError::NotSquare(g.rows(), g.cols()));
        }
        if g.ring() != &ring {
            return Err(LinalgError::RingMismatch(
                ring.to_string(),
                g.ring().to_string(),
            ));
        }
    }
    Ok((ring, d))
}

/// Smallest subspace containing the seed vectors and invariant under every generator.
pub fn spin_vectors(
    gens: &[Matrix],
    ring: &Ring,
    d: usize,
    seeds: &[Vec<Elem>],
) -> Result<Subspace, LinalgError> {
    require_field(ring)?;
    if ring.is_gf2() && d <= 64 && !gens.is_empty() {
        let mg = MaskGens::new(gens)?;
        let mut acc = Subspace::zero(ring, d);
        for s in seeds {
            let mask = s
                .iter()
                .enumerate()
                .fold(0u64, |m, (i, e)| m | (e.as_u64() << i));
            if acc.contains_vector(s) {
                continue;
            }
            let (_, basis) = mg.spin_dim(mask);
            let rows = basis
                .iter()
                .map(|&m| (0..d).map(|i| Elem::Int((m >> i) & 1)).collect())
                .collect();
            acc = acc.sum(&Subspace::from_rows(ring, d, rows)?)?;
        }
        return Ok(acc);
    }
    let mut eb = EchelonBuilder::new(ring, d);
    let mut queue: Vec<Vec<Elem>> = Vec::new();
    for s in seeds {
        let mut v = s.clone();
        if let Some(row) = eb.insert_reduced(&mut v) {
            queue.push(row.to_vec());
        }
    }
    let mut next = 0;
    while next < queue.len() && eb.rank() < d {
        let v = queue[next].clone();
        next += 1;
        for g in gens {
            let mut w = g.mul_vec(&v);
            if let Some(row) = eb.insert_reduced(&mut w) {
                queue.push(row.to_vec());
            }
        }
    }
    eb.to_subspace()
}

/// [`spin_vectors`] on the basis of a subspace.
pub fn spin_subspace(gens: &[Matrix], seed: &Subspace) -> Result<Subspace, LinalgError> {
    spin_vectors(gens, seed.ring(), seed.ambient_dim(), &seed.basis_vectors())
}

/// Basis of `{X : X s_i = t_i X for all i}`, where `s_i` act on the source and `t_i` on the target.
pub fn intertwiner_basis(src: &[Matrix], dst: &[Matrix]) -> Result<Vec<Matrix>, LinalgError> {
    if src.len() != dst.len() {
        return Err(LinalgError::ShapeMismatch(format!(
            "{} vs {} generators",
            src.len(),
            dst.len()
        )));
    }
    let (ring, n) = check_gens(src)?;
    let (_, m) = check_gens(dst)?;
    require_field(&ring)?;
    let nvars = m * n;
    let mut eb = EchelonBuilder::new(&ring, nvars);
    // variable X[a][c] has index a*n + c
    for (s, t) in src.iter().zip(dst) {
        for a in 0..m {
            for b in 0..n {
                let mut row = vec![ring.zero(); nvars];
                for c in 0..n {
                    let v = s.get(c, b);
                    if !ring.is_zero(v) {
                        row[a * n + c] = ring.add(&row[a * n + c], v);
                    }
                }
                for r in 0..m {
                    let v = t.get(a, r);
                    if !ring.is_zero(v) {
                        row[r * n + b] = ring.sub(&row[r * n + b], v);
                    }
                }
                eb.insert(row);
            }
        }
        if eb.rank() == nvars {
            return Ok(Vec::new());
        }
    }
    let sys = Matrix::from_rows(&ring, nvars, eb.rows().to_vec())?;
    let ker = kernel(&sys)?;
    Ok(ker
        .basis_vectors()
        .into_iter()
        .map(|v| {
            Matrix::from_rows(&ring, n, v.chunks(n).map(|c| c.to_vec()).collect()).expect("shape")
        })
        .collect())
}

/// Dimension of the commutant `{X : X g = g X}`, computed generator by generator
/// and stopping as soon as only the scalars remain.
pub fn commutant_dimension(gens: &[Matrix]) -> Result<usize, LinalgError> {
    let (ring, d) = check_gens(gens)?;
    require_field(&ring)?;
    let nvars = d * d;
    let mut eb = EchelonBuilder::new(&ring, nvars);
    for g in gens {
        for a in 0..d {
            for b in 0..d {
                let mut row = vec![ring.zero(); nvars];
                for c in 0..d {
                    let v = g.get(c, b);
                    if !ring.is_zero(v) {
                        row[a * d + c] = ring.add(&row[a * d + c], v);
                    }
                    let v = g.get(a, c);
                    if !ring.is_zero(v) {
                        row[c * d + b] = ring.sub(&row[c * d + b], v);
                    }
                }
                eb.insert(row);
            }
        }
        if eb.rank() + 1 == nvars {
            return Ok(1);
        }
    }
    Ok(nvars - eb.rank())
}

fn verified_witness(gens: &[Matrix], w: Subspace) -> Result<Irreducibility, LinalgError> {
    // a witness is returned only after checking invariance under every generator
    if gens.iter().all(|g| w.is_invariant_under(g)) && !w.is_zero() && !w.is_full() {
        Ok(Irreducibility::Reducible(w))
    } else {
        Err(LinalgError::Internal(
            "invariant-subspace witness failed verification".into(),
        ))
    }
}

/// Meataxe over a finite field. Deterministic for a given `seed`.
pub fn meataxe_irreducible(gens: &[Matrix], seed: u64) -> Result<Irreducibility, LinalgError> {
    let (ring, d) = check_gens(gens)?;
    if !ring.is_finite_field() {
        return Err(LinalgError::NotFiniteField(ring.to_string()));
    }
    if d == 0 {
        return Err(LinalgError::DimensionZero);
    }
    if d == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    let transposed: Vec<Matrix> = gens.iter().map(|g| g.transpose()).collect();
    let factors = small_irreducibles(&ring, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<Matrix> = gens.to_vec();
    for _ in 0..MEATAXE_ATTEMPTS {
        let i = rng.gen_range(0..pool.len());
        let j = rng.gen_range(0..pool.len());
        let prod = &pool[i] * &pool[j];
        if pool.len() < 16 {
            pool.push(prod);
        } else {
            let k = rng.gen_range(gens.len()..pool.len());
            pool[k] = prod;
        }
        let mut a = Matrix::zeros(&ring, d, d);
        for m in &pool {
            if rng.gen_bool(0.5) {
                a = a.add(&m.scale(&ring.random_elem(&mut rng)));
            }
        }
        let c = charpoly(&a);
        for p in isolated_irreducible_factors(&ring, &c, &factors) {
            let pa = p.eval_matrix(&a);
            let null = kernel(&pa)?;
            let v = null.basis().row(0).to_vec();
            let s = spin_vectors(gens, &ring, d, &[v])?;
            if !s.is_full() {
                return verified_witness(gens, s);
            }
            let null_t = kernel(&pa.transpose())?;
            let w = null_t.basis().row(0).to_vec();
            let st = spin_vectors(&transposed, &ring, d, &[w])?;
            if !st.is_full() {
                return verified_witness(gens, st.annihilator()?);
            }
            if null.dim() == p.degree() {
                return Ok(Irreducibility::Irreducible);
            }
        }
    }
    Err(LinalgError::RandomnessExhausted(MEATAXE_ATTEMPTS))
}

/// Irreducibility over Q: commutant dimension 1 certifies (Maschke); otherwise spin the
/// standard basis and some random vectors, in the module and its dual.
pub fn irreducible_over_q(gens: &[Matrix], seed: u64) -> Result<Irreducibility, LinalgError> {
    let (ring, d) = check_gens(gens)?;
    if !ring.is_rational() {
        return Err(LinalgError::NotAField(format!("expected q, got {ring}")));
    }
    if d == 0 {
        return Err(LinalgError::DimensionZero);
    }
    if d == 1 || commutant_dimension(gens)? == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    let transposed: Vec<Matrix> = gens.iter().map(|g| g.transpose()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates: Vec<Vec<Elem>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { ring.one() } else { ring.zero() })
                .collect()
        })
        .collect();
    for _ in 0..16 {
        candidates.push((0..d).map(|_| ring.random_elem(&mut rng)).collect());
    }
    for v in &candidates {
        if v.iter().all(|e| ring.is_zero(e)) {
            continue;
        }
        let s = spin_vectors(gens, &ring, d, std::slice::from_ref(v))?;
        if !s.is_full() {
            return verified_witness(gens, s);
        }
        let st = spin_vectors(&transposed, &ring, d, std::slice::from_ref(v))?;
        if !st.is_full() {
            return verified_witness(gens, st.annihilator()?);
        }
    }
    Ok(Irreducibility::Unknown(format!(
        "commutant has dimension > 1 and {} spins found no submodule",
        candidates.len()
    )))
}

/// Dispatches to [`meataxe_irreducible`] or [`irreducible_over_q`].
pub fn irreducibility(gens: &[Matrix], seed: u64) -> Result<Irreducibility, LinalgError> {
    let (ring, _) = check_gens(gens)?;
    if ring.is_finite_field() {
        meataxe_irreducible(gens, seed)
    } else if ring.is_rational() {
        irreducible_over_q(gens, seed)
    } else {
        Err(LinalgError::NotAField(ring.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::gf2::exhaustive_spin_oracle;
    use proptest::prelude::*;

    fn perm_matrix(ring: &Ring, images: &[usize]) -> Matrix {
        // column j has a 1 in row images[j]
        let n = images.len();
        Matrix::from_fn(ring, n, n, |i, j| {
            if images[j] == i {
                ring.one()
            } else {
                ring.zero()
            }
        })
    }

    #[test]
    fn commutant_examples() {
        let q = Ring::rational();
        assert_eq!(commutant_dimension(&[Matrix::identity(&q, 2)]).unwrap(), 4);
        let swap = perm_matrix(&q, &[1, 0, 2]);
        let cyc = perm_matrix(&q, &[1, 2, 0]);
        assert_eq!(commutant_dimension(&[swap, cyc]).unwrap(), 2);
    }

    #[test]
    fn permutation_module_is_reducible() {
        let f3 = Ring::prime_field(3).unwrap();
        let gens = vec![
            perm_matrix(&f3, &[1, 0, 2, 3, 4]),
            perm_matrix(&f3, &[1, 2, 3, 4, 0]),
        ];
        match meataxe_irreducible(&gens, 0).unwrap() {
            Irreducibility::Reducible(w) => assert!(w.dim() == 1 || w.dim() == 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn one_dimensional_is_irreducible() {
        let f = Ring::prime_field(7).unwrap();
        let g = Matrix::from_i64(&f, &[vec![3]]);
        assert!(meataxe_irreducible(&[g], 0).unwrap().is_irreducible());
        let q = Ring::rational();
        assert!(matches!(
            meataxe_irreducible(&[Matrix::identity(&q, 2)], 0),
            Err(LinalgError::NotFiniteField(_))
        ));
    }

    #[test]
    fn irreducible_over_gf4() {
        // [[1,x],[0,1]] fixes only the line of e1, which the swap moves
        let f = Ring::gf(2, 2).unwrap();
        let x = f.parse_elem("x").unwrap();
        let a = Matrix::from_rows(&f, 2, vec![vec![f.one(), x], vec![f.zero(), f.one()]]).unwrap();
        let b = Matrix::from_i64(&f, &[vec![0, 1], vec![1, 0]]);
        assert!(meataxe_irreducible(&[a.clone(), b], 3)
            .unwrap()
            .is_irreducible());
        assert!(!meataxe_irreducible(&[a], 3).unwrap().is_irreducible());
    }

    #[test]
    fn intertwiners_of_negated_swap() {
        // swap and -swap are conjugate (eigenvalues 1, -1), so the space is 2-dimensional
        let q = Ring::rational();
        let swap = perm_matrix(&q, &[1, 0]);
        let basis = intertwiner_basis(std::slice::from_ref(&swap), &[swap.neg()]).unwrap();
        assert_eq!(basis.len(), 2);
        for x in basis {
            assert_eq!(&x * &swap, &swap.neg() * &x);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        // meataxe against the exhaustive spin oracle on small GF(2) modules
        #[test]
        fn meataxe_matches_oracle(d in 1usize..=8, ngens in 1usize..3, bits in proptest::collection::vec(any::<u64>(), 2), seed in 0u64..4) {
            let f2 = Ring::prime_field(2).unwrap();
            let gens: Vec<Matrix> = (0..ngens)
                .map(|g| Matrix::from_fn(&f2, d, d, |i, j| Elem::Int((bits[g] >> ((i * d + j) % 64)) & 1 ^ ((i == j) as u64 & (g as u64 & 1)))))
                .collect();
            let oracle = exhaustive_spin_oracle(&gens).unwrap();
            let verdict = meataxe_irreducible(&gens, seed).unwrap();
            match (oracle, verdict) {
                (None, Irreducibility::Irreducible) => {}
                (Some(_), Irreducibility::Reducible(w)) => {
                    prop_assert!(gens.iter().all(|g| w.is_invariant_under(g)));
                }
                (o, v) => prop_assert!(false, "oracle {:?} vs meataxe {:?}", o, v),
            }
        }
    }
}
