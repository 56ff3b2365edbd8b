use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symrep::gmodule::GModule;
use symrep::permgroup::{GeneratorSet, GroupKind, Perm};
use symrep::ring::Ring;
use symrep::standard::{build_perm, build_rstd, build_ustd, rstd_dimension, Flavor, StandardSpec};

fn sample() -> Vec<GModule> {
    let mut out = Vec::new();
    for p in [2, 3, 5] {
        let r = Ring::prime_field(p).unwrap();
        for n in [4, 5, 6, 7] {
            out.push(build_rstd(n, &r).unwrap());
            out.push(build_ustd(n, &r).unwrap().restrict_to_alt().unwrap());
        }
    }
    out.push(build_perm(5, &Ring::rational()).unwrap());
    out.push(build_rstd(6, &Ring::zmod(4).unwrap()).unwrap());
    out
}

/// Faithfulness by acting with every group element.
fn brute_force_kernel(m: &GModule) -> Vec<Perm> {
    GeneratorSet::new(m.group(), m.n())
        .elements()
        .into_iter()
        .filter(|g| !g.is_identity() && m.act(g).unwrap().is_identity())
        .collect()
}

#[test]
fn faithfulness_matches_brute_force() {
    for p in [2u64, 3, 5] {
        let r = Ring::prime_field(p).unwrap();
        for n in 3..=6 {
            for m in [
                build_rstd(n, &r).unwrap(),
                build_rstd(n, &r).unwrap().restrict_to_alt().unwrap(),
            ] {
                let f = m.faithfulness().unwrap();
                let kernel = brute_force_kernel(&m);
                assert_eq!(f.faithful, kernel.is_empty(), "n={n} p={p} {}", m.group());
                if let Some(w) = f.witness {
                    assert!(m.act(&w).unwrap().is_identity());
                    assert!(!w.is_identity());
                }
            }
        }
    }
}

#[test]
fn dimensions_follow_divisibility() {
    for n in 3..=12 {
        for p in [2u64, 3, 5, 7] {
            let m = build_rstd(n, &Ring::prime_field(p).unwrap()).unwrap();
            let expect = if (n as u64).is_multiple_of(p) {
                n - 2
            } else {
                n - 1
            };
            assert_eq!(m.dim(), expect);
            assert_eq!(rstd_dimension(n, p), expect);
        }
    }
}

#[test]
fn twists_compose() {
    let r = Ring::prime_field(3).unwrap();
    let m = build_rstd(6, &r).unwrap();
    assert_eq!(m.sign_twist().unwrap().sign_twist().unwrap(), m);
    assert_eq!(
        m.restrict_to_alt().unwrap(),
        m.sign_twist().unwrap().restrict_to_alt().unwrap()
    );
    let mut spec = StandardSpec::new(Flavor::Rstd, 6, &r);
    spec.outer_twist = true;
    let o = spec.build().unwrap();
    assert_ne!(o, m);
    assert!(o.is_faithful().unwrap());
    assert!(m.restrict_to_alt().unwrap().sign_twist().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn act_is_a_homomorphism(idx in 0usize..26, seed in any::<u64>()) {
        let ms = sample();
        let m = &ms[idx % ms.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pick = |rng: &mut ChaCha8Rng| loop {
            let g = Perm::random(m.n(), rng);
            if m.group() == GroupKind::Sym || g.is_even() {
                return g;
            }
        };
        let g = pick(&mut rng);
        let h = pick(&mut rng);
        let ag = m.act(&g).unwrap();
        let ah = m.act(&h).unwrap();
        // entries of row i only matter modulo the order of coordinate i
        let reduce = |mut a: symrep::linalg::Matrix| {
            if let Some(md) = m.moduli() {
                a.reduce_rows(md);
            }
            a
        };
        prop_assert_eq!(reduce(m.act(&g.compose(&h)).unwrap()), reduce(&ag * &ah));
        prop_assert!(reduce(&ag * &m.act(&g.inverse()).unwrap()).is_identity());
        prop_assert!(m.act(&Perm::identity(m.n())).unwrap().is_identity());
    }

    #[test]
    fn submodules_from_spinning_are_invariant(idx in 0usize..26, seed in any::<u64>()) {
        let ms = sample();
        let m = &ms[idx % ms.len()];
        if !m.ring().is_field() {
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v: Vec<_> = (0..m.dim()).map(|_| m.ring().random_elem(&mut rng)).collect();
        let w = m.spin_vector(&v).unwrap();
        prop_assert!(m.is_submodule(&w));
        prop_assert!(w.contains_vector(&v));
    }
}
