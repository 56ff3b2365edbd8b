use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symrep::ring::Ring;
use symrep::universe::{
    characteristic_series, check_connectedness_props, check_universe_axioms, full_report,
    AbelianHom, FiniteAbelian, Status, Subgroup, UniverseError, UniverseInstance,
};

const NAMES: [&str; 19] = [
    "universe.inverses",
    "universe.products",
    "universe.sections",
    "universe.kernels_images",
    "universe.module_structure",
    "universe.meet_join",
    "universe.extensions",
    "universe.permutation_modules",
    "universe.enveloping_algebras",
    "dimension.additivity",
    "dimension.zero",
    "dimension.monotone",
    "dimension.products",
    "dimension.sums",
    "characteristic.series",
    "divisibility.omega_p",
    "connectedness.images",
    "connectedness.products",
    "connectedness.sums",
];

#[test]
fn reports_cover_every_property() {
    for u in [
        UniverseInstance::field_spaces(&Ring::gf(2, 2).unwrap()).unwrap(),
        UniverseInstance::finite_abelian(),
    ] {
        let r = full_report(&u, 10).unwrap();
        for name in NAMES {
            assert!(r.get(name).is_some(), "{} lacks {name}", r.instance);
        }
        assert!(r.no_failures(), "{r}");
    }
    let fa = full_report(&UniverseInstance::finite_abelian(), 5).unwrap();
    assert!(matches!(
        fa.get("connectedness.sums"),
        Some(Status::Vacuous(_))
    ));
    assert!(matches!(
        fa.get("dimension.additivity"),
        Some(Status::Vacuous(_))
    ));
    assert_eq!(fa.get("universe.products"), Some(&Status::Pass));
}

#[test]
fn seeded_runs_repeat() {
    let u = UniverseInstance::finite_abelian().with_seed(11);
    assert_eq!(
        check_universe_axioms(&u, 8).unwrap(),
        check_universe_axioms(&u, 8).unwrap()
    );
    let v = UniverseInstance::field_spaces(&Ring::rational())
        .unwrap()
        .with_seed(3);
    assert_eq!(
        check_connectedness_props(&v, 8).unwrap(),
        check_connectedness_props(&v, 8).unwrap()
    );
}

#[test]
fn argument_errors() {
    assert_eq!(
        UniverseInstance::field_spaces(&Ring::zmod(6).unwrap()),
        Err(UniverseError::NotAField("zmod:6".into()))
    );
    assert_eq!(
        check_universe_axioms(&UniverseInstance::finite_abelian(), 0),
        Err(UniverseError::ZeroTrials)
    );
    assert!(FiniteAbelian::new(vec![3, 1]).is_err());
}

#[test]
fn characteristic_series_lengths() {
    for (orders, len) in [
        (vec![8], 3),
        (vec![12], 3),
        (vec![4, 2], 2),
        (vec![6, 10], 3),
        (vec![9, 3, 5], 3),
    ] {
        let v = FiniteAbelian::new(orders.clone()).unwrap();
        let s = characteristic_series(&v);
        assert_eq!(s.len(), len, "{orders:?}");
        assert!(s.len() <= v.composition_length());
        assert!(s.factors_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_image_orders(a in prop::collection::vec(2u64..10, 1..3), b in prop::collection::vec(2u64..10, 1..3), seed in any::<u64>()) {
        let (a, b) = (FiniteAbelian::new(a).unwrap(), FiniteAbelian::new(b).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = AbelianHom::random(&a, &b, &mut rng);
        prop_assert_eq!(f.kernel().order() * f.image().order(), a.order());
        let w = Subgroup::random(&a, &mut rng);
        prop_assert!(w.image_under(&f).is_subgroup_of(&f.image()));
        prop_assert_eq!(Subgroup::full(&a).coset_count(&w) * w.order(), a.order());
    }
}
