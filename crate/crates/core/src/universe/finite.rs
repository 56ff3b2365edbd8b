//! FiniteAbelian: finite abelian groups with dimension identically 0.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::permgroup::Perm;

use super::abelian::{characteristic_series, factorize, random_automorphism, table_is_additive};
use super::{
    ensure, run_trials, run_vacuous, AbelianHom, Element, FiniteAbelian, PropertyReport, Subgroup,
    UniverseInstance,
};

const ORDERS: [u64; 8] = [2, 3, 4, 5, 6, 8, 9, 12];
const DIM_ZERO: &str = "dim is identically 0; order analogue verified";

/// A random group of order at most `max`.
fn random_group(rng: &mut ChaCha8Rng, max: u64) -> FiniteAbelian {
    loop {
        let r = rng.gen_range(1..=3);
        let orders: Vec<u64> = (0..r)
            .map(|_| *ORDERS.choose(rng).expect("nonempty"))
            .collect();
        if orders.iter().product::<u64>() <= max {
            return FiniteAbelian::new(orders).expect("orders >= 2");
        }
    }
}

/// `P_σ` on `V^n`, block i sent to block σ(i).
fn perm_hom(v: &FiniteAbelian, g: &Perm) -> AbelianHom {
    let n = g.degree();
    let k = v.rank();
    let vn = v.power(n);
    let images = (0..n * k)
        .map(|idx| vn.unit((g.apply(idx / k + 1) - 1) * k + idx % k))
        .collect();
    AbelianHom::new(&vn, &vn, images).expect("permutation of coordinates")
}

fn sample_pairs<'a>(
    els: &'a [Element],
    rng: &mut ChaCha8Rng,
    k: usize,
) -> Vec<(&'a Element, &'a Element)> {
    (0..k)
        .map(|_| {
            (
                els.choose(rng).expect("nonempty"),
                els.choose(rng).expect("nonempty"),
            )
        })
        .collect()
}

pub(super) fn universe_axioms(u: &UniverseInstance, trials: usize, report: &mut PropertyReport) {
    let mut rng = u.rng(3);
    report.push(
        "universe.inverses",
        run_trials(trials, &mut rng, |rng| {
            let v = random_group(rng, 72);
            let f = random_automorphism(&v, rng);
            let g = f.inverse().ok_or("automorphism has no inverse")?;
            let id = AbelianHom::identity(&v);
            ensure(f.then(&g) == id && g.then(&f) == id, || {
                "inverse is not two-sided".into()
            })
        }),
    );
    report.push(
        "universe.products",
        run_trials(trials, &mut rng, |rng| {
            let (a, b, c, d) = (
                random_group(rng, 24),
                random_group(rng, 24),
                random_group(rng, 24),
                random_group(rng, 24),
            );
            let f1 = AbelianHom::random(&a, &c, rng);
            let f2 = AbelianHom::random(&b, &d, rng);
            let p = f1.product(&f2);
            let pi = |x: &FiniteAbelian, y: &FiniteAbelian, first: bool| {
                let xy = x.product(y);
                let images = (0..xy.rank())
                    .map(|j| match (first, j < x.rank()) {
                        (true, true) => x.unit(j),
                        (true, false) => x.zero(),
                        (false, true) => y.zero(),
                        (false, false) => y.unit(j - x.rank()),
                    })
                    .collect();
                AbelianHom::new(&xy, if first { x } else { y }, images).expect("projection")
            };
            let ok1 = p.then(&pi(&c, &d, true)) == pi(&a, &b, true).then(&f1);
            let ok2 = p.then(&pi(&c, &d, false)) == pi(&a, &b, false).then(&f2);
            let a2 = a.power(2);
            let units: Vec<Element> = (0..a.rank())
                .map(|j| a.unit(j).iter().chain(&a.unit(j)).copied().collect())
                .collect();
            let delta = AbelianHom::new(&a, &a2, units).map_err(|e| e.to_string())?;
            let ok3 = delta.then(&pi(&a, &a, true)) == AbelianHom::identity(&a);
            ensure(ok1 && ok2 && ok3, || {
                "projections or diagonal are not compatible with f1 x f2".into()
            })
        }),
    );
    report.push(
        "universe.sections",
        run_trials(trials, &mut rng, |rng| {
            let v = random_group(rng, 72);
            let w = Subgroup::random(&v, rng);
            let full = Subgroup::full(&v);
            ensure(
                w.is_closed() && w.order() * full.coset_count(&w) == v.order(),
                || "V/W has the wrong order".into(),
            )
        }),
    );
    report.push(
        "universe.kernels_images",
        run_trials(trials, &mut rng, |rng| {
            let (v, w) = (random_group(rng, 72), random_group(rng, 72));
            let f = AbelianHom::random(&v, &w, rng);
            let (ker, im) = (f.kernel(), f.image());
            ensure(ker.is_closed() && im.is_closed(), || {
                "kernel or image is not a subgroup".into()
            })?;
            ensure(ker.elements().all(|x| f.apply(x) == w.zero()), || {
                "f does not vanish on its kernel".into()
            })?;
            let kels: Vec<Element> = ker.elements().cloned().collect();
            let w1 = Subgroup::generated(&v, &[kels.choose(rng).expect("0 in kernel").clone()]);
            let x = v.random_element(rng);
            ensure(
                w1.elements().all(|y| f.apply(&v.add(&x, y)) == f.apply(&x)),
                || "f is not constant on W1-cosets".into(),
            )?;
            let w2 = im.sum(&Subgroup::random(&w, rng));
            ensure(im.is_subgroup_of(&w2), || {
                "corestriction target misses im f".into()
            })
        }),
    );
    report.push(
        "universe.module_structure",
        run_trials(trials, &mut rng, |rng| {
            let v = random_group(rng, 72);
            let els = v.elements();
            let n = rng.gen_range(-5i64..=5);
            let mu = AbelianHom::scalar(&v, n);
            for (x, y) in sample_pairs(&els, rng, 32) {
                let (x2, y2) = sample_pairs(&els, rng, 1)[0];
                // σ:(x, y) ↦ x + y on V × V, additive in the pair
                let lhs = v.add(&v.add(x, x2), &v.add(y, y2));
                let rhs = v.add(&v.add(x, y), &v.add(x2, y2));
                ensure(lhs == rhs, || "sum map is not additive".into())?;
                ensure(mu.apply(x) == v.scale(x, n), || {
                    "μ_n disagrees with repeated addition".into()
                })?;
            }
            Ok(())
        }),
    );
    report.push(
        "universe.meet_join",
        run_trials(trials, &mut rng, |rng| {
            let v = random_group(rng, 72);
            let (a, b) = (Subgroup::random(&v, rng), Subgroup::random(&v, rng));
            let (meet, join) = (a.intersect(&b), a.sum(&b));
            let ok = meet.is_closed()
                && join.is_closed()
                && meet.is_subgroup_of(&a)
                && meet.is_subgroup_of(&b)
                && a.is_subgroup_of(&join)
                && b.is_subgroup_of(&join);
            ensure(ok, || {
                "meet or join is not a subgroup in the expected position".into()
            })
        }),
    );
    report.push(
        "universe.extensions",
        run_trials(trials, &mut rng, |rng| {
            // half the trials on Z/4 ⊕ Z/2
            let v = if rng.gen_bool(0.5) {
                FiniteAbelian::new(vec![4, 2]).expect("valid")
            } else {
                random_group(rng, 36)
            };
            let w = random_group(rng, 36);
            let v1 = Subgroup::random(&v, rng);
            let mut v2 = Subgroup::random(&v, rng);
            let full = Subgroup::full(&v);
            let mut j = 0;
            while v1.sum(&v2) != full {
                v2 = v2.sum(&Subgroup::generated(&v, &[v.unit(j)]));
                j += 1;
            }
            let x = v1.intersect(&v2);
            let g = AbelianHom::random(&v, &w, rng);
            let h = AbelianHom::random(&v, &w, rng);
            let h = if x.elements().all(|e| h.apply(e) == w.zero()) {
                h
            } else {
                AbelianHom::random(&v, &w, rng).then(&AbelianHom::scalar(&w, 0))
            };
            let f2map = g.add(&h);
            // f(x + y) = f1(x) + f2(y), i.e. σ ∘ (f1 × f2) on V1 × V2 modulo the antidiagonal
            let mut table: HashMap<Element, Element> = HashMap::new();
            for a in v1.elements() {
                for b in v2.elements() {
                    let val = w.add(&g.apply(a), &f2map.apply(b));
                    if let Some(old) = table.insert(v.add(a, b), val.clone()) {
                        ensure(old == val, || "f1 - f2 does not vanish on V1 ∩ V2".into())?;
                    }
                }
            }
            ensure(table.len() as u64 == v.order(), || "V1 + V2 != V".into())?;
            let f = |e: &[u64]| table[e].clone();
            let restricts = v1.elements().all(|a| f(a) == g.apply(a))
                && v2.elements().all(|b| f(b) == f2map.apply(b));
            let els = v.elements();
            let additive = sample_pairs(&els, rng, 32)
                .into_iter()
                .all(|(a, b)| f(&v.add(a, b)) == w.add(&f(a), &f(b)));
            ensure(restricts && additive, || {
                "extension is not a homomorphism extending f1 and f2".into()
            })
        }),
    );
    report.push(
        "universe.permutation_modules",
        run_trials(trials, &mut rng, |rng| {
            let v = random_group(rng, 6);
            let n = rng.gen_range(3..=4);
            let (g, h) = (Perm::random(n, rng), Perm::random(n, rng));
            let (pg, ph) = (perm_hom(&v, &g), perm_hom(&v, &h));
            let compat = ph.then(&pg) == perm_hom(&v, &g.compose(&h));
            let inv = pg.then(&perm_hom(&v, &g.inverse())) == AbelianHom::identity(&v.power(n));
            ensure(compat && inv, || {
                format!("action of {g} on V^{n} is not compatible")
            })
        }),
    );
    report.push(
        "universe.enveloping_algebras",
        run_trials(trials, &mut rng, |rng| {
            let v = random_group(rng, 6);
            let n = rng.gen_range(3..=4);
            let vn = v.power(n);
            let terms: Vec<(i64, Perm)> = (0..rng.gen_range(1..=4))
                .map(|_| (rng.gen_range(-4..=4), Perm::random(n, rng)))
                .collect();
            let zero = AbelianHom::scalar(&vn, 0);
            let e = terms.iter().fold(zero, |acc, (c, g)| {
                acc.add(&perm_hom(&v, g).then(&AbelianHom::scalar(&vn, *c)))
            });
            for _ in 0..8 {
                let x = vn.random_element(rng);
                let direct = terms.iter().fold(vn.zero(), |acc, (c, g)| {
                    vn.add(&acc, &vn.scale(&perm_hom(&v, g).apply(&x), *c))
                });
                ensure(e.apply(&x) == direct, || {
                    "Σ n_i g_i is not the sum of its terms".into()
                })?;
            }
            ensure(
                AbelianHom::new(&vn, &vn, e.images().to_vec()).is_ok(),
                || "Σ n_i g_i is not a homomorphism".into(),
            )
        }),
    );
    report.push(
        "dimension.additivity",
        run_vacuous(trials, &mut rng, DIM_ZERO, |rng| {
            let (v, w) = (random_group(rng, 72), random_group(rng, 72));
            let f = AbelianHom::random(&v, &w, rng);
            ensure(v.order() == f.kernel().order() * f.image().order(), || {
                "|V| != |ker f| |im f|".into()
            })
        }),
    );
    report.push(
        "dimension.zero",
        run_vacuous(trials, &mut rng, DIM_ZERO, |rng| {
            let v = random_group(rng, 72);
            ensure(
                Subgroup::zero(&v).order() == 1 && u.group_dim(&Subgroup::zero(&v)) == 0,
                || "|{0}| != 1".into(),
            )
        }),
    );
    report.push(
        "dimension.monotone",
        run_vacuous(trials, &mut rng, DIM_ZERO, |rng| {
            let v = random_group(rng, 72);
            let w = Subgroup::random(&v, rng);
            ensure(v.order().is_multiple_of(w.order()), || {
                "|W| does not divide |V|".into()
            })
        }),
    );
    report.push(
        "dimension.products",
        run_vacuous(trials, &mut rng, DIM_ZERO, |rng| {
            let (a, b) = (random_group(rng, 12), random_group(rng, 12));
            let (w1, w2) = (Subgroup::random(&a, rng), Subgroup::random(&b, rng));
            let ab = a.product(&b);
            let gens: Vec<Element> = w1
                .generators()
                .iter()
                .map(|x| x.iter().chain(&b.zero()).copied().collect())
                .chain(
                    w2.generators()
                        .iter()
                        .map(|y| a.zero().iter().chain(y).copied().collect()),
                )
                .collect();
            let prod = Subgroup::generated(&ab, &gens);
            ensure(prod.order() == w1.order() * w2.order(), || {
                "|W1 x W2| != |W1| |W2|".into()
            })
        }),
    );
    report.push(
        "dimension.sums",
        run_vacuous(trials, &mut rng, DIM_ZERO, |rng| {
            let v = random_group(rng, 72);
            let (a, b) = (Subgroup::random(&v, rng), Subgroup::random(&v, rng));
            ensure(
                a.sum(&b).order() * a.intersect(&b).order() == a.order() * b.order(),
                || "|A + B| |A ∩ B| != |A| |B|".into(),
            )
        }),
    );
    report.push(
        "characteristic.series",
        run_trials(trials, &mut rng, |rng| {
            let v = random_group(rng, 72);
            let series = characteristic_series(&v);
            let expected: usize = factorize(v.exponent())
                .iter()
                .map(|&(_, e)| e as usize)
                .sum();
            ensure(series.factors_ok(), || {
                "a factor is trivial or not of prime exponent".into()
            })?;
            ensure(
                series.len() == expected && series.len() <= v.composition_length(),
                || "series has the wrong length".into(),
            )?;
            for _ in 0..3 {
                let f = random_automorphism(&v, rng);
                ensure(series.invariant_under(&f), || {
                    "a term is not characteristic".into()
                })?;
            }
            Ok(())
        }),
    );
    report.push(
        "divisibility.omega_p",
        run_vacuous(
            trials,
            &mut rng,
            "dim is identically 0, so every Ω_p(V) has dimension 0; finite analogue verified",
            |rng| {
                let v = random_group(rng, 72);
                for p in [2u64, 3, 5, 7] {
                    let mu = AbelianHom::scalar(&v, p as i64);
                    let onto = mu.image().order() == v.order();
                    ensure(onto == (mu.kernel().order() == 1), || {
                        format!("p-divisibility disagrees with Ω_{p} = 0")
                    })?;
                    let w = Subgroup::random(&v, rng);
                    let omega_w = w
                        .elements()
                        .filter(|x| v.scale(x, p as i64) == v.zero())
                        .count() as u64;
                    ensure(omega_w == w.intersect(&mu.kernel()).order(), || {
                        format!("Ω_{p}(W) != W ∩ Ω_{p}(V)")
                    })?;
                }
                ensure(table_is_additive(&v, &v, |x| v.scale(x, 2)), || {
                    "μ_2 is not additive".into()
                })
            },
        ),
    );
}
