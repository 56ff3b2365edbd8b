//! FieldSpaces: subspaces of `F^d` with linear dimension.

use std::fmt::Display;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::gmodule::GModule;
use crate::linalg::{image, inverse, is_invertible, kernel, rank, solve, Matrix, Subspace};
use crate::permgroup::{canonical_generators, GroupKind, Perm};
use crate::ring::{Elem, Ring};

use super::{ensure, run_trials, PropertyReport, UniverseInstance};

fn s<T, E: Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn random_matrix(ring: &Ring, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::from_fn(ring, rows, cols, |_, _| ring.random_elem(rng))
}

/// A random map whose rank is often below the maximum.
fn random_map(ring: &Ring, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let r = rng.gen_range(0..=rows.min(cols));
    &random_matrix(ring, rows, r, rng) * &random_matrix(ring, r, cols, rng)
}

fn random_subspace(ring: &Ring, d: usize, rng: &mut ChaCha8Rng) -> Result<Subspace, String> {
    let k = rng.gen_range(0..=d);
    s(Subspace::from_matrix_rows(&random_matrix(ring, k, d, rng)))
}

fn random_vector(ring: &Ring, d: usize, rng: &mut ChaCha8Rng) -> Vec<Elem> {
    (0..d).map(|_| ring.random_elem(rng)).collect()
}

fn dim(rng: &mut ChaCha8Rng) -> usize {
    rng.gen_range(1..=6)
}

fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let ring = a.ring();
    Matrix::from_fn(
        ring,
        a.rows() + b.rows(),
        a.cols() + b.cols(),
        |i, j| match (i < a.rows(), j < a.cols()) {
            (true, true) => a.get(i, j).clone(),
            (false, false) => b.get(i - a.rows(), j - a.cols()).clone(),
            _ => ring.zero(),
        },
    )
}

/// Projection of `F^(a+b)` onto the first (`first = true`) or second factor.
fn projection(ring: &Ring, a: usize, b: usize, first: bool) -> Matrix {
    let (rows, off) = if first { (a, 0) } else { (b, a) };
    Matrix::from_fn(ring, rows, a + b, |i, j| {
        if j == i + off {
            ring.one()
        } else {
            ring.zero()
        }
    })
}

/// `P_σ ⊗ I_k` on `perm(n, F^k) = (F^k)^n`, block i sent to block σ(i).
fn perm_block(ring: &Ring, g: &Perm, k: usize) -> Matrix {
    let n = g.degree();
    Matrix::from_fn(ring, n * k, n * k, |i, j| {
        if i % k == j % k && g.apply(j / k + 1) == i / k + 1 {
            ring.one()
        } else {
            ring.zero()
        }
    })
}

fn scalar_vec(ring: &Ring, c: &Elem, v: &[Elem]) -> Vec<Elem> {
    v.iter().map(|x| ring.mul(c, x)).collect()
}

fn add_vec(ring: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(x, y)| ring.add(x, y)).collect()
}

fn small_primes() -> [u64; 4] {
    [2, 3, 5, 7]
}

pub(super) fn universe_axioms(
    u: &UniverseInstance,
    ring: &Ring,
    trials: usize,
    report: &mut PropertyReport,
) {
    let r = ring;
    let mut rng = u.rng(1);
    report.push(
        "universe.inverses",
        run_trials(trials, &mut rng, |rng| {
            let d = dim(rng);
            let a = loop {
                let a = random_matrix(r, d, d, rng);
                if is_invertible(&a) {
                    break a;
                }
            };
            let b = s(inverse(&a))?;
            ensure((&a * &b).is_identity() && (&b * &a).is_identity(), || {
                "inverse is not two-sided".into()
            })
        }),
    );
    report.push(
        "universe.products",
        run_trials(trials, &mut rng, |rng| {
            let (a1, a2, b1, b2) = (dim(rng), dim(rng), dim(rng), dim(rng));
            let f1 = random_map(r, a2, a1, rng);
            let f2 = random_map(r, b2, b1, rng);
            let p = block_diag(&f1, &f2);
            let ok1 = &projection(r, a2, b2, true) * &p == &f1 * &projection(r, a1, b1, true);
            let ok2 = &projection(r, a2, b2, false) * &p == &f2 * &projection(r, a1, b1, false);
            let k = rng.gen_range(1..=3);
            let id = Matrix::identity(r, a1);
            let delta = (1..k).fold(id.clone(), |m, _| m.vstack(&id));
            let ok3 = (0..k).all(|i| {
                let pi = Matrix::from_fn(r, a1, a1 * k, |x, y| {
                    if y == i * a1 + x {
                        r.one()
                    } else {
                        r.zero()
                    }
                });
                (&pi * &delta).is_identity()
            });
            ensure(ok1 && ok2 && ok3, || {
                "projections or diagonal are not compatible with f1 x f2".into()
            })
        }),
    );
    report.push(
        "universe.sections",
        run_trials(trials, &mut rng, |rng| {
            let d = dim(rng);
            let w = random_subspace(r, d, rng)?;
            let q = w.quotient_map();
            let ker = s(kernel(&q))?;
            let onto = s(rank(&q))? == d - w.dim();
            let incl = (&q * &w.basis_columns()).is_zero();
            ensure(ker == w && onto && incl, || {
                "quotient map has the wrong kernel or image".into()
            })
        }),
    );
    report.push(
        "universe.kernels_images",
        run_trials(trials, &mut rng, |rng| {
            let (d1, d2) = (dim(rng), dim(rng));
            let f = random_map(r, d2, d1, rng);
            let ker = s(kernel(&f))?;
            let im = s(image(&f))?;
            ensure((&f * &ker.basis_columns()).is_zero(), || {
                "f does not vanish on its kernel".into()
            })?;
            // induced map on V / W1 for W1 <= ker f
            let k = rng.gen_range(0..=ker.dim());
            let w1 = s(Subspace::from_matrix_rows(
                &(&random_matrix(r, k, ker.dim(), rng) * ker.basis()),
            ))?;
            let fbar = &f * &w1.quotient_section();
            ensure(&fbar * &w1.quotient_map() == f, || {
                "induced map on V/W1 does not factor f".into()
            })?;
            // corestriction to W2 >= im f
            let w2 = s(im.sum(&random_subspace(r, d2, rng)?))?;
            let basis = w2.basis_columns();
            for j in 0..d1 {
                let c = f.col(j);
                ensure(w2.contains_vector(&c), || "im f is not inside W2".into())?;
                let coords = w2.coordinates(&c);
                ensure(basis.mul_vec(&coords) == c, || {
                    "corestriction does not recover f".into()
                })?;
            }
            Ok(())
        }),
    );
    report.push(
        "universe.module_structure",
        run_trials(trials, &mut rng, |rng| {
            let d = dim(rng);
            let id = Matrix::identity(r, d);
            let sigma = id.hstack(&id);
            let (x, y) = (random_vector(r, d, rng), random_vector(r, d, rng));
            let xy: Vec<Elem> = x.iter().chain(&y).cloned().collect();
            let n = rng.gen_range(-5i64..=5);
            let mu = Matrix::scalar_matrix(r, d, &r.from_i64(n));
            let ok = sigma.mul_vec(&xy) == add_vec(r, &x, &y)
                && mu.mul_vec(&x) == scalar_vec(r, &r.from_i64(n), &x);
            ensure(ok, || "sum or multiplication-by-n map misbehaves".into())
        }),
    );
    report.push(
        "universe.meet_join",
        run_trials(trials, &mut rng, |rng| {
            let d = dim(rng);
            let a = random_subspace(r, d, rng)?;
            let b = random_subspace(r, d, rng)?;
            let sum = s(a.sum(&b))?;
            let meet = s(a.intersect(&b))?;
            let ok = a.is_subspace_of(&sum)
                && b.is_subspace_of(&sum)
                && meet.is_subspace_of(&a)
                && meet.is_subspace_of(&b);
            let v = add_vec(
                r,
                &a.basis_columns().mul_vec(&random_vector(r, a.dim(), rng)),
                &b.basis_columns().mul_vec(&random_vector(r, b.dim(), rng)),
            );
            ensure(ok && sum.contains_vector(&v), || {
                "meet or join is not a subspace in the expected position".into()
            })
        }),
    );
    report.push(
        "universe.extensions",
        run_trials(trials, &mut rng, |rng| {
            let (d, e) = (dim(rng), dim(rng));
            let v1 = random_subspace(r, d, rng)?;
            let comp = Matrix::identity(r, d).select_rows(&v1.non_pivots());
            let k = rng.gen_range(0..=d);
            let v2 = s(Subspace::from_matrix_rows(
                &comp.vstack(&random_matrix(r, k, d, rng)),
            ))?;
            let x = s(v1.intersect(&v2))?;
            let g = random_map(r, e, d, rng);
            let h = &random_matrix(r, e, d - x.dim(), rng) * &x.quotient_map();
            let (b1, b2) = (v1.basis_columns(), v2.basis_columns());
            let f1 = &g * &b1;
            let f2 = &g.add(&h) * &b2;
            let lhs = b1.hstack(&b2);
            let rhs = f1.hstack(&f2);
            let Some(sol) = s(solve(&lhs.transpose(), &rhs.transpose()))? else {
                return Err("no common extension".into());
            };
            let f = sol.transpose();
            ensure(&f * &b1 == f1 && &f * &b2 == f2, || {
                "extension does not restrict correctly".into()
            })
        }),
    );
    report.push(
        "universe.permutation_modules",
        run_trials(trials, &mut rng, |rng| {
            let n = rng.gen_range(3..=5);
            let k = rng.gen_range(1..=3);
            let images = canonical_generators(GroupKind::Sym, n)
                .iter()
                .map(|g| perm_block(r, g, k))
                .collect();
            let m = s(GModule::new(GroupKind::Sym, n, r, images))?;
            let g = Perm::random(n, rng);
            ensure(s(m.act(&g))? == perm_block(r, &g, k), || {
                format!("action of {g} is not the block permutation")
            })
        }),
    );
    report.push(
        "universe.enveloping_algebras",
        run_trials(trials, &mut rng, |rng| {
            let n = rng.gen_range(3..=5);
            let k = rng.gen_range(1..=2);
            let d = n * k;
            let terms: Vec<(i64, Perm)> = (0..rng.gen_range(1..=4))
                .map(|_| (rng.gen_range(-4..=4), Perm::random(n, rng)))
                .collect();
            let e = terms.iter().fold(Matrix::zeros(r, d, d), |acc, (c, g)| {
                acc.add(&perm_block(r, g, k).scale(&r.from_i64(*c)))
            });
            let v = random_vector(r, d, rng);
            let direct = terms.iter().fold(vec![r.zero(); d], |acc, (c, g)| {
                add_vec(
                    r,
                    &acc,
                    &scalar_vec(r, &r.from_i64(*c), &perm_block(r, g, k).mul_vec(&v)),
                )
            });
            let additive = s(kernel(&e))?.dim() + s(rank(&e))? == d;
            ensure(e.mul_vec(&v) == direct && additive, || {
                "Σ n_i g_i is not a compatible endomorphism".into()
            })
        }),
    );
    report.push(
        "dimension.additivity",
        run_trials(trials, &mut rng, |rng| {
            let (d1, d2) = (dim(rng), dim(rng));
            let f = random_map(r, d2, d1, rng);
            let (k, i) = (s(kernel(&f))?.dim(), s(image(&f))?.dim());
            ensure(d1 == k + i, || {
                format!("dim V = {d1} but dim ker + dim im = {}", k + i)
            })
        }),
    );
    report.push(
        "dimension.zero",
        run_trials(trials, &mut rng, |rng| {
            let d = dim(rng);
            let z = Subspace::zero(r, d);
            ensure(
                z.dim() == 0 && s(kernel(&Matrix::identity(r, d)))?.dim() == 0,
                || "dim {0} != 0".into(),
            )
        }),
    );
    report.push(
        "dimension.monotone",
        run_trials(trials, &mut rng, |rng| {
            let d = dim(rng);
            let w = random_subspace(r, d, rng)?;
            ensure(
                w.dim() <= d && s(rank(&w.quotient_map()))? + w.dim() == d,
                || "dim W > dim V".into(),
            )
        }),
    );
    report.push(
        "dimension.products",
        run_trials(trials, &mut rng, |rng| {
            let (a, b) = (dim(rng), dim(rng));
            let v1 = random_subspace(r, a, rng)?;
            let v2 = random_subspace(r, b, rng)?;
            let prod = s(Subspace::from_columns(&block_diag(
                &v1.basis_columns(),
                &v2.basis_columns(),
            )))?;
            ensure(prod.dim() == v1.dim() + v2.dim(), || {
                "dim(V1 x V2) != dim V1 + dim V2".into()
            })
        }),
    );
    report.push(
        "dimension.sums",
        run_trials(trials, &mut rng, |rng| {
            let d = dim(rng);
            let a = random_subspace(r, d, rng)?;
            let b = random_subspace(r, d, rng)?;
            let lhs = s(a.sum(&b))?.dim() + s(a.intersect(&b))?.dim();
            ensure(lhs == a.dim() + b.dim(), || {
                "dim(V1 + V2) + dim(V1 ∩ V2) != dim V1 + dim V2".into()
            })
        }),
    );
    let p = r.char_value().unwrap_or(0);
    report.push(
        "characteristic.series",
        run_trials(trials, &mut rng, |rng| {
            // F^d: 0 < V is already a series with one factor of exponent p, or divisible over Q
            let d = dim(rng);
            let mu = |q: u64| Matrix::scalar_matrix(r, d, &r.from_i64(q as i64));
            if p == 0 {
                ensure(
                    small_primes().iter().all(|&q| is_invertible(&mu(q))),
                    || "Q^d is not divisible".into(),
                )
            } else {
                ensure(mu(p).is_zero() && d >= 1, || {
                    format!("F^d does not have exponent {p}")
                })
            }
        }),
    );
    report.push(
        "divisibility.omega_p",
        run_trials(trials, &mut rng, |rng| {
            let d = dim(rng);
            let w = random_subspace(r, d, rng)?;
            for q in small_primes() {
                let mu = Matrix::scalar_matrix(r, d, &r.from_i64(q as i64));
                let omega = s(kernel(&mu))?;
                let divisible = s(rank(&mu))? == d;
                ensure(divisible == (omega.dim() == 0), || {
                    format!("{q}-divisibility disagrees with Ω_{q}")
                })?;
                ensure((omega.dim() == 0) == (q != p), || {
                    format!("Ω_{q} has the wrong dimension")
                })?;
                let omega_w = s(w.intersect(&omega))?;
                let restricted = s(kernel(&(&mu * &w.basis_columns())))?.dim();
                ensure(restricted == omega_w.dim(), || {
                    format!("Ω_{q}(W) != W ∩ Ω_{q}(V)")
                })?;
            }
            Ok(())
        }),
    );
}

pub(super) fn connectedness(
    u: &UniverseInstance,
    ring: &Ring,
    trials: usize,
    report: &mut PropertyReport,
) {
    let r = ring;
    let mut rng = u.rng(2);
    // a proper subspace has strictly smaller dimension: the dc condition for vector spaces
    fn proper_is_smaller(r: &Ring, v: &Subspace, rng: &mut ChaCha8Rng) -> Result<bool, String> {
        if v.dim() == 0 {
            return Ok(true);
        }
        let k = rng.gen_range(0..v.dim());
        let w = s(Subspace::from_matrix_rows(
            &(&random_matrix(r, k, v.dim(), rng) * v.basis()),
        ))?;
        Ok(w.dim() < v.dim() && w.is_subspace_of(v))
    }
    report.push(
        "connectedness.images",
        run_trials(trials, &mut rng, |rng| {
            let (d1, d2) = (dim(rng), dim(rng));
            let f = random_map(r, d2, d1, rng);
            let im = s(image(&f))?;
            let ok = s(rank(&f))? == im.dim() && proper_is_smaller(r, &im, rng)?;
            ensure(ok, || {
                "image of a surjection lacks its predicted dimension".into()
            })
        }),
    );
    report.push(
        "connectedness.products",
        run_trials(trials, &mut rng, |rng| {
            let (a, b) = (dim(rng), dim(rng));
            let v1 = random_subspace(r, a, rng)?;
            let v2 = random_subspace(r, b, rng)?;
            let prod = s(Subspace::from_columns(&block_diag(
                &v1.basis_columns(),
                &v2.basis_columns(),
            )))?;
            let ok = prod.dim() == v1.dim() + v2.dim() && proper_is_smaller(r, &prod, rng)?;
            ensure(ok, || "dim(V1 x V2) != dim V1 + dim V2".into())
        }),
    );
    report.push(
        "connectedness.sums",
        run_trials(trials, &mut rng, |rng| {
            let d = dim(rng);
            let v1 = random_subspace(r, d, rng)?;
            let v2 = random_subspace(r, d, rng)?;
            let sum = s(v1.sum(&v2))?;
            let sigma = v1.basis_columns().hstack(&v2.basis_columns());
            let ok = s(rank(&sigma))? == sum.dim() && proper_is_smaller(r, &sum, rng)?;
            ensure(ok, || "sum map V1 x V2 -> V1 + V2 is not onto".into())
        }),
    );
}
