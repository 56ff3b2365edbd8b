//! Builders for perm, ustd and rstd, the Ω_n computation, and the exceptional small modules.

mod exceptional;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::gmodule::{GModule, GModuleError};
use crate::linalg::{self, smith_normal_form, IntMatrix, LinalgError, Matrix, Subspace};
use crate::permgroup::{canonical_generators, outer_automorphism_sym6, GroupKind, PermError};
use crate::ring::{Elem, Ring, RingKind};

pub use exceptional::{build_exceptional, mod2_reduction_has_kernel, ExceptionalTag};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StandardError {
    #[error("degree n = {0} is below 3")]
    DegreeTooSmall(usize),
    #[error("invalid module specification: {0}")]
    InvalidSpec(String),
    #[error("search failed: {0}")]
    SearchFailed(String),
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error(transparent)]
    GModule(#[from] GModuleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Perm,
    Ustd,
    Rstd,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Perm => "perm",
            Flavor::Ustd => "ustd",
            Flavor::Rstd => "rstd",
        })
    }
}

impl FromStr for Flavor {
    type Err = StandardError;
    fn from_str(s: &str) -> Result<Flavor, StandardError> {
        match s {
            "perm" => Ok(Flavor::Perm),
            "ustd" => Ok(Flavor::Ustd),
            "rstd" => Ok(Flavor::Rstd),
            _ => Err(StandardError::InvalidSpec(format!("unknown module `{s}`"))),
        }
    }
}

/// A standard module with optional twists; `group = Alt` restricts at the end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardSpec {
    pub flavor: Flavor,
    pub n: usize,
    pub ring: Ring,
    pub group: GroupKind,
    pub sign_twist: bool,
    pub outer_twist: bool,
}

impl StandardSpec {
    pub fn new(flavor: Flavor, n: usize, ring: &Ring) -> StandardSpec {
        StandardSpec {
            flavor,
            n,
            ring: ring.clone(),
            group: GroupKind::Sym,
            sign_twist: false,
            outer_twist: false,
        }
    }

    pub fn validate(&self) -> Result<(), StandardError> {
        if self.n < 3 {
            return Err(StandardError::DegreeTooSmall(self.n));
        }
        if self.outer_twist && self.n != 6 {
            return Err(StandardError::InvalidSpec(format!(
                "outer twist needs n = 6, got n = {}",
                self.n
            )));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<GModule, StandardError> {
        self.validate()?;
        let mut m = match self.flavor {
            Flavor::Perm => build_perm(self.n, &self.ring)?,
            Flavor::Ustd => build_ustd(self.n, &self.ring)?,
            Flavor::Rstd => build_rstd(self.n, &self.ring)?,
        };
        if self.sign_twist {
            m = m.sign_twist()?;
        }
        if self.outer_twist {
            m = outer_twist(&m)?;
        }
        if self.group == GroupKind::Alt {
            m = m.restrict_to_alt()?;
        }
        Ok(m)
    }
}

/// Composes a Sym(6)-module with the cached outer automorphism.
pub fn outer_twist(m: &GModule) -> Result<GModule, StandardError> {
    if m.group() != GroupKind::Sym || m.n() != 6 {
        return Err(StandardError::InvalidSpec(
            "outer twist needs a Sym(6)-module".into(),
        ));
    }
    let phi = outer_automorphism_sym6()?;
    Ok(m.compose_with(&phi.images)?)
}

fn check_n(n: usize) -> Result<(), StandardError> {
    if n < 3 {
        Err(StandardError::DegreeTooSmall(n))
    } else {
        Ok(())
    }
}

/// `perm(n, L) = L^n` with `σ e_i = e_σ(i)`.
pub fn build_perm(n: usize, ring: &Ring) -> Result<GModule, StandardError> {
    check_n(n)?;
    let images = canonical_generators(GroupKind::Sym, n)
        .iter()
        .map(|g| {
            Matrix::from_fn(ring, n, n, |i, j| {
                if g.apply(j + 1) == i + 1 {
                    ring.one()
                } else {
                    ring.zero()
                }
            })
        })
        .collect();
    Ok(GModule::new(GroupKind::Sym, n, ring, images)?)
}

/// Integer matrix of `(i i+1)` on ustd in the basis `f_j = e_j - e_n` (0-based i).
fn ustd_generator(n: usize, i: usize) -> Vec<Vec<i64>> {
    let d = n - 1;
    let mut m = vec![vec![0i64; d]; d];
    if i + 1 < d {
        for j in 0..d {
            let t = if j == i {
                i + 1
            } else if j == i + 1 {
                i
            } else {
                j
            };
            m[t][j] = 1;
        }
    } else {
        // (n-1 n): f_{n-1} -> -f_{n-1}, f_j -> f_j - f_{n-1}
        for j in 0..d {
            m[j][j] = if j == d - 1 { -1 } else { 1 };
            if j != d - 1 {
                m[d - 1][j] = -1;
            }
        }
    }
    m
}

/// `ustd(n, L)` in the basis `f_1, ..., f_{n-1}`.
pub fn build_ustd(n: usize, ring: &Ring) -> Result<GModule, StandardError> {
    check_n(n)?;
    let images = (0..n - 1)
        .map(|i| Matrix::from_i64(ring, &ustd_generator(n, i)))
        .collect();
    Ok(GModule::new(GroupKind::Sym, n, ring, images)?)
}

/// `c = f_1 + ... + f_{n-1}`.
pub fn center_vector(n: usize, ring: &Ring) -> Vec<Elem> {
    vec![ring.one(); n - 1]
}

/// `Z(ustd(n, L))` for a field L: the Sym(n)-fixed points.
pub fn ustd_center(n: usize, ring: &Ring) -> Result<Subspace, StandardError> {
    let u = build_ustd(n, ring)?;
    Ok(u.fixed_points(&u.generators())?)
}

/// `Ω_n(Z/kZ)` as a cyclic subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Omega {
    /// Least positive generator, 0 when trivial.
    pub generator: u64,
    pub order: u64,
}

impl Omega {
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

pub fn omega(ring: &Ring, n: usize) -> Result<Omega, StandardError> {
    let RingKind::ModularInt { k } = ring.kind() else {
        return Err(StandardError::InvalidSpec(format!(
            "omega needs Z/kZ, got {ring}"
        )));
    };
    let g = (n as u64).gcd(&k);
    Ok(Omega {
        generator: (k / g) % k,
        order: g,
    })
}

/// `rstd(n, L) = ustd(n, L) / Z(ustd(n, L))`.
///
/// Over a field the quotient coordinates are the non-pivot coordinates of the center.
/// Over Z/kZ the quotient of `(Z/k)^(n-1)` by `⟨m c⟩`, `m = k / gcd(n, k)`, is put in
/// Smith form; coordinates of order 1 are dropped and the rest carry their orders.
pub fn build_rstd(n: usize, ring: &Ring) -> Result<GModule, StandardError> {
    check_n(n)?;
    let u = build_ustd(n, ring)?;
    if ring.is_field() {
        let z = u.fixed_points(&u.generators())?;
        let q = u.quotient(&z)?;
        q.verify()?;
        return Ok(q);
    }
    let RingKind::ModularInt { k } = ring.kind() else {
        return Err(StandardError::InvalidSpec(format!(
            "rstd over {ring} is not supported"
        )));
    };
    let om = omega(ring, n)?;
    if om.is_trivial() {
        return Ok(u);
    }
    let d = n - 1;
    let m = BigInt::from(k / om.order);
    // relation lattice: columns k e_i and m c
    let rel: IntMatrix = (0..d)
        .map(|i| {
            (0..=d)
                .map(|j| {
                    if j == d {
                        m.clone()
                    } else if i == j {
                        BigInt::from(k)
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let snf = smith_normal_form(&rel);
    let orders: Vec<u64> = snf
        .invariant_factors()
        .iter()
        .map(|x| x.to_u64().expect("divides k"))
        .collect();
    let keep: Vec<usize> = (0..d).filter(|&i| orders[i] != 1).collect();
    let moduli: Vec<u64> = keep.iter().map(|&i| orders[i]).collect();
    let uinv = int_inverse(&snf.u)?;
    let images = u
        .images()
        .iter()
        .map(|g| {
            let gi: IntMatrix = g
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|e| BigInt::from(e.as_u64())).collect())
                .collect();
            let conj = linalg::smith::int_mul(&linalg::smith::int_mul(&snf.u, &gi), &uinv);
            Matrix::from_fn(ring, keep.len(), keep.len(), |a, b| {
                ring.from_bigint(&conj[keep[a]][keep[b]])
            })
        })
        .collect();
    let moduli = if moduli.iter().all(|&x| x == k) {
        None
    } else {
        Some(moduli)
    };
    Ok(GModule::with_moduli(
        GroupKind::Sym,
        n,
        ring,
        images,
        moduli,
    )?)
}

/// Inverse of a unimodular integer matrix, via exact rational elimination.
fn int_inverse(a: &IntMatrix) -> Result<IntMatrix, StandardError> {
    let q = Ring::rational();
    let n = a.len();
    let m = Matrix::from_fn(&q, n, n, |i, j| {
        Elem::Rat(BigRational::from_integer(a[i][j].clone()))
    });
    let inv = linalg::inverse(&m)?;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match inv.get(i, j) {
                    Elem::Rat(r) if r.denom().is_one() => Ok(r.numer().clone()),
                    _ => Err(StandardError::CertificationFailed(
                        "transform is not unimodular".into(),
                    )),
                })
                .collect()
        })
        .collect()
}

/// Predicted dimension of rstd over a field of characteristic `p` (0 for Q).
pub fn rstd_dimension(n: usize, p: u64) -> usize {
    if p != 0 && (n as u64).is_multiple_of(p) {
        n - 2
    } else {
        n - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::Perm;

    fn gf(p: u64) -> Ring {
        Ring::prime_field(p).unwrap()
    }

    #[test]
    fn perm_module_examples() {
        let m = build_perm(5, &gf(3)).unwrap();
        assert_eq!(m.dim(), 5);
        let z = m.fixed_points(&m.generators()).unwrap();
        assert_eq!(z.dim(), 1);
        assert!(z.contains_vector(&vec![Elem::Int(1); 5]));
        assert_eq!(m.bracket(&m.generators()).unwrap().dim(), 4);
    }

    #[test]
    fn ustd_centers() {
        let u = build_ustd(5, &gf(5)).unwrap();
        let z = u.fixed_points(&u.generators()).unwrap();
        assert_eq!(z.dim(), 1);
        assert!(z.contains_vector(&center_vector(5, &gf(5))));
        assert_eq!(ustd_center(5, &gf(3)).unwrap().dim(), 0);
        let q = Ring::rational();
        let u3 = build_ustd(3, &q).unwrap();
        let a = u3.act(&Perm::transposition(3, 1, 3)).unwrap();
        assert_eq!(a.col(0), vec![q.from_i64(-1), q.zero()]);
        assert_eq!(ustd_center(6, &gf(2)).unwrap().dim(), 1);
    }

    #[test]
    fn rstd_dimensions() {
        for n in 3..=12 {
            for p in [2, 3, 5, 7] {
                assert_eq!(
                    build_rstd(n, &gf(p)).unwrap().dim(),
                    rstd_dimension(n, p),
                    "n={n} p={p}"
                );
            }
        }
        assert_eq!(
            build_rstd(7, &gf(5)).unwrap(),
            build_ustd(7, &gf(5)).unwrap()
        );
    }

    #[test]
    fn omega_examples() {
        let z4 = Ring::zmod(4).unwrap();
        assert_eq!(
            omega(&z4, 6).unwrap(),
            Omega {
                generator: 2,
                order: 2
            }
        );
        assert!(omega(&Ring::zmod(3).unwrap(), 5).unwrap().is_trivial());
        assert_eq!(
            omega(&Ring::zmod(12).unwrap(), 6).unwrap(),
            Omega {
                generator: 2,
                order: 6
            }
        );
        assert!(omega(&gf(5), 5).is_err());
    }

    #[test]
    fn rstd_over_z4() {
        let z4 = Ring::zmod(4).unwrap();
        let r = build_rstd(6, &z4).unwrap();
        // (Z/4)^5 / <2c> has order 4^5 / 2
        let md = r.moduli().unwrap();
        assert_eq!(md.iter().product::<u64>(), 512);
        assert_eq!(r.exponent(), Some(4));
        // free when Ω is trivial
        assert_eq!(
            build_rstd(5, &Ring::zmod(4).unwrap()).unwrap().moduli(),
            None
        );
    }

    #[test]
    fn faithfulness_boundary() {
        let r4 = build_rstd(4, &gf(2)).unwrap();
        let f = r4.faithfulness().unwrap();
        assert!(!f.faithful);
        assert_eq!(f.witness.unwrap().cycle_type(), vec![2, 2]);
        assert!(!build_rstd(3, &gf(3)).unwrap().is_faithful().unwrap());
        assert!(build_rstd(9, &gf(3)).unwrap().is_faithful().unwrap());
    }

    #[test]
    fn spec_validation() {
        let mut s = StandardSpec::new(Flavor::Rstd, 7, &gf(2));
        s.outer_twist = true;
        assert!(matches!(s.build(), Err(StandardError::InvalidSpec(_))));
        s.n = 6;
        assert_eq!(s.build().unwrap().dim(), 4);
        s.group = GroupKind::Alt;
        s.outer_twist = false;
        s.n = 8;
        assert_eq!(s.build().unwrap().dim(), 6);
    }
}
