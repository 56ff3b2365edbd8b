//! G-modules for G = Sym(n) or Alt(n), given by matrices for the canonical generators.

use std::fmt;
use std::num::NonZeroUsize;
use std::sync::Mutex;

use lru::LruCache;
use thiserror::Error;

use crate::linalg::{self, kernel, Irreducibility, LinalgError, Matrix, Subspace};
use crate::permgroup::{canonical_generators, factorize, GroupKind, Perm, PermError};
use crate::ring::{Elem, Ring, RingKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GModuleError {
    #[error("defining relation violated: {0}")]
    RelationViolation(String),
    #[error("image of generator {0} is not invertible")]
    NotInvertible(String),
    #[error("expected {expected} generator images, got {got}")]
    WrongGeneratorCount { expected: usize, got: usize },
    #[error("generator image has shape {rows}x{cols}, expected {d}x{d}")]
    DimensionMismatch { rows: usize, cols: usize, d: usize },
    #[error("Alt(n) has no sign character")]
    AltHasNoSign,
    #[error("degree n = {0} is below 3")]
    DegreeTooSmall(usize),
    #[error("operation needs a Sym(n)-module")]
    NeedsSym,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A column vector in a module.
pub type ModuleElement = Vec<Elem>;

/// Result of [`GModule::faithfulness`]: a nontrivial kernel element when not faithful.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Faithfulness {
    pub faithful: bool,
    pub witness: Option<Perm>,
}

/// Act-cache capacity: every element for n <= 7, LRU beyond.
fn cache_capacity(n: usize) -> NonZeroUsize {
    let cap = if n <= 7 {
        (1..=n).product::<usize>().max(1)
    } else {
        4096
    };
    NonZeroUsize::new(cap).unwrap()
}

/// Immutable module; the act cache is internally synchronized.
pub struct GModule {
    group: GroupKind,
    n: usize,
    ring: Ring,
    d: usize,
    images: Vec<Matrix>,
    /// Per-coordinate orders for Z/kZ modules that are not free (each divides k).
    moduli: Option<Vec<u64>>,
    cache: Mutex<LruCache<Vec<u8>, Matrix>>,
}

impl Clone for GModule {
    fn clone(&self) -> GModule {
        GModule {
            group: self.group,
            n: self.n,
            ring: self.ring.clone(),
            d: self.d,
            images: self.images.clone(),
            moduli: self.moduli.clone(),
            cache: Mutex::new(LruCache::new(cache_capacity(self.n))),
        }
    }
}

impl PartialEq for GModule {
    fn eq(&self, o: &GModule) -> bool {
        self.group == o.group
            && self.n == o.n
            && self.ring == o.ring
            && self.d == o.d
            && self.moduli == o.moduli
            && self.images == o.images
    }
}
impl Eq for GModule {}

impl fmt::Debug for GModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GModule({}({}) over {}, d = {})",
            self.group, self.n, self.ring, self.d
        )
    }
}

fn relation_list(group: GroupKind, n: usize) -> Vec<(Vec<usize>, u64, String)> {
    // (word, exponent, label): word^exponent must act trivially
    let m = match group {
        GroupKind::Sym => n - 1,
        GroupKind::Alt => n - 2,
    };
    let gens = canonical_generators(group, n);
    let mut out = Vec::new();
    for i in 0..m {
        match group {
            GroupKind::Sym => out.push((vec![i], 2, format!("{}^2", gens[i]))),
            GroupKind::Alt => out.push((vec![i], 3, format!("{}^3", gens[i]))),
        }
        for j in i + 1..m {
            let e = match group {
                GroupKind::Sym if j == i + 1 => 3,
                _ => 2,
            };
            out.push((vec![i, j], e, format!("({} {})^{e}", gens[i], gens[j])));
        }
    }
    out
}

impl GModule {
    /// Builds a module, verifying invertibility and the defining relations.
    pub fn new(
        group: GroupKind,
        n: usize,
        ring: &Ring,
        images: Vec<Matrix>,
    ) -> Result<GModule, GModuleError> {
        GModule::with_moduli(group, n, ring, images, None)
    }

    /// As [`new`](Self::new), for a Z/kZ module whose coordinate i has order `moduli[i]`.
    pub fn with_moduli(
        group: GroupKind,
        n: usize,
        ring: &Ring,
        images: Vec<Matrix>,
        moduli: Option<Vec<u64>>,
    ) -> Result<GModule, GModuleError> {
        let m = GModule::new_unchecked(group, n, ring, images, moduli)?;
        m.verify()?;
        Ok(m)
    }

    /// Shape checks only; relations are not verified. For debugging input files.
    pub fn new_unchecked(
        group: GroupKind,
        n: usize,
        ring: &Ring,
        mut images: Vec<Matrix>,
        moduli: Option<Vec<u64>>,
    ) -> Result<GModule, GModuleError> {
        if n < 3 {
            return Err(GModuleError::DegreeTooSmall(n));
        }
        let expected = canonical_generators(group, n).len();
        if images.len() != expected {
            return Err(GModuleError::WrongGeneratorCount {
                expected,
                got: images.len(),
            });
        }
        let d = images[0].rows();
        for g in &images {
            if g.rows() != d || g.cols() != d {
                return Err(GModuleError::DimensionMismatch {
                    rows: g.rows(),
                    cols: g.cols(),
                    d,
                });
            }
            if g.ring() != ring {
                return Err(
                    LinalgError::RingMismatch(ring.to_string(), g.ring().to_string()).into(),
                );
            }
        }
        if let Some(md) = &moduli {
            if md.len() != d {
                return Err(GModuleError::DimensionMismatch {
                    rows: md.len(),
                    cols: 1,
                    d,
                });
            }
            for g in images.iter_mut() {
                g.reduce_rows(md);
            }
        }
        Ok(GModule {
            group,
            n,
            ring: ring.clone(),
            d,
            images,
            moduli,
            cache: Mutex::new(LruCache::new(cache_capacity(n))),
        })
    }

    /// Re-checks the construction invariants.
    pub fn verify(&self) -> Result<(), GModuleError> {
        let gens = self.generators();
        if self.ring.is_field() {
            for (g, img) in gens.iter().zip(&self.images) {
                if !linalg::is_invertible(img) {
                    return Err(GModuleError::NotInvertible(g.to_string()));
                }
            }
        }
        // over Z/kZ the relations themselves force invertibility (g^2 = 1 or g^3 = 1)
        for (word, e, label) in relation_list(self.group, self.n) {
            let w = word.iter().fold(self.identity_matrix(), |acc, &i| {
                self.mul(&acc, &self.images[i])
            });
            let mut p = self.identity_matrix();
            for _ in 0..e {
                p = self.mul(&p, &w);
            }
            if !p.is_identity() {
                return Err(GModuleError::RelationViolation(label));
            }
        }
        Ok(())
    }

    pub fn group(&self) -> GroupKind {
        self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn moduli(&self) -> Option<&[u64]> {
        self.moduli.as_deref()
    }

    pub fn images(&self) -> &[Matrix] {
        &self.images
    }

    pub fn generators(&self) -> Vec<Perm> {
        canonical_generators(self.group, self.n)
    }

    pub fn identity_matrix(&self) -> Matrix {
        Matrix::identity(&self.ring, self.d)
    }

    fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let mut p = a * b;
        if let Some(md) = &self.moduli {
            p.reduce_rows(md);
        }
        p
    }

    pub fn contains(&self, s: &Perm) -> bool {
        s.degree() == self.n && (self.group == GroupKind::Sym || s.is_even())
    }

    /// Matrix of σ: the product of generator images along its word. Memoized.
    pub fn act(&self, s: &Perm) -> Result<Matrix, GModuleError> {
        if s.degree() != self.n {
            return Err(PermError::DegreeMismatch {
                expected: self.n,
                got: s.degree(),
            }
            .into());
        }
        let key = s.raw().to_vec();
        if let Some(m) = self.cache.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let word = factorize(s, self.group)?;
        let m = word.iter().fold(self.identity_matrix(), |acc, &i| {
            self.mul(&acc, &self.images[i])
        });
        self.cache.lock().unwrap().put(key, m.clone());
        Ok(m)
    }

    fn require_field(&self) -> Result<(), GModuleError> {
        if self.ring.is_field() {
            Ok(())
        } else {
            Err(LinalgError::NotAField(self.ring.to_string()).into())
        }
    }

    /// `1 - act(g)`.
    pub fn ad(&self, g: &Perm) -> Result<Matrix, GModuleError> {
        Ok(self.identity_matrix().sub(&self.act(g)?))
    }

    /// `[H, V]`: the span of all `(1 - g)V` for the listed g.
    pub fn bracket(&self, gens: &[Perm]) -> Result<Subspace, GModuleError> {
        self.require_field()?;
        let mut acc = Subspace::zero(&self.ring, self.d);
        for g in gens {
            acc = acc.sum(&linalg::image(&self.ad(g)?)?)?;
        }
        Ok(acc)
    }

    /// `C_V(H)`: common fixed points of the listed elements.
    pub fn fixed_points(&self, gens: &[Perm]) -> Result<Subspace, GModuleError> {
        self.require_field()?;
        if gens.is_empty() {
            return Ok(Subspace::full(&self.ring, self.d));
        }
        let mut stacked = self.ad(&gens[0])?;
        for g in &gens[1..] {
            stacked = stacked.vstack(&self.ad(g)?);
        }
        Ok(kernel(&stacked)?)
    }

    /// Smallest submodule containing `seed`.
    pub fn spin(&self, seed: &Subspace) -> Result<Subspace, GModuleError> {
        self.require_field()?;
        if seed.ambient_dim() != self.d {
            return Err(LinalgError::AmbientMismatch(self.d, seed.ambient_dim()).into());
        }
        Ok(linalg::spin_subspace(&self.images, seed)?)
    }

    pub fn spin_vector(&self, v: &[Elem]) -> Result<Subspace, GModuleError> {
        self.require_field()?;
        Ok(linalg::spin_vectors(
            &self.images,
            &self.ring,
            self.d,
            &[v.to_vec()],
        )?)
    }

    pub fn is_submodule(&self, w: &Subspace) -> bool {
        self.images.iter().all(|g| w.is_invariant_under(g))
    }

    /// Faithfulness with a kernel witness. For n >= 5 the normal subgroups are 1, Alt(n)
    /// and Sym(n), so checking `(1 2 3)` (and `(1 2)` for Sym) suffices; smaller n are
    /// checked element by element.
    pub fn faithfulness(&self) -> Result<Faithfulness, GModuleError> {
        let n = self.n;
        let c = Perm::cycle(n, &[1, 2, 3])?;
        if self.act(&c)?.is_identity() {
            return Ok(Faithfulness {
                faithful: false,
                witness: Some(c),
            });
        }
        if n >= 5 {
            if self.group == GroupKind::Sym {
                let t = Perm::transposition(n, 1, 2);
                if self.act(&t)?.is_identity() {
                    return Ok(Faithfulness {
                        faithful: false,
                        witness: Some(t),
                    });
                }
            }
            return Ok(Faithfulness {
                faithful: true,
                witness: None,
            });
        }
        for s in Perm::all(n) {
            if !s.is_identity() && self.contains(&s) && self.act(&s)?.is_identity() {
                return Ok(Faithfulness {
                    faithful: false,
                    witness: Some(s),
                });
            }
        }
        Ok(Faithfulness {
            faithful: true,
            witness: None,
        })
    }

    pub fn is_faithful(&self) -> Result<bool, GModuleError> {
        Ok(self.faithfulness()?.faithful)
    }

    /// Irreducibility via the meataxe (finite fields) or the commutant test (Q).
    pub fn irreducibility(&self, seed: u64) -> Result<Irreducibility, GModuleError> {
        Ok(linalg::irreducibility(&self.images, seed)?)
    }

    /// `sgn ⊗ V`: every transposition image negated.
    pub fn sign_twist(&self) -> Result<GModule, GModuleError> {
        if self.group != GroupKind::Sym {
            return Err(GModuleError::AltHasNoSign);
        }
        let images = self.images.iter().map(|g| g.neg()).collect();
        GModule::new_unchecked(self.group, self.n, &self.ring, images, self.moduli.clone())
    }

    /// The Alt(n)-module obtained by restriction.
    pub fn restrict_to_alt(&self) -> Result<GModule, GModuleError> {
        if self.group != GroupKind::Sym {
            return Err(GModuleError::NeedsSym);
        }
        let images = canonical_generators(GroupKind::Alt, self.n)
            .iter()
            .map(|g| self.act(g))
            .collect::<Result<Vec<_>, _>>()?;
        GModule::new_unchecked(
            GroupKind::Alt,
            self.n,
            &self.ring,
            images,
            self.moduli.clone(),
        )
    }

    /// Generator g now acts as `act(φ(g))`; relations are re-verified.
    pub fn compose_with(&self, phi: &[Perm]) -> Result<GModule, GModuleError> {
        let images = phi.iter().map(|g| {
            if !self.contains(g) {
                return Err(GModuleError::RelationViolation(format!(
                    "{g} is not in {}({})",
                    self.group, self.n
                )));
            }
            self.act(g)
        });
        let images = images.collect::<Result<Vec<_>, _>>()?;
        GModule::with_moduli(self.group, self.n, &self.ring, images, self.moduli.clone())
    }

    /// Action on an invariant subspace, in the coordinates of its canonical basis.
    pub fn submodule(&self, w: &Subspace) -> Result<GModule, GModuleError> {
        self.require_field()?;
        if !self.is_submodule(w) {
            return Err(GModuleError::RelationViolation(
                "subspace is not invariant".into(),
            ));
        }
        let images = self
            .images
            .iter()
            .map(|g| {
                let cols: Vec<Vec<Elem>> = (0..w.dim())
                    .map(|j| w.coordinates(&g.mul_vec(w.basis().row(j))))
                    .collect();
                Matrix::from_fn(&self.ring, w.dim(), w.dim(), |i, j| cols[j][i].clone())
            })
            .collect();
        GModule::new_unchecked(self.group, self.n, &self.ring, images, None)
    }

    /// Action on `V / w`, in the non-pivot coordinates of `w`.
    pub fn quotient(&self, w: &Subspace) -> Result<GModule, GModuleError> {
        self.require_field()?;
        if !self.is_submodule(w) {
            return Err(GModuleError::RelationViolation(
                "subspace is not invariant".into(),
            ));
        }
        let q = w.quotient_map();
        let s = w.quotient_section();
        let images = self.images.iter().map(|g| &(&q * g) * &s).collect();
        GModule::new_unchecked(self.group, self.n, &self.ring, images, None)
    }

    /// Conjugated module `x⁻¹ g x`, i.e. the same module in a new basis given by the columns of x.
    pub fn change_basis(&self, x: &Matrix) -> Result<GModule, GModuleError> {
        let xi = linalg::inverse(x)?;
        let images = self.images.iter().map(|g| &(&xi * g) * x).collect();
        GModule::new_unchecked(self.group, self.n, &self.ring, images, None)
    }

    /// True iff `x · act_src(g) = act_self(g) · x` for every canonical generator.
    pub fn is_intertwiner_from(&self, src: &GModule, x: &Matrix) -> bool {
        src.group == self.group
            && src.n == self.n
            && x.rows() == self.d
            && x.cols() == src.d
            && self
                .images
                .iter()
                .zip(&src.images)
                .all(|(t, s)| (x * s) == (t * x))
    }

    /// Exponent of the underlying abelian group (`None` over Q).
    pub fn exponent(&self) -> Option<u64> {
        if let Some(md) = &self.moduli {
            return Some(md.iter().fold(1, |a, &b| num_integer::lcm(a, b)));
        }
        match self.ring.kind() {
            RingKind::ModularInt { k } => Some(k),
            RingKind::FiniteField { p, .. } => Some(p),
            RingKind::Rational => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_module(n: usize, ring: &Ring) -> GModule {
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
        GModule::new(GroupKind::Sym, n, ring, images).unwrap()
    }

    #[test]
    fn relations_are_enforced() {
        let f = Ring::prime_field(3).unwrap();
        let mut images: Vec<Matrix> = perm_module(4, &f).images().to_vec();
        images[0] = Matrix::identity(&f, 4).scale(&Elem::Int(2));
        assert!(matches!(
            GModule::new(GroupKind::Sym, 4, &f, images.clone()),
            Err(GModuleError::RelationViolation(_))
        ));
        images.pop();
        assert!(matches!(
            GModule::new(GroupKind::Sym, 4, &f, images),
            Err(GModuleError::WrongGeneratorCount { .. })
        ));
    }

    #[test]
    fn act_examples() {
        let f = Ring::prime_field(3).unwrap();
        let m = perm_module(4, &f);
        let a = m.act(&Perm::transposition(4, 1, 2)).unwrap();
        assert_eq!(
            a,
            Matrix::from_i64(
                &f,
                &[
                    vec![0, 1, 0, 0],
                    vec![1, 0, 0, 0],
                    vec![0, 0, 1, 0],
                    vec![0, 0, 0, 1]
                ]
            )
        );
        assert!(m.act(&Perm::identity(4)).unwrap().is_identity());
        assert!(m.act(&Perm::identity(5)).is_err());
    }

    #[test]
    fn brackets_and_fixed_points() {
        let f5 = Ring::prime_field(5).unwrap();
        let m = perm_module(3, &f5);
        let b = m.bracket(&[Perm::transposition(3, 1, 2)]).unwrap();
        assert_eq!(b.dim(), 1);
        assert!(b.contains_vector(&[Elem::Int(1), Elem::Int(4), Elem::Int(0)]));
        assert_eq!(m.bracket(&[]).unwrap().dim(), 0);
        let f2 = Ring::prime_field(2).unwrap();
        let p4 = perm_module(4, &f2);
        let fix = p4.fixed_points(&p4.generators()).unwrap();
        assert_eq!(fix.dim(), 1);
        assert!(fix.contains_vector(&vec![Elem::Int(1); 4]));
        assert!(p4.fixed_points(&[]).unwrap().is_full());
    }

    #[test]
    fn spin_in_permutation_module() {
        let f3 = Ring::prime_field(3).unwrap();
        let m = perm_module(5, &f3);
        let s = m
            .spin_vector(&[
                Elem::Int(1),
                Elem::Int(2),
                Elem::Int(0),
                Elem::Int(0),
                Elem::Int(0),
            ])
            .unwrap();
        assert_eq!(s.dim(), 4);
        assert_eq!(m.spin(&Subspace::zero(&f3, 5)).unwrap().dim(), 0);
        assert_eq!(m.spin(&s).unwrap(), s);
    }

    #[test]
    fn trivial_module_not_faithful() {
        let f = Ring::prime_field(7).unwrap();
        let images = vec![Matrix::identity(&f, 1); 5];
        let m = GModule::new(GroupKind::Sym, 6, &f, images).unwrap();
        let fa = m.faithfulness().unwrap();
        assert!(!fa.faithful);
        assert_eq!(fa.witness.unwrap().to_string(), "(1 2 3)");
    }

    #[test]
    fn sign_twist_involution() {
        let f = Ring::prime_field(5).unwrap();
        let m = perm_module(4, &f);
        assert_eq!(m.sign_twist().unwrap().sign_twist().unwrap(), m);
        let f2 = Ring::prime_field(2).unwrap();
        let m2 = perm_module(4, &f2);
        assert_eq!(m2.sign_twist().unwrap(), m2);
        assert!(matches!(
            m.restrict_to_alt().unwrap().sign_twist(),
            Err(GModuleError::AltHasNoSign)
        ));
    }

    #[test]
    fn compose_with_identity_map() {
        let f = Ring::prime_field(5).unwrap();
        let m = perm_module(5, &f);
        assert_eq!(m.compose_with(&m.generators()).unwrap(), m);
        // (1 2) -> (1 2 3) is not a homomorphism
        let mut bad = m.generators();
        bad[0] = Perm::cycle(5, &[1, 2, 3]).unwrap();
        assert!(m.compose_with(&bad).is_err());
    }

    #[test]
    fn restriction_dims() {
        let f = Ring::prime_field(2).unwrap();
        let m = perm_module(6, &f).restrict_to_alt().unwrap();
        assert_eq!(m.group(), GroupKind::Alt);
        assert_eq!(m.images().len(), 4);
        assert_eq!(m.dim(), 6);
    }
}
