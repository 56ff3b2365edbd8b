//! The operators `ad_g = 1 - g` and `tr_g = 1 + g + ... + g^(p-1)` and the decompositions
//! they induce.

use std::fmt;

use crate::gmodule::GModule;
use crate::linalg::{image, kernel, LinalgError, Matrix, Subspace};
use crate::permgroup::{generated_group, GroupKind, KleinFour, Perm};
use crate::ring::{Elem, Ring};

use super::{IdentifyError, IdentifyOptions};

fn require_field(ring: &Ring) -> Result<(), IdentifyError> {
    if ring.is_field() {
        Ok(())
    } else {
        Err(LinalgError::NotAField(ring.to_string()).into())
    }
}

fn prime_order(g: &Perm) -> Result<u64, IdentifyError> {
    let p = g.order();
    if p < 2
        || !(2..p)
            .take_while(|x| x * x <= p)
            .all(|x| !p.is_multiple_of(x))
    {
        return Err(IdentifyError::NotPrimeOrder(g.to_string()));
    }
    Ok(p)
}

/// `ad_g`, `tr_g` and their images `B_g`, `C_g` for g of prime order p.
#[derive(Clone, Debug)]
pub struct OperatorPair {
    pub g: Perm,
    pub p: u64,
    pub ad: Matrix,
    pub tr: Matrix,
    pub b: Subspace,
    pub c: Subspace,
}

impl OperatorPair {
    pub fn new(m: &GModule, g: &Perm) -> Result<OperatorPair, IdentifyError> {
        require_field(m.ring())?;
        let p = prime_order(g)?;
        let a = m.act(g)?;
        let id = m.identity_matrix();
        let ad = id.sub(&a);
        let mut tr = id.clone();
        let mut pw = id;
        for _ in 1..p {
            pw = &pw * &a;
            tr = tr.add(&pw);
        }
        let b = image(&ad)?;
        let c = image(&tr)?;
        Ok(OperatorPair {
            g: g.clone(),
            p,
            ad,
            tr,
            b,
            c,
        })
    }

    /// `ad∘tr = tr∘ad = 0`, `B ⊆ ker tr` and `C ⊆ ker ad`, all exact.
    pub fn identities_hold(&self) -> bool {
        let z1 = (&self.ad * &self.tr).is_zero();
        let z2 = (&self.tr * &self.ad).is_zero();
        let kt = kernel(&self.tr).expect("field");
        let ka = kernel(&self.ad).expect("field");
        z1 && z2 && self.b.is_subspace_of(&kt) && self.c.is_subspace_of(&ka)
    }
}

/// `V = B_g ⊕ C_g` when the characteristic differs from the (prime) order of g.
pub fn coprimality_decompose(m: &GModule, g: &Perm) -> Result<(Subspace, Subspace), IdentifyError> {
    require_field(m.ring())?;
    let p = prime_order(g)?;
    if m.ring().char_value() == Some(p) {
        return Err(IdentifyError::CharacteristicClash { p });
    }
    let op = OperatorPair::new(m, g)?;
    Ok((op.b, op.c))
}

/// A character of the Klein four-group with values ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    Trivial,
    /// Value +1 on the t-th bitransposition of the group, -1 on the other two.
    Lambda(usize),
}

impl Weight {
    pub const ALL: [Weight; 4] = [
        Weight::Trivial,
        Weight::Lambda(0),
        Weight::Lambda(1),
        Weight::Lambda(2),
    ];

    pub fn value(self, t: usize) -> i64 {
        match self {
            Weight::Trivial => 1,
            Weight::Lambda(s) if s == t => 1,
            Weight::Lambda(_) => -1,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Trivial => f.write_str("trivial"),
            Weight::Lambda(t) => write!(f, "lambda{}", t + 1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct WeightDecomposition {
    pub klein: KleinFour,
    pub spaces: Vec<(Weight, Subspace)>,
}

impl WeightDecomposition {
    /// Dimensions in the order trivial, λ1, λ2, λ3.
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|(_, s)| s.dim()).collect()
    }

    /// The weight spaces are independent and span V.
    pub fn is_direct_fill(&self) -> bool {
        let Some((_, first)) = self.spaces.first() else {
            return false;
        };
        let d = first.ambient_dim();
        let total: usize = self.dims().iter().sum();
        let sum = self
            .spaces
            .iter()
            .try_fold(Subspace::zero(first.ring(), d), |acc, (_, s)| acc.sum(s));
        total == d && sum.map(|s| s.is_full()).unwrap_or(false)
    }

    /// ℓ with `dim V = dim V_trivial + 3ℓ` when the nontrivial weights have equal dimension.
    pub fn three_ell(&self) -> Option<usize> {
        let dims = self.dims();
        (dims[1] == dims[2] && dims[2] == dims[3]).then_some(dims[1])
    }

    /// Each bitransposition acts on each weight space as the scalar λ(α).
    pub fn scalars_hold(&self, m: &GModule) -> Result<bool, IdentifyError> {
        let r = m.ring();
        for (t, alpha) in self.klein.elements.iter().enumerate() {
            let a = m.act(alpha)?;
            for (w, s) in &self.spaces {
                let lam = r.from_i64(w.value(t));
                for v in s.basis_vectors() {
                    let expect: Vec<Elem> = v.iter().map(|x| r.mul(&lam, x)).collect();
                    if a.mul_vec(&v) != expect {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Simultaneous ±1-eigenspaces of the three bitranspositions of K.
pub fn weight_decompose(m: &GModule, k: &KleinFour) -> Result<WeightDecomposition, IdentifyError> {
    require_field(m.ring())?;
    if m.ring().char_value() == Some(2) {
        return Err(IdentifyError::CharacteristicTwo);
    }
    let r = m.ring();
    let acts = k
        .elements
        .iter()
        .map(|a| m.act(a))
        .collect::<Result<Vec<_>, _>>()?;
    let mut spaces = Vec::new();
    for w in Weight::ALL {
        let mut stacked: Option<Matrix> = None;
        for (t, a) in acts.iter().enumerate() {
            let shifted = a.sub(&m.identity_matrix().scale(&r.from_i64(w.value(t))));
            stacked = Some(match stacked {
                None => shifted,
                Some(s) => s.vstack(&shifted),
            });
        }
        spaces.push((w, kernel(&stacked.expect("three elements"))?));
    }
    Ok(WeightDecomposition {
        klein: k.clone(),
        spaces,
    })
}

/// `[H, B_σ] = 0`: every listed h fixes `B_σ = im(1 - σ)` pointwise.
pub fn check_bracket_centralised(
    m: &GModule,
    sigma: &Perm,
    h: &[Perm],
) -> Result<bool, IdentifyError> {
    require_field(m.ring())?;
    let b = image(&m.ad(sigma)?)?;
    if b.is_zero() {
        return Ok(true);
    }
    let cols = b.basis_columns();
    for g in h {
        if !(&m.ad(g)? * &cols).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalEquationsReport {
    /// `(identity, holds)` in the order checked.
    pub checks: Vec<(String, bool)>,
}

impl LocalEquationsReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(s, _)| s.as_str())
            .collect()
    }
}

fn tp(n: usize, i: usize, j: usize) -> Perm {
    Perm::transposition(n, i, j)
}

/// `Σ_{g ∈ ⟨τ, τ'⟩} ε(g) g`.
fn signed_sum(m: &GModule, t1: &Perm, t2: &Perm) -> Result<Matrix, IdentifyError> {
    let r = m.ring();
    let mut acc = Matrix::zeros(r, m.dim(), m.dim());
    for g in generated_group(m.n(), &[t1.clone(), t2.clone()]) {
        let a = m.act(&g)?;
        acc = if g.sign() == 1 {
            acc.add(&a)
        } else {
            acc.sub(&a)
        };
    }
    Ok(acc)
}

/// The local equations of the recognition argument and the integration formula, on one
/// representative tuple per orbit (or every tuple with `exhaustive`).
pub fn check_local_equations(
    m: &GModule,
    opts: &IdentifyOptions,
) -> Result<LocalEquationsReport, IdentifyError> {
    require_field(m.ring())?;
    if m.group() != GroupKind::Sym {
        return Err(IdentifyError::Precondition(
            "local equations need a Sym(n)-module".into(),
        ));
    }
    let n = m.n();
    let r = m.ring();
    let two = r.from_i64(2);
    let mut report = LocalEquationsReport::default();
    let triples: Vec<(usize, usize, usize)> = if opts.exhaustive {
        let mut t = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    if i != j && j != k && i != k {
                        t.push((i, j, k));
                    }
                }
            }
        }
        t
    } else {
        vec![(1, 2, 3)]
    };
    let quads: Vec<(usize, usize, usize, usize)> = if n < 4 {
        Vec::new()
    } else if opts.exhaustive {
        let mut q = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                for k in 1..=n {
                    for l in k + 1..=n {
                        if ![i, j].contains(&k) && ![i, j].contains(&l) {
                            q.push((i, j, k, l));
                        }
                    }
                }
            }
        }
        q
    } else {
        vec![(1, 2, 3, 4)]
    };
    for &(i, j, k) in &triples {
        let ad_ij = m.ad(&tp(n, i, j))?;
        let b_ij = image(&ad_ij)?.basis_columns();
        report.checks.push((
            format!("ad({i} {j}) = 2 on B({i} {j})"),
            &ad_ij * &b_ij == b_ij.scale(&two),
        ));
        let b_ik = image(&m.ad(&tp(n, i, k))?)?.basis_columns();
        let jk = m.act(&tp(n, j, k))?;
        report.checks.push((
            format!("ad({i} {j}) = ({j} {k}) on B({i} {k})"),
            &ad_ij * &b_ik == &jk * &b_ik,
        ));
        let s = signed_sum(m, &tp(n, i, j), &tp(n, j, k))?;
        report.checks.push((
            format!("integration over <({i} {j}), ({j} {k})>"),
            s.is_zero(),
        ));
    }
    for &(i, j, k, l) in &quads {
        let ad_ij = m.ad(&tp(n, i, j))?;
        let b_kl = image(&m.ad(&tp(n, k, l))?)?.basis_columns();
        report.checks.push((
            format!("ad({i} {j}) = 0 on B({k} {l})"),
            (&ad_ij * &b_kl).is_zero(),
        ));
        let s = signed_sum(m, &tp(n, i, j), &tp(n, k, l))?;
        report.checks.push((
            format!("integration over <({i} {j}), ({k} {l})>"),
            s.is_zero(),
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::{build_perm, build_rstd};

    fn gf(p: u64) -> Ring {
        Ring::prime_field(p).unwrap()
    }

    #[test]
    fn swap_decomposition() {
        let m = build_perm(3, &gf(5)).unwrap();
        let (b, c) = coprimality_decompose(&m, &tp(3, 1, 2)).unwrap();
        assert_eq!((b.dim(), c.dim()), (1, 2));
        assert!(b.contains_vector(&[Elem::Int(1), Elem::Int(4), Elem::Int(0)]));
        assert!(c.contains_vector(&[Elem::Int(0), Elem::Int(0), Elem::Int(1)]));
        assert!(b.intersect(&c).unwrap().is_zero());
        assert!(coprimality_decompose(&m, &Perm::identity(3)).is_err());
        let m2 = build_perm(3, &gf(2)).unwrap();
        assert_eq!(
            coprimality_decompose(&m2, &tp(3, 1, 2)),
            Err(IdentifyError::CharacteristicClash { p: 2 })
        );
    }

    #[test]
    fn three_cycle_in_char_two() {
        let m = build_rstd(7, &gf(2)).unwrap();
        let (b, c) = coprimality_decompose(&m, &Perm::cycle(7, &[1, 2, 3]).unwrap()).unwrap();
        assert_eq!(b.dim() + c.dim(), 6);
        assert!(b.sum(&c).unwrap().is_full());
    }

    #[test]
    fn weights_of_permutation_modules() {
        let m = build_perm(4, &gf(5)).unwrap();
        let k = KleinFour::new(4, [1, 2, 3, 4]).unwrap();
        let w = weight_decompose(&m, &k).unwrap();
        assert_eq!(w.dims(), vec![1, 1, 1, 1]);
        assert!(w.spaces[0].1.contains_vector(&vec![Elem::Int(1); 4]));
        let m6 = build_perm(6, &gf(3)).unwrap();
        let w6 = weight_decompose(&m6, &KleinFour::new(6, [1, 2, 3, 4]).unwrap()).unwrap();
        assert_eq!(w6.dims(), vec![3, 1, 1, 1]);
        assert!(w6.is_direct_fill());
        assert_eq!(w6.three_ell(), Some(1));
        assert!(w6.scalars_hold(&m6).unwrap());
        assert!(matches!(
            weight_decompose(&build_perm(4, &gf(2)).unwrap(), &k),
            Err(IdentifyError::CharacteristicTwo)
        ));
    }

    #[test]
    fn operator_identities() {
        let m = build_rstd(6, &gf(3)).unwrap();
        for g in ["(1 2)", "(1 2 3)", "(1 2)(3 4)", "(1 2 3 4 5)"] {
            let op = OperatorPair::new(&m, &Perm::parse(g, 6).unwrap()).unwrap();
            assert!(op.identities_hold(), "{g}");
        }
        assert!(OperatorPair::new(&m, &Perm::parse("(1 2 3 4)", 6).unwrap()).is_err());
    }
}
