//! Recognition: a Sym(n)-module with `[S'_{τ⊥}, B_τ] = 0` is covered by `ustd(n, L)`,
//! `L = B_(1 n)`, through `φ(f_i ⊗ ℓ) = (1 i)·ℓ`.

use crate::gmodule::GModule;
use crate::linalg::{image, kernel, rank, Irreducibility, Matrix, Subspace};
use crate::permgroup::{alt_on, complement, GroupKind, Perm};
use crate::standard::{build_rstd, build_ustd};

use super::{
    check_bracket_centralised, ClassificationResult, IdentifyError, IdentifyOptions, Verdict,
};

/// `a ⊗ I_l` with the I_l index varying fastest.
pub(crate) fn kron_identity(a: &Matrix, l: usize) -> Matrix {
    let r = a.ring();
    Matrix::from_fn(r, a.rows() * l, a.cols() * l, |i, j| {
        if i % l == j % l {
            a.get(i / l, j / l).clone()
        } else {
            r.zero()
        }
    })
}

/// Direct sum of `l` copies, in the same coordinates as [`kron_identity`].
pub(crate) fn copies(m: &GModule, l: usize) -> Result<GModule, IdentifyError> {
    if l == 1 {
        return Ok(m.clone());
    }
    let images = m.images().iter().map(|g| kron_identity(g, l)).collect();
    Ok(GModule::new(m.group(), m.n(), m.ring(), images)?)
}

/// Transpositions checked for the hypothesis: `(1 2)` alone, or all of them.
pub(crate) fn transpositions(n: usize, exhaustive: bool) -> Vec<Perm> {
    if !exhaustive {
        return vec![Perm::transposition(n, 1, 2)];
    }
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(Perm::transposition(n, i, j));
        }
    }
    out
}

/// The recognition hypothesis; returns the first failing transposition.
pub(crate) fn recognition_hypothesis(
    m: &GModule,
    exhaustive: bool,
) -> Result<Option<Perm>, IdentifyError> {
    let n = m.n();
    for t in transpositions(n, exhaustive) {
        let h = alt_on(n, &complement(n, &t.support()));
        if !check_bracket_centralised(m, &t, &h)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Faithfulness and irreducibility, as a NotRecognized reason when either fails.
pub(crate) fn screen(m: &GModule, opts: &IdentifyOptions) -> Result<Option<String>, IdentifyError> {
    if !m.ring().is_field() {
        return Ok(Some(format!("ring {} is not a field", m.ring())));
    }
    let f = m.faithfulness()?;
    if !f.faithful {
        let w = f.witness.map(|w| w.to_string()).unwrap_or_default();
        return Ok(Some(format!("not faithful: {w} acts trivially")));
    }
    match m.irreducibility(opts.seed)? {
        Irreducibility::Irreducible => Ok(None),
        Irreducibility::Reducible(w) => Ok(Some(format!(
            "reducible: invariant subspace of dimension {}",
            w.dim()
        ))),
        Irreducibility::Unknown(why) => Ok(Some(format!("irreducibility undetermined: {why}"))),
    }
}

pub fn recognise(
    m: &GModule,
    opts: &IdentifyOptions,
) -> Result<ClassificationResult, IdentifyError> {
    if m.group() != GroupKind::Sym {
        return Ok(ClassificationResult::not_recognized(
            m,
            "recognition needs a Sym(n)-module",
        ));
    }
    if let Some(why) = screen(m, opts)? {
        return Ok(ClassificationResult::not_recognized(m, why));
    }
    if let Some(t) = recognition_hypothesis(m, opts.exhaustive)? {
        let reason = format!(
            "hypothesis [S'_t, B_t] = 0 fails for t = {t} (S'_t: Alt of the points outside t)"
        );
        return Ok(ClassificationResult::not_recognized(m, reason));
    }
    recognise_unchecked(m)
}

/// The covering construction, assuming the screened preconditions and the hypothesis.
pub(crate) fn recognise_unchecked(m: &GModule) -> Result<ClassificationResult, IdentifyError> {
    let n = m.n();
    let ring = m.ring().clone();
    let d = m.dim();
    let l_space = image(&m.ad(&Perm::transposition(n, 1, n))?)?;
    let l = l_space.dim();
    if l == 0 {
        return Err(IdentifyError::HypothesisFailed("B_(1 n) is zero".into()));
    }
    let lb = l_space.basis_vectors();
    // φ(f_i ⊗ b_s) = (1 i)·b_s, column (i - 1)ℓ + s
    let mut phi = Matrix::zeros(&ring, d, (n - 1) * l);
    for i in 1..n {
        let a = if i == 1 {
            m.identity_matrix()
        } else {
            m.act(&Perm::transposition(n, 1, i))?
        };
        for (s, b) in lb.iter().enumerate() {
            for (row, x) in a.mul_vec(b).into_iter().enumerate() {
                phi.set(row, (i - 1) * l + s, x);
            }
        }
    }
    let ustd = build_ustd(n, &ring)?;
    for (g, (u, v)) in m
        .generators()
        .iter()
        .zip(ustd.images().iter().zip(m.images()))
    {
        if &phi * &kron_identity(u, l) != v * &phi {
            return Err(IdentifyError::EquivarianceFailed(format!("generator {g}")));
        }
    }
    if rank(&phi)? != d {
        return Err(IdentifyError::HypothesisFailed(
            "covering map is not surjective".into(),
        ));
    }
    let ker = kernel(&phi)?;
    let z = ustd.fixed_points(&ustd.generators())?;
    let predicted = Subspace::from_columns(&kron_identity(&z.basis_columns(), l))?;
    if ker != predicted {
        return Err(IdentifyError::KernelMismatch(format!(
            "kernel has dimension {}, the center of ustd(n, L) has dimension {}",
            ker.dim(),
            predicted.dim()
        )));
    }
    let q = ring.char_value().unwrap_or(0);
    let x = &phi * &kron_identity(&z.quotient_section(), l);
    let source = copies(&build_rstd(n, &ring)?, l)?;
    let mut notes = Vec::new();
    let verdict = if q == 0 {
        notes.push("torsion-free: the cover ustd(n, L) -> V is an isomorphism".to_string());
        Verdict::UstdCovered
    } else {
        if (n as u64).is_multiple_of(q) {
            notes.push("q | n: kernel is the center of ustd(n, L)".to_string());
        } else {
            notes.push("q does not divide n: kernel is 0 and rstd = ustd".to_string());
        }
        Verdict::StandardRstd
    };
    Ok(ClassificationResult {
        verdict,
        group: GroupKind::Sym,
        n,
        q,
        d,
        dim_l: Some(l),
        kernel: Some(ker),
        intertwiner: Some(x),
        source: Some(source),
        extension: None,
        twists: Vec::new(),
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    #[test]
    fn recognises_rstd() {
        let opts = IdentifyOptions::default();
        let m = build_rstd(10, &Ring::prime_field(2).unwrap()).unwrap();
        let r = recognise(&m, &opts).unwrap();
        assert_eq!(r.verdict, Verdict::StandardRstd);
        assert_eq!((r.dim_l, r.kernel_dim()), (Some(1), Some(1)));
        assert!(r.verify_intertwiner(&m));
        let m7 = build_rstd(7, &Ring::prime_field(3).unwrap()).unwrap();
        let r7 = recognise(&m7, &opts).unwrap();
        assert_eq!(
            (r7.verdict.clone(), r7.d, r7.kernel_dim()),
            (Verdict::StandardRstd, 6, Some(0))
        );
        assert!(r7.verify_intertwiner(&m7));
    }

    #[test]
    fn ustd_over_q_is_covered() {
        let m = build_ustd(5, &Ring::rational()).unwrap();
        let r = recognise(&m, &IdentifyOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::UstdCovered);
        assert_eq!(r.kernel_dim(), Some(0));
        assert!(r.verify_intertwiner(&m));
    }

    #[test]
    fn sign_twist_fails_hypothesis() {
        let m = build_rstd(7, &Ring::prime_field(5).unwrap())
            .unwrap()
            .sign_twist()
            .unwrap();
        let r = recognise(&m, &IdentifyOptions::default()).unwrap();
        assert!(matches!(r.verdict, Verdict::NotRecognized(_)));
    }
}
