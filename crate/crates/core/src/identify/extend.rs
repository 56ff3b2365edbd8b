//! Extension of an Alt(n)-action to Sym(n) through the line system `L_(ij)`.

use std::collections::BTreeMap;

use crate::gmodule::{GModule, GModuleError};
use crate::linalg::{image, rank, solve, Matrix, Subspace};
use crate::permgroup::{alt_on, canonical_generators, complement, GroupKind, Perm};

use super::recognise::screen;
use super::{check_bracket_centralised, IdentifyError, IdentifyOptions};

fn bitransposition(n: usize, i: usize, j: usize, a: usize, b: usize) -> Perm {
    Perm::transposition(n, i, j).compose(&Perm::transposition(n, a, b))
}

/// Two auxiliary triples `(k, a, b)` outside `{i, j}`, disjoint once n >= 8.
fn aux_choices(n: usize, i: usize, j: usize) -> [(usize, usize, usize); 2] {
    let o = complement(n, &[i, j]);
    let m = o.len();
    [(o[0], o[1], o[2]), (o[m - 1], o[m - 2], o[m - 3])]
}

fn key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

/// Reason the Alt-side thresholds exclude `(n, q)`, if they do.
pub(crate) fn alt_threshold(n: usize, q: u64) -> Option<String> {
    if n < 7 {
        Some(format!("n = {n} is below the threshold n >= 7 for Alt(n)"))
    } else if q == 2 && n < 10 {
        Some(format!(
            "n = {n} is below the threshold n >= 10 for Alt(n) in characteristic 2"
        ))
    } else {
        None
    }
}

/// `[A_{α⊥}, B_α] = 0`, checked on `α = (1 2)(3 4)` or on every bitransposition.
pub(crate) fn alt_hypothesis(m: &GModule, exhaustive: bool) -> Result<Option<Perm>, IdentifyError> {
    let n = m.n();
    let mut alphas = vec![[1, 2, 3, 4]];
    if exhaustive {
        alphas.clear();
        for i in 1..=n {
            for j in i + 1..=n {
                for a in i + 1..=n {
                    for b in a + 1..=n {
                        if a != j && b != j {
                            alphas.push([i, j, a, b]);
                        }
                    }
                }
            }
        }
    }
    for [i, j, a, b] in alphas {
        let alpha = bitransposition(n, i, j, a, b);
        let h = alt_on(n, &complement(n, &[i, j, a, b]));
        if !check_bracket_centralised(m, &alpha, &h)? {
            return Ok(Some(alpha));
        }
    }
    Ok(None)
}

/// The lines `L_(ij) = im(ad_(ij)(ab) ∘ ad_(ijk))` of an Alt(n)-module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSystem {
    pub n: usize,
    pub ell: usize,
    lines: BTreeMap<(usize, usize), Subspace>,
    /// Trace parts `L⁺_(ij) = L_(ij) ∩ C_V((ij))`, filled once the transpositions exist.
    pub plus: BTreeMap<(usize, usize), Subspace>,
}

impl LineSystem {
    pub fn compute(m: &GModule, opts: &IdentifyOptions) -> Result<LineSystem, IdentifyError> {
        let n = m.n();
        let mut lines = BTreeMap::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let [c1, c2] = aux_choices(n, i, j);
                let l1 = Self::line_with(m, i, j, c1)?;
                if l1.is_zero() {
                    return Err(IdentifyError::LineDegenerate(format!("L_({i} {j}) = 0")));
                }
                if Self::line_with(m, i, j, c2)? != l1 {
                    return Err(IdentifyError::HypothesisFailed(format!(
                        "L_({i} {j}) depends on the auxiliary points"
                    )));
                }
                lines.insert((i, j), l1);
            }
        }
        let ell = lines[&(1, 2)].dim();
        if let Some((&(i, j), _)) = lines.iter().find(|(_, l)| l.dim() != ell) {
            return Err(IdentifyError::LineDegenerate(format!(
                "dim L_({i} {j}) differs from dim L_(1 2)"
            )));
        }
        let ls = LineSystem {
            n,
            ell,
            lines,
            plus: BTreeMap::new(),
        };
        ls.check(m, opts.exhaustive)?;
        Ok(ls)
    }

    fn line_with(
        m: &GModule,
        i: usize,
        j: usize,
        (k, a, b): (usize, usize, usize),
    ) -> Result<Subspace, IdentifyError> {
        let n = m.n();
        let c = Perm::cycle(n, &[i, j, k])?;
        Ok(image(
            &(&m.ad(&bitransposition(n, i, j, a, b))? * &m.ad(&c)?),
        )?)
    }

    /// Disjointness, `ad_(ijk)(L_(ix)) = L_(ij)` and `L_(ij) ≤ L_(ik) + L_(jk)`.
    fn check(&self, m: &GModule, exhaustive: bool) -> Result<(), IdentifyError> {
        let n = self.n;
        let pairs: Vec<(usize, usize)> = self.lines.keys().copied().collect();
        let meets: Vec<((usize, usize), (usize, usize))> = if exhaustive {
            let mut v = Vec::new();
            for (x, &p) in pairs.iter().enumerate() {
                for &q in &pairs[x + 1..] {
                    v.push((p, q));
                }
            }
            v
        } else {
            vec![((1, 2), (3, 4)), ((1, 2), (2, 3))]
        };
        for (p, q) in meets {
            if !self
                .line(p.0, p.1)
                .intersect(self.line(q.0, q.1))?
                .is_zero()
            {
                return Err(IdentifyError::LineDegenerate(format!(
                    "L_({} {}) meets L_({} {})",
                    p.0, p.1, q.0, q.1
                )));
            }
        }
        let mut quads = vec![(1, 2, 3, 4)];
        if exhaustive {
            quads.clear();
            for i in 1..=n {
                for j in 1..=n {
                    for k in 1..=n {
                        for x in 1..=n {
                            let s = [i, j, k, x];
                            if (0..4).all(|a| (a + 1..4).all(|b| s[a] != s[b])) {
                                quads.push((i, j, k, x));
                            }
                        }
                    }
                }
            }
        }
        for (i, j, k, x) in quads {
            let c = m.ad(&Perm::cycle(n, &[i, j, k])?)?;
            if self.line(i, x).image_under(&c)? != *self.line(i, j) {
                return Err(IdentifyError::HypothesisFailed(format!(
                    "ad_({i} {j} {k}) does not map L_({i} {x}) onto L_({i} {j})"
                )));
            }
            if !self
                .line(i, j)
                .is_subspace_of(&self.line(i, k).sum(self.line(j, k))?)
            {
                return Err(IdentifyError::HypothesisFailed(format!(
                    "L_({i} {j}) is not inside L_({i} {k}) + L_({j} {k})"
                )));
            }
        }
        Ok(())
    }

    pub fn line(&self, i: usize, j: usize) -> &Subspace {
        &self.lines[&key(i, j)]
    }

    pub fn lines(&self) -> impl Iterator<Item = ((usize, usize), &Subspace)> {
        self.lines.iter().map(|(&k, v)| (k, v))
    }

    /// `V_I = Σ_{i<j in I} L_(ij)`.
    pub fn v_sum(&self, points: &[usize]) -> Result<Subspace, IdentifyError> {
        let mut acc = Subspace::zero(
            self.lines[&(1, 2)].ring(),
            self.lines[&(1, 2)].ambient_dim(),
        );
        for (x, &i) in points.iter().enumerate() {
            for &j in &points[x + 1..] {
                acc = acc.sum(self.line(i, j))?;
            }
        }
        Ok(acc)
    }

    /// `H_(ij) = Σ_{α ∈ E_ij} C_α` over the bitranspositions `α = (ij)(ab)`.
    pub fn hyperplane(&self, m: &GModule, i: usize, j: usize) -> Result<Subspace, IdentifyError> {
        let n = self.n;
        let o = complement(n, &[i, j]);
        let id = m.identity_matrix();
        let mut acc = Subspace::zero(m.ring(), m.dim());
        for (x, &a) in o.iter().enumerate() {
            for &b in &o[x + 1..] {
                acc = acc.sum(&image(&id.add(&m.act(&bitransposition(n, i, j, a, b))?))?)?;
            }
        }
        Ok(acc)
    }
}

/// A Sym(n)-action extending the input Alt(n)-action, in the same basis.
#[derive(Clone, Debug)]
pub struct Extension {
    pub module: GModule,
    /// The raw solution was negated to meet the convention "τ_(ij) inverts L_(ij)".
    pub twisted: bool,
    /// Characteristic 2: both conventions give the same action.
    pub convention_vacuous: bool,
    pub lines: LineSystem,
}

impl Extension {
    /// The extension under the opposite sign convention.
    pub fn other_convention(&self) -> Result<GModule, IdentifyError> {
        if self.convention_vacuous {
            Ok(self.module.clone())
        } else {
            Ok(self.module.sign_twist()?)
        }
    }
}

/// The map agreeing with `(ij)(ab)` on `V_{i,j,k}` and fixing `H_(ij)`.
fn tau(
    m: &GModule,
    lines: &LineSystem,
    h: &Subspace,
    i: usize,
    j: usize,
    (k, a, b): (usize, usize, usize),
) -> Result<Matrix, IdentifyError> {
    let w = lines.v_sum(&[i, j, k])?.basis_columns();
    let hb = h.basis_columns();
    let lhs = w.hstack(&hb);
    if rank(&lhs)? != m.dim() {
        return Err(IdentifyError::HypothesisFailed(format!(
            "V_{{{i},{j},{k}}} + H_({i} {j}) is not the whole space"
        )));
    }
    let rhs = (&m.act(&bitransposition(m.n(), i, j, a, b))? * &w).hstack(&hb);
    match solve(&lhs.transpose(), &rhs.transpose())? {
        Some(x) => Ok(x.transpose()),
        None => Err(IdentifyError::HypothesisFailed(format!(
            "(ij)(ab) does not fix V_{{{i},{j},{k}}} ∩ H_({i} {j}) for (i, j) = ({i}, {j})"
        ))),
    }
}

pub fn extend_alt_to_sym(m: &GModule, opts: &IdentifyOptions) -> Result<Extension, IdentifyError> {
    if m.group() != GroupKind::Alt {
        return Err(IdentifyError::Precondition(
            "extension needs an Alt(n)-module".into(),
        ));
    }
    let q = m.ring().char_value().unwrap_or(0);
    if let Some(why) = screen(m, opts)?.or_else(|| alt_threshold(m.n(), q)) {
        return Err(IdentifyError::Precondition(why));
    }
    if let Some(a) = alt_hypothesis(m, opts.exhaustive)? {
        return Err(IdentifyError::HypothesisFailed(format!(
            "[A_a, B_a] != 0 for a = {a}"
        )));
    }
    extend_unchecked(m, opts)
}

pub(crate) fn extend_unchecked(
    m: &GModule,
    opts: &IdentifyOptions,
) -> Result<Extension, IdentifyError> {
    let n = m.n();
    let ring = m.ring().clone();
    let mut lines = LineSystem::compute(m, opts)?;
    let mut images = Vec::with_capacity(n - 1);
    for g in canonical_generators(GroupKind::Sym, n) {
        let s = g.support();
        let (i, j) = (s[0], s[1]);
        let h = lines.hyperplane(m, i, j)?;
        let [c1, c2] = aux_choices(n, i, j);
        let t = tau(m, &lines, &h, i, j, c1)?;
        if tau(m, &lines, &h, i, j, c2)? != t {
            return Err(IdentifyError::HypothesisFailed(format!(
                "τ_({i} {j}) depends on the choice of k"
            )));
        }
        images.push(t);
    }
    let l12 = lines.line(1, 2).basis_columns();
    let moved = &images[0] * &l12;
    let q = ring.char_value().unwrap_or(0);
    let twisted = if moved == l12.neg() {
        false
    } else if moved == l12 {
        true
    } else {
        return Err(IdentifyError::RelationFailed(
            "τ_(1 2) neither fixes nor inverts L_(1 2)".into(),
        ));
    };
    let twisted = twisted && q != 2;
    if twisted {
        images = images.iter().map(Matrix::neg).collect();
    }
    let module = GModule::new(GroupKind::Sym, n, &ring, images).map_err(|e| match e {
        GModuleError::RelationViolation(r) => IdentifyError::RelationFailed(r),
        e => e.into(),
    })?;
    if module.restrict_to_alt()?.images() != m.images() {
        return Err(IdentifyError::RelationFailed(
            "restriction to Alt(n) differs from the input".into(),
        ));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let fixed = module.fixed_points(&[Perm::transposition(n, i, j)])?;
            lines
                .plus
                .insert((i, j), lines.line(i, j).intersect(&fixed)?);
        }
    }
    Ok(Extension {
        module,
        twisted,
        convention_vacuous: q == 2,
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::standard::build_rstd;

    #[test]
    fn lines_of_rstd7() {
        let gf3 = Ring::prime_field(3).unwrap();
        let m = build_rstd(7, &gf3).unwrap().restrict_to_alt().unwrap();
        let ls = LineSystem::compute(&m, &IdentifyOptions::default()).unwrap();
        assert_eq!(ls.ell, 1);
        // e_1 - e_2 in ustd coordinates is f_1 - f_2
        let mut v = vec![gf3.zero(); 6];
        v[0] = gf3.one();
        v[1] = gf3.from_i64(-1);
        assert!(ls.line(1, 2).contains_vector(&v));
    }

    #[test]
    fn recovers_rstd9() {
        let s = build_rstd(9, &Ring::prime_field(5).unwrap()).unwrap();
        let e =
            extend_alt_to_sym(&s.restrict_to_alt().unwrap(), &IdentifyOptions::default()).unwrap();
        assert!(e.module == s || e.module == s.sign_twist().unwrap());
        assert!(!e.convention_vacuous);
        assert!(e.lines.plus.values().all(Subspace::is_zero));
    }

    #[test]
    fn unique_in_char_two() {
        let s = build_rstd(11, &Ring::prime_field(2).unwrap()).unwrap();
        let e =
            extend_alt_to_sym(&s.restrict_to_alt().unwrap(), &IdentifyOptions::default()).unwrap();
        assert!(e.convention_vacuous);
        assert_eq!(e.module, s);
        assert_eq!(e.other_convention().unwrap(), s);
    }
}
