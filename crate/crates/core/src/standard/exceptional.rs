//! Exceptional small Alt(n)-modules behind the table of minimal dimensions.
//!
//! Each module is found the same way: close a known matrix group isomorphic to Alt(n)
//! (or containing it), then backtrack for images of `(1 2 k)` satisfying
//! `t_k^3 = (t_j t_k)^2 = 1`. That presentation defines Alt(n), so any solution is a
//! homomorphism; the result is certified independently before it is returned.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use crate::gmodule::GModule;
use crate::linalg::{self, Irreducibility, Matrix, Subspace};
use crate::permgroup::{canonical_generators, GroupKind};
use crate::ring::{Elem, Ring};

use super::{build_rstd, StandardError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExceptionalTag {
    Alt5Gf4Dim2,
    Alt5Gf5Dim3,
    Alt6Gf9AdjointDim3,
    Alt8Gf2NaturalDim4,
    Alt4Zmod4Dim2,
    /// Restriction of the Alt(6) adjoint module to Alt(5).
    Alt5Gf9Dim3,
    /// Restriction of the Alt(8) natural module to Alt(7).
    Alt7Gf2Dim4,
    /// A 3-dimensional summand of the exterior square of rstd(5, GF(49)).
    Alt5Gf49Dim3,
}

impl ExceptionalTag {
    pub const ALL: [ExceptionalTag; 8] = [
        ExceptionalTag::Alt5Gf4Dim2,
        ExceptionalTag::Alt5Gf5Dim3,
        ExceptionalTag::Alt6Gf9AdjointDim3,
        ExceptionalTag::Alt8Gf2NaturalDim4,
        ExceptionalTag::Alt4Zmod4Dim2,
        ExceptionalTag::Alt5Gf9Dim3,
        ExceptionalTag::Alt7Gf2Dim4,
        ExceptionalTag::Alt5Gf49Dim3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExceptionalTag::Alt5Gf4Dim2 => "Alt5_GF4_dim2",
            ExceptionalTag::Alt5Gf5Dim3 => "Alt5_GF5_dim3",
            ExceptionalTag::Alt6Gf9AdjointDim3 => "Alt6_GF9_adjoint_dim3",
            ExceptionalTag::Alt8Gf2NaturalDim4 => "Alt8_GF2_natural_dim4",
            ExceptionalTag::Alt4Zmod4Dim2 => "Alt4_Zmod4_dim2",
            ExceptionalTag::Alt5Gf9Dim3 => "Alt5_GF9_dim3",
            ExceptionalTag::Alt7Gf2Dim4 => "Alt7_GF2_dim4",
            ExceptionalTag::Alt5Gf49Dim3 => "Alt5_GF49_dim3",
        }
    }

    /// `(n, d)`.
    pub fn shape(self) -> (usize, usize) {
        match self {
            ExceptionalTag::Alt5Gf4Dim2 => (5, 2),
            ExceptionalTag::Alt5Gf5Dim3
            | ExceptionalTag::Alt5Gf9Dim3
            | ExceptionalTag::Alt5Gf49Dim3 => (5, 3),
            ExceptionalTag::Alt6Gf9AdjointDim3 => (6, 3),
            ExceptionalTag::Alt8Gf2NaturalDim4 => (8, 4),
            ExceptionalTag::Alt7Gf2Dim4 => (7, 4),
            ExceptionalTag::Alt4Zmod4Dim2 => (4, 2),
        }
    }

    pub fn ring(self) -> Ring {
        let r = match self {
            ExceptionalTag::Alt5Gf4Dim2 => Ring::gf(2, 2),
            ExceptionalTag::Alt5Gf5Dim3 => Ring::gf(5, 1),
            ExceptionalTag::Alt6Gf9AdjointDim3 | ExceptionalTag::Alt5Gf9Dim3 => Ring::gf(3, 2),
            ExceptionalTag::Alt8Gf2NaturalDim4 | ExceptionalTag::Alt7Gf2Dim4 => Ring::gf(2, 1),
            ExceptionalTag::Alt4Zmod4Dim2 => Ring::zmod(4),
            ExceptionalTag::Alt5Gf49Dim3 => Ring::gf(7, 2),
        };
        r.expect("built-in ring")
    }
}

impl fmt::Display for ExceptionalTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExceptionalTag {
    type Err = StandardError;
    fn from_str(s: &str) -> Result<ExceptionalTag, StandardError> {
        ExceptionalTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| StandardError::InvalidSpec(format!("unknown exceptional module `{s}`")))
    }
}

fn sort_key(m: &Matrix) -> Vec<u64> {
    m.data().iter().map(Elem::as_u64).collect()
}

/// All elements of the group generated by `gens`, sorted; fails beyond `limit` elements.
fn closure(gens: &[Matrix], limit: usize) -> Result<Vec<Matrix>, StandardError> {
    let id = Matrix::identity(gens[0].ring(), gens[0].rows());
    let mut seen: HashSet<Matrix> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return Err(StandardError::SearchFailed(format!(
                        "group exceeds {limit} elements"
                    )));
                }
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Matrix> = seen.into_iter().collect();
    out.sort_by_cached_key(sort_key);
    Ok(out)
}

fn order_three(group: &[Matrix]) -> Vec<Matrix> {
    group
        .iter()
        .filter(|m| !m.is_identity() && m.pow(3).is_identity())
        .cloned()
        .collect()
}

fn extend(
    slots: usize,
    chosen: &mut Vec<Matrix>,
    cands: &[Matrix],
    accept: &dyn Fn(&[Matrix]) -> bool,
) -> bool {
    if chosen.len() == slots {
        return accept(chosen);
    }
    for c in cands {
        if chosen.iter().all(|t| (t * c).pow(2).is_identity()) {
            chosen.push(c.clone());
            if extend(slots, chosen, cands, accept) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Lexicographically first images of `(1 2 3), ..., (1 2 n)` among `cands` that are accepted.
fn carmichael_search(
    n: usize,
    cands: &[Matrix],
    accept: &dyn Fn(&[Matrix]) -> bool,
) -> Result<Vec<Matrix>, StandardError> {
    let mut chosen = Vec::new();
    if extend(n - 2, &mut chosen, cands, accept) {
        Ok(chosen)
    } else {
        Err(StandardError::SearchFailed(format!(
            "no images of the Alt({n}) generators found"
        )))
    }
}

fn upper(ring: &Ring, t: u64) -> Matrix {
    Matrix::from_fn(ring, 2, 2, |i, j| {
        if i == j {
            ring.one()
        } else if i == 0 {
            Elem::Int(t)
        } else {
            ring.zero()
        }
    })
}

fn lower(ring: &Ring, t: u64) -> Matrix {
    upper(ring, t).transpose()
}

/// `X -> g X g^-1` on trace-zero 2x2 matrices, basis `E, H, F`.
fn adjoint(g: &Matrix) -> Result<Matrix, StandardError> {
    let r = g.ring().clone();
    let gi = linalg::inverse(g)?;
    let (one, zero) = (r.one(), r.zero());
    let basis = [
        [[zero.clone(), one.clone()], [zero.clone(), zero.clone()]],
        [[one.clone(), zero.clone()], [zero.clone(), r.neg(&one)]],
        [[zero.clone(), zero.clone()], [one.clone(), zero.clone()]],
    ];
    let mut out = Matrix::zeros(&r, 3, 3);
    for (j, b) in basis.iter().enumerate() {
        let x = Matrix::from_fn(&r, 2, 2, |i, k| b[i][k].clone());
        let y = &(g * &x) * &gi;
        // y = [[a, b], [c, -a]] has coordinates (b, a, c)
        out.set(0, j, y.get(0, 1).clone());
        out.set(1, j, y.get(0, 0).clone());
        out.set(2, j, y.get(1, 0).clone());
    }
    Ok(out)
}

fn alt_module(n: usize, ring: &Ring, images: Vec<Matrix>) -> Result<GModule, StandardError> {
    Ok(GModule::new(GroupKind::Alt, n, ring, images)?)
}

fn search_simple(
    n: usize,
    ring: &Ring,
    group_gens: Vec<Matrix>,
    expected: usize,
) -> Result<GModule, StandardError> {
    let group = closure(&group_gens, expected)?;
    if group.len() != expected {
        return Err(StandardError::SearchFailed(format!(
            "closure has {} elements, expected {expected}",
            group.len()
        )));
    }
    // Alt(n) is simple for n >= 5, so any nontrivial solution is faithful
    let images = carmichael_search(n, &order_three(&group), &|_| true)?;
    alt_module(n, ring, images)
}

fn build_alt5_gf4() -> Result<GModule, StandardError> {
    let r = ExceptionalTag::Alt5Gf4Dim2.ring();
    // SL_2(4), with ω encoded as 2
    search_simple(5, &r, vec![upper(&r, 1), upper(&r, 2), lower(&r, 1)], 60)
}

fn build_alt5_gf5() -> Result<GModule, StandardError> {
    let r = ExceptionalTag::Alt5Gf5Dim3.ring();
    // PSL_2(5) in its adjoint action
    let gens = vec![adjoint(&upper(&r, 1))?, adjoint(&lower(&r, 1))?];
    search_simple(5, &r, gens, 60)
}

fn build_alt6_gf9() -> Result<GModule, StandardError> {
    let r = ExceptionalTag::Alt6Gf9AdjointDim3.ring();
    // PSL_2(9) adjoint; the generator x of GF(9) is encoded as 3
    let gens = [upper(&r, 1), upper(&r, 3), lower(&r, 1), lower(&r, 3)]
        .iter()
        .map(adjoint)
        .collect::<Result<Vec<_>, _>>()?;
    search_simple(6, &r, gens, 360)
}

fn build_alt8_gf2() -> Result<GModule, StandardError> {
    let r = ExceptionalTag::Alt8Gf2NaturalDim4.ring();
    // GL_4(2) = SL_4(2), generated by the elementary transvections
    let mut gens = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                let mut t = Matrix::identity(&r, 4);
                t.set(i, j, r.one());
                gens.push(t);
            }
        }
    }
    search_simple(8, &r, gens, 20160)
}

fn build_alt4_z4() -> Result<GModule, StandardError> {
    let r = ExceptionalTag::Alt4Zmod4Dim2.ring();
    let all: Vec<Matrix> = (0..256u64)
        .map(|x| Matrix::from_fn(&r, 2, 2, |i, j| Elem::Int((x >> (2 * (2 * i + j))) & 3)))
        .filter(|m| {
            let det = (m.get(0, 0).as_u64() * m.get(1, 1).as_u64() + 4 * 4
                - m.get(0, 1).as_u64() * m.get(1, 0).as_u64())
                % 4;
            det % 2 == 1
        })
        .collect();
    let mut cands = order_three(&all);
    cands.sort_by_cached_key(sort_key);
    // Alt(4) is not simple: keep searching until the action is faithful
    let accept = |imgs: &[Matrix]| {
        GModule::new(GroupKind::Alt, 4, &r, imgs.to_vec())
            .ok()
            .and_then(|m| m.is_faithful().ok())
            .unwrap_or(false)
    };
    let images = carmichael_search(4, &cands, &accept)?;
    alt_module(4, &r, images)
}

/// Restriction of an Alt(n)-module to Alt(n-1) on the first n-1 points.
fn restrict_point_stabiliser(m: &GModule) -> Result<GModule, StandardError> {
    let mut images = m.images().to_vec();
    images.pop();
    alt_module(m.n() - 1, m.ring(), images)
}

/// `Λ² V` in the basis `e_i ∧ e_j`, `i < j`.
fn exterior_square(m: &GModule) -> Result<GModule, StandardError> {
    let d = m.dim();
    let r = m.ring().clone();
    let pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .collect();
    let images = m
        .images()
        .iter()
        .map(|g| {
            Matrix::from_fn(&r, pairs.len(), pairs.len(), |row, col| {
                let (a, b) = pairs[row];
                let (i, j) = pairs[col];
                // coefficient of e_a ∧ e_b in g e_i ∧ g e_j
                r.sub(
                    &r.mul(g.get(a, i), g.get(b, j)),
                    &r.mul(g.get(b, i), g.get(a, j)),
                )
            })
        })
        .collect();
    Ok(GModule::new(m.group(), m.n(), &r, images)?)
}

fn build_alt5_gf49() -> Result<GModule, StandardError> {
    let r = ExceptionalTag::Alt5Gf49Dim3.ring();
    let l2 = exterior_square(&build_rstd(5, &r)?.restrict_to_alt()?)?;
    // Λ² of the 4-dimensional module is 3 + 3' once √5 is available
    for seed in 0..8 {
        if let Irreducibility::Reducible(w) = l2.irreducibility(seed)? {
            if w.dim() == 3 {
                return Ok(l2.submodule(&w)?);
            }
            let other = complement_summand(&l2, &w)?;
            if let Some(w3) = other {
                return Ok(l2.submodule(&w3)?);
            }
        }
    }
    Err(StandardError::SearchFailed(
        "no 3-dimensional summand of Λ² rstd(5, GF(49))".into(),
    ))
}

/// Any 3-dimensional submodule found by spinning basis vectors of a complement.
fn complement_summand(m: &GModule, w: &Subspace) -> Result<Option<Subspace>, StandardError> {
    let d = m.dim();
    for i in 0..d {
        let mut e = vec![m.ring().zero(); d];
        e[i] = m.ring().one();
        let s = m.spin_vector(&e)?;
        if s.dim() == 3 {
            return Ok(Some(s));
        }
        let t = s.intersect(w)?;
        if t.dim() == 3 {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Checks that the module is faithful, irreducible when over a field, and of the tagged shape.
fn certify(tag: ExceptionalTag, m: &GModule) -> Result<(), StandardError> {
    let (n, d) = tag.shape();
    let fail = |msg: String| Err(StandardError::CertificationFailed(format!("{tag}: {msg}")));
    if m.n() != n || m.dim() != d || m.group() != GroupKind::Alt || m.ring() != &tag.ring() {
        return fail(format!("built {:?}", m));
    }
    m.verify()?;
    if !m.is_faithful()? {
        return fail("not faithful".into());
    }
    if m.ring().is_field() && !m.irreducibility(0)?.is_irreducible() {
        return fail("not irreducible".into());
    }
    Ok(())
}

fn construct(tag: ExceptionalTag) -> Result<GModule, StandardError> {
    let m = match tag {
        ExceptionalTag::Alt5Gf4Dim2 => build_alt5_gf4()?,
        ExceptionalTag::Alt5Gf5Dim3 => build_alt5_gf5()?,
        ExceptionalTag::Alt6Gf9AdjointDim3 => build_alt6_gf9()?,
        ExceptionalTag::Alt8Gf2NaturalDim4 => build_alt8_gf2()?,
        ExceptionalTag::Alt4Zmod4Dim2 => build_alt4_z4()?,
        ExceptionalTag::Alt5Gf9Dim3 => {
            restrict_point_stabiliser(&build_exceptional(ExceptionalTag::Alt6Gf9AdjointDim3)?)?
        }
        ExceptionalTag::Alt7Gf2Dim4 => {
            restrict_point_stabiliser(&build_exceptional(ExceptionalTag::Alt8Gf2NaturalDim4)?)?
        }
        ExceptionalTag::Alt5Gf49Dim3 => build_alt5_gf49()?,
    };
    certify(tag, &m)?;
    Ok(m)
}

/// Builds (once) and returns a certified exceptional module.
pub fn build_exceptional(tag: ExceptionalTag) -> Result<GModule, StandardError> {
    static CACHE: OnceLock<Mutex<HashMap<ExceptionalTag, GModule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(m) = cache.lock().unwrap().get(&tag) {
        return Ok(m.clone());
    }
    // built outside the lock: derived tags recurse into their parents
    let m = construct(tag)?;
    cache.lock().unwrap().insert(tag, m.clone());
    Ok(m)
}

/// Kernel check for the action on `V/2V` (equivalently `2V`) of a Z/4 module: true iff some
/// nontrivial element acts trivially mod 2.
pub fn mod2_reduction_has_kernel(m: &GModule) -> Result<bool, StandardError> {
    let gens = canonical_generators(m.group(), m.n());
    let group = crate::permgroup::generated_group(m.n(), &gens);
    for s in group.iter().filter(|s| !s.is_identity()) {
        let a = m.act(s)?;
        if a.data().iter().enumerate().all(|(idx, e)| {
            let (i, j) = (idx / a.cols(), idx % a.cols());
            e.as_u64() % 2 == u64::from(i == j)
        }) {
            return Ok(true);
        }
    }
    Ok(false)
}
