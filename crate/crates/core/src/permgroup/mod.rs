//! Permutations of `{1..n}`, the canonical generators of Sym(n) and Alt(n), and the
//! subgroup gadgets used by the identification pipeline.

mod outer;
mod perm;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use outer::{outer_automorphism_sym6, outer_automorphism_sym6_inverse, OuterAutomorphism};
pub use perm::Perm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("{0} is odd and does not lie in Alt(n)")]
    OddPermutationInAlt(String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("bad cycle notation: {0}")]
    BadCycle(String),
    #[error("bad support: {0}")]
    BadSupport(String),
    #[error("search failed: {0}")]
    SearchFailed(String),
    #[error("unknown group kind `{0}`")]
    BadGroup(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Sym,
    Alt,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Sym => "sym",
            GroupKind::Alt => "alt",
        })
    }
}

impl FromStr for GroupKind {
    type Err = PermError;
    fn from_str(s: &str) -> Result<GroupKind, PermError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sym" => Ok(GroupKind::Sym),
            "alt" => Ok(GroupKind::Alt),
            other => Err(PermError::BadGroup(other.to_string())),
        }
    }
}

/// Canonical generators: `(i, i+1)` for Sym(n), `(1, 2, k)` for Alt(n), `k = 3..n`.
pub fn canonical_generators(kind: GroupKind, n: usize) -> Vec<Perm> {
    match kind {
        GroupKind::Sym => (1..n).map(|i| Perm::transposition(n, i, i + 1)).collect(),
        GroupKind::Alt => (3..=n)
            .map(|k| Perm::cycle(n, &[1, 2, k]).expect("valid 3-cycle"))
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub kind: GroupKind,
    pub n: usize,
    pub gens: Vec<Perm>,
}

impl GeneratorSet {
    pub fn new(kind: GroupKind, n: usize) -> GeneratorSet {
        GeneratorSet {
            kind,
            n,
            gens: canonical_generators(kind, n),
        }
    }

    pub fn contains(&self, s: &Perm) -> bool {
        s.degree() == self.n && (self.kind == GroupKind::Sym || s.is_even())
    }

    pub fn group_order(&self) -> u64 {
        let f: u64 = (1..=self.n as u64).product();
        match self.kind {
            GroupKind::Sym => f,
            GroupKind::Alt => f / 2,
        }
    }

    /// All elements of the group (only sensible for small n).
    pub fn elements(&self) -> Vec<Perm> {
        Perm::all(self.n)
            .into_iter()
            .filter(|p| self.contains(p))
            .collect()
    }

    pub fn factorize(&self, s: &Perm) -> Result<Vec<usize>, PermError> {
        factorize(s, self.kind)
    }

    /// Product of generators along a word; `word[0]` is the leftmost factor.
    pub fn evaluate(&self, word: &[usize]) -> Perm {
        word.iter()
            .fold(Perm::identity(self.n), |acc, &i| acc.compose(&self.gens[i]))
    }
}

/// Word in the canonical generators whose product equals `s`.
///
/// Sym: bubble sort of the one-line notation. The swaps `b_1, ..., b_m` satisfy
/// `s b_1 ... b_m = 1`, so the word is the swap list reversed.
/// Alt: cycles are split into transpositions, paired into 3-cycles, and each 3-cycle is
/// rewritten in the `(1 2 k)`.
pub fn factorize(s: &Perm, kind: GroupKind) -> Result<Vec<usize>, PermError> {
    match kind {
        GroupKind::Sym => Ok(factorize_sym(s)),
        GroupKind::Alt => {
            if !s.is_even() {
                return Err(PermError::OddPermutationInAlt(s.to_string()));
            }
            Ok(factorize_alt(s))
        }
    }
}

fn factorize_sym(s: &Perm) -> Vec<usize> {
    let mut a = s.images();
    let mut swaps = Vec::new();
    let n = a.len();
    for end in (1..n).rev() {
        for i in 0..end {
            if a[i] > a[i + 1] {
                a.swap(i, i + 1);
                swaps.push(i);
            }
        }
    }
    swaps.reverse();
    swaps
}

/// Word for the 3-cycle `(a b c)`; generator `(1 2 k)` has index `k - 3`.
fn three_cycle_word(a: usize, b: usize, c: usize) -> Vec<usize> {
    let t = |k: usize| k - 3;
    // rotate so that 1 comes first when present
    let (x, y, z) = if b == 1 {
        (b, c, a)
    } else if c == 1 {
        (c, a, b)
    } else {
        (a, b, c)
    };
    if x != 1 {
        // (x y z) = (1 x y)(1 y z)
        let mut w = three_cycle_word(1, x, y);
        w.extend(three_cycle_word(1, y, z));
        return w;
    }
    if y == 2 {
        vec![t(z)]
    } else if z == 2 {
        vec![t(y), t(y)]
    } else {
        // (1 y z) = t_z^{-1} t_y t_z
        vec![t(z), t(z), t(y), t(z)]
    }
}

fn factorize_alt(s: &Perm) -> Vec<usize> {
    let n = s.degree();
    let mut transpositions = Vec::new();
    for c in s.cycles() {
        // (a1 ... ar) = (a1 a2)(a2 a3)...(a_{r-1} a_r)
        for w in c.windows(2) {
            transpositions.push((w[0], w[1]));
        }
    }
    let mut word = Vec::new();
    for pair in transpositions.chunks(2) {
        let (p, q) = (pair[0], pair[1]);
        let prod = Perm::transposition(n, p.0, p.1).compose(&Perm::transposition(n, q.0, q.1));
        if prod.is_identity() {
            continue;
        }
        let cycles = prod.cycles();
        if cycles.len() == 1 {
            let c = &cycles[0];
            word.extend(three_cycle_word(c[0], c[1], c[2]));
        } else {
            // (a b)(c d) = (a b c)(b c d)
            let (a, b, c, d) = (p.0, p.1, q.0, q.1);
            word.extend(three_cycle_word(a, b, c));
            word.extend(three_cycle_word(b, c, d));
        }
    }
    word
}

/// Generators of `Σ_I^{(kℓ)}`: each adjacent transposition `t` of Sym(I) (I sorted) times `(k ℓ)`.
pub fn sigma_subgroup(
    n: usize,
    index_set: &[usize],
    k: usize,
    l: usize,
) -> Result<Vec<Perm>, PermError> {
    let mut idx = index_set.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if idx.len() != index_set.len() || idx.len() + 2 > n {
        return Err(PermError::BadSupport(format!(
            "|I| = {} must be distinct and at most n - 2",
            index_set.len()
        )));
    }
    if k == l || idx.contains(&k) || idx.contains(&l) || [k, l].iter().any(|&x| x == 0 || x > n) {
        return Err(PermError::BadSupport(format!(
            "({k} {l}) must be a transposition outside I"
        )));
    }
    if idx.iter().any(|&x| x == 0 || x > n) {
        return Err(PermError::BadSupport(format!("I must lie in 1..{n}")));
    }
    let kl = Perm::transposition(n, k, l);
    Ok(idx
        .windows(2)
        .map(|w| Perm::transposition(n, w[0], w[1]).compose(&kl))
        .collect())
}

/// The Klein four-group `K_{ijkℓ}` with its three bitranspositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleinFour {
    pub support: [usize; 4],
    pub elements: [Perm; 3],
}

impl KleinFour {
    pub fn new(n: usize, support: [usize; 4]) -> Result<KleinFour, PermError> {
        let mut s = support.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() != 4 || s.iter().any(|&x| x == 0 || x > n) {
            return Err(PermError::BadSupport(format!(
                "{support:?} must be four distinct points of 1..{n}"
            )));
        }
        let [i, j, k, l] = support;
        let bi = |a, b, c, d| Perm::transposition(n, a, b).compose(&Perm::transposition(n, c, d));
        Ok(KleinFour {
            support,
            elements: [bi(i, j, k, l), bi(i, k, j, l), bi(i, l, j, k)],
        })
    }
}

/// Generators of `Sym(I)`: transpositions of consecutive points of I (sorted).
pub fn sym_on(n: usize, points: &[usize]) -> Vec<Perm> {
    let mut p = points.to_vec();
    p.sort_unstable();
    p.windows(2)
        .map(|w| Perm::transposition(n, w[0], w[1]))
        .collect()
}

/// Generators of `Alt(I)`: `(a b c)` for the two least points a, b of I and every other c.
pub fn alt_on(n: usize, points: &[usize]) -> Vec<Perm> {
    let mut p = points.to_vec();
    p.sort_unstable();
    if p.len() < 3 {
        return Vec::new();
    }
    p[2..]
        .iter()
        .map(|&c| Perm::cycle(n, &[p[0], p[1], c]).expect("distinct points"))
        .collect()
}

/// Points of `1..=n` outside `support`.
pub fn complement(n: usize, support: &[usize]) -> Vec<usize> {
    (1..=n).filter(|x| !support.contains(x)).collect()
}

/// Closure of a generating set (small groups only).
pub fn generated_group(n: usize, gens: &[Perm]) -> Vec<Perm> {
    let mut seen = std::collections::HashSet::new();
    let id = Perm::identity(n);
    seen.insert(id.clone());
    let mut queue = vec![id];
    let mut next = 0;
    while next < queue.len() {
        let x = queue[next].clone();
        next += 1;
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    queue.sort();
    queue
}
