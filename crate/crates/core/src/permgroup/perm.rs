use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use super::PermError;

/// Permutation of `{1..n}` acting on the left: `(a * b)(x) = a(b(x))`.
/// Stored 0-based; all public point arguments are 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        assert!(n <= 255, "degree too large");
        Perm {
            images: (0..n as u8).collect(),
        }
    }

    /// From 1-based images: `images[i-1] = σ(i)`.
    pub fn from_images(images: &[usize]) -> Result<Perm, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(PermError::BadCycle(format!(
                    "{images:?} is not a permutation"
                )));
            }
            seen[x - 1] = true;
        }
        Ok(Perm {
            images: images.iter().map(|&x| (x - 1) as u8).collect(),
        })
    }

    /// A single cycle `(a1 a2 ... ar)` on `{1..n}`.
    pub fn cycle(n: usize, points: &[usize]) -> Result<Perm, PermError> {
        let mut p = Perm::identity(n);
        let mut seen = vec![false; n + 1];
        for &x in points {
            if x == 0 || x > n {
                return Err(PermError::BadCycle(format!("point {x} outside 1..{n}")));
            }
            if seen[x] {
                return Err(PermError::BadCycle(format!(
                    "point {x} repeated in a cycle"
                )));
            }
            seen[x] = true;
        }
        for (i, &x) in points.iter().enumerate() {
            let y = points[(i + 1) % points.len()];
            p.images[x - 1] = (y - 1) as u8;
        }
        Ok(p)
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Perm {
        Perm::cycle(n, &[i, j]).expect("valid transposition")
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Perm {
        let mut images: Vec<u8> = (0..n as u8).collect();
        images.shuffle(rng);
        Perm { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// σ(i) for 1-based `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    /// 1-based image array.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Perm::identity(self.degree());
        for _ in 0..e.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// `g σ g⁻¹`, which sends `g(x)` to `g(σ(x))`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.compose(self).compose(&g.inverse())
    }

    /// Nontrivial cycles, each starting at its least point, ordered by least point (1-based).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut c = vec![start + 1];
            seen[start] = true;
            let mut x = self.images[start] as usize;
            while x != start {
                seen[x] = true;
                c.push(x + 1);
                x = self.images[x] as usize;
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        let moved: usize = t.iter().sum();
        t.extend(std::iter::repeat_n(1, self.degree() - moved));
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// ε(σ) ∈ {1, -1}, from the cycle type.
    pub fn sign(&self) -> i8 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }

    /// Moved points (1-based), ascending.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.degree())
            .filter(|&i| self.apply(i) != i)
            .collect()
    }

    pub fn is_disjoint_from(&self, o: &Perm) -> bool {
        let s = self.support();
        o.support().iter().all(|x| !s.contains(x))
    }

    pub fn commutes_with(&self, o: &Perm) -> bool {
        self.compose(o) == o.compose(self)
    }

    /// Parses cycle notation such as `(1 2)(3 4)`; `()` is the identity. Cycles are
    /// composed right to left like any other product.
    pub fn parse(s: &str, n: usize) -> Result<Perm, PermError> {
        let bad = |m: &str| PermError::BadCycle(format!("`{s}`: {m}"));
        let t = s.trim();
        if t.is_empty() {
            return Err(bad("empty"));
        }
        let mut acc = Perm::identity(n);
        let mut rest = t;
        while !rest.is_empty() {
            let r = rest.trim_start();
            let Some(body) = r.strip_prefix('(') else {
                return Err(bad("expected `(`"));
            };
            let close = body.find(')').ok_or_else(|| bad("missing `)`"))?;
            let pts: Vec<usize> = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<usize>().map_err(|_| bad("bad point")))
                .collect::<Result<_, _>>()?;
            if !pts.is_empty() {
                acc = acc.compose(&Perm::cycle(n, &pts)?);
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(acc)
    }

    /// All permutations of degree `n` in lexicographic order of their image arrays.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut cur: Vec<u8> = (0..n as u8).collect();
        let mut out = vec![Perm {
            images: cur.clone(),
        }];
        loop {
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Perm {
                images: cur.clone(),
            });
        }
    }
}

impl Mul for &Perm {
    type Output = Perm;
    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

/// Parses with the degree taken as the largest point mentioned.
impl FromStr for Perm {
    type Err = PermError;
    fn from_str(s: &str) -> Result<Perm, PermError> {
        let n = s
            .split(|c: char| !c.is_ascii_digit())
            .filter_map(|x| x.parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        Perm::parse(s, n)
    }
}
