//! Prime-power fields: modulus polynomials and log/exp tables.
//!
//! Elements of GF(p^k) are encoded as integers `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! where `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` is the reduced polynomial
//! representative. The prime subfield is therefore encoded as `0..p`.

use super::RingError;

/// Largest field order for which tables are built when `k >= 2`.
pub(crate) const MAX_EXTENSION_ORDER: u64 = 1 << 20;

/// Built-in modulus table (Conway polynomials), coefficients low to high.
const BUILTIN_MODULI: &[(u64, u32, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 2, &[3, 6, 1]),
];

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p).
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let t = (lead * c) % p;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    poly_trim(r)
}

/// Monic polynomial of degree `deg` with lower coefficients given by the base-p digits of `index`.
fn monic_from_index(index: u64, deg: u32, p: u64) -> Vec<u64> {
    let mut coeffs = Vec::with_capacity(deg as usize + 1);
    let mut x = index;
    for _ in 0..deg {
        coeffs.push(x % p);
        x /= p;
    }
    coeffs.push(1);
    coeffs
}

/// Full irreducibility test by trial division with every monic polynomial of degree `<= deg/2`.
pub fn is_irreducible_mod_p(f: &[u64], p: u64) -> bool {
    let f = poly_trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let deg = (f.len() - 1) as u32;
    if deg == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for idx in 0..p.pow(d) {
            let g = monic_from_index(idx, d, p);
            if poly_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The fixed modulus polynomial for GF(p^k): the built-in table entry, otherwise the
/// smallest irreducible monic polynomial in lexicographic order of `(c_{k-1}, ..., c_0)`.
pub fn modulus_polynomial(p: u64, k: u32) -> Result<Vec<u64>, RingError> {
    if !is_prime(p) {
        return Err(RingError::NotPrime(p));
    }
    if k == 0 {
        return Err(RingError::Unsupported(format!("gf:{p}:0")));
    }
    if k == 1 {
        return Ok(vec![0, 1]);
    }
    if let Some((_, _, m)) = BUILTIN_MODULI
        .iter()
        .find(|(bp, bk, _)| *bp == p && *bk == k)
    {
        return Ok(m.to_vec());
    }
    let count = p
        .checked_pow(k)
        .filter(|&q| q <= MAX_EXTENSION_ORDER)
        .ok_or_else(|| RingError::Unsupported(format!("gf:{p}:{k} is too large")))?;
    for idx in 0..count {
        // c_0 is the least significant digit of idx, so c_{k-1} varies slowest
        let f = monic_from_index(idx, k, p);
        if is_irreducible_mod_p(&f, p) {
            return Ok(f);
        }
    }
    Err(RingError::Unsupported(format!(
        "no irreducible of degree {k} over GF({p})"
    )))
}

#[derive(Debug)]
pub(crate) struct FieldTables {
    pub(crate) p: u64,
    pub(crate) k: u32,
    pub(crate) q: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn digits(mut a: u64, p: u64, k: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(a % p);
        a /= p;
    }
    out
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn slow_mul(a: u64, b: u64, modulus: &[u64], p: u64, k: u32) -> u64 {
    let da = digits(a, p, k);
    let db = digits(b, p, k);
    let mut prod = vec![0u64; 2 * k as usize];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(k as usize, 0);
    undigits(&r, p)
}

impl FieldTables {
    pub(crate) fn build(p: u64, k: u32, modulus: &[u64]) -> FieldTables {
        let q = p.pow(k);
        let order = (q - 1) as usize;
        let mut exp = vec![0u32; order];
        let mut log = vec![0u32; q as usize];
        'candidates: for g in 2..q {
            let mut x = 1u64;
            for (i, slot) in exp.iter_mut().enumerate() {
                if i > 0 && x == 1 {
                    continue 'candidates;
                }
                *slot = x as u32;
                x = slow_mul(x, g, modulus, p, k);
            }
            if x != 1 {
                continue;
            }
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            return FieldTables { p, k, q, exp, log };
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub(crate) fn neg(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.k {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let l = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.q - 1);
        self.exp[l as usize] as u64
    }

    pub(crate) fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let l = (self.q - 1 - self.log[a as usize] as u64) % (self.q - 1);
        Some(self.exp[l as usize] as u64)
    }

    pub(crate) fn digits(&self, a: u64) -> Vec<u64> {
        digits(a, self.p, self.k)
    }

    pub(crate) fn from_digits(&self, d: &[u64]) -> u64 {
        undigits(d, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_moduli_are_irreducible() {
        for (p, k, m) in BUILTIN_MODULI {
            assert_eq!(m.len() as u32, k + 1);
            assert!(is_irreducible_mod_p(m, *p), "gf:{p}:{k}");
        }
    }

    #[test]
    fn searched_modulus_is_smallest() {
        // degree 2 over GF(11): x^2 + 1 is irreducible since -1 is not a square mod 11
        assert_eq!(modulus_polynomial(11, 2).unwrap(), vec![1, 0, 1]);
        // over GF(13), -1 is a square, and x^2 + 2 is irreducible (2 is a non-residue)
        assert_eq!(modulus_polynomial(13, 2).unwrap(), vec![2, 0, 1]);
        assert!(is_irreducible_mod_p(&modulus_polynomial(2, 7).unwrap(), 2));
    }

    #[test]
    fn reducible_detected() {
        assert!(!is_irreducible_mod_p(&[1, 0, 1], 2)); // (x+1)^2
        assert!(!is_irreducible_mod_p(&[1, 0, 0, 0, 1], 3)); // x^4+1 splits over GF(3) into quadratics
        assert!(modulus_polynomial(4, 2).is_err());
    }
}
