//! Univariate polynomials over a field (coefficients low to high) and characteristic polynomials.

use crate::ring::{Elem, Ring};

use super::Matrix;

/// Monic polynomial helper type: `coeffs[i]` is the coefficient of `x^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<Elem>,
}

impl Poly {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn trim(mut self, ring: &Ring) -> Poly {
        while self.coeffs.len() > 1 && ring.is_zero(self.coeffs.last().unwrap()) {
            self.coeffs.pop();
        }
        self
    }

    /// Remainder of `self` modulo the monic polynomial `m`.
    pub fn rem_monic(&self, m: &Poly, ring: &Ring) -> Poly {
        let mut r = self.coeffs.clone();
        let dm = m.degree();
        while r.len() > dm && r.len() > 1 {
            let lead = r.last().unwrap().clone();
            let shift = r.len() - 1 - dm;
            if !ring.is_zero(&lead) {
                for (i, c) in m.coeffs.iter().enumerate() {
                    r[shift + i] = ring.sub(&r[shift + i], &ring.mul(&lead, c));
                }
            }
            r.pop();
        }
        if r.is_empty() {
            r.push(ring.zero());
        }
        Poly { coeffs: r }.trim(ring)
    }

    pub fn is_zero(&self, ring: &Ring) -> bool {
        self.coeffs.iter().all(|c| ring.is_zero(c))
    }

    pub fn eval(&self, ring: &Ring, x: &Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, x), c))
    }

    /// `p(a)` by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let ring = a.ring();
        let n = a.rows();
        let mut acc = Matrix::zeros(ring, n, n);
        for c in self.coeffs.iter().rev() {
            acc = (&acc * a).add(&Matrix::scalar_matrix(ring, n, c));
        }
        acc
    }
}

/// Characteristic polynomial `det(xI - a)` via reduction to upper Hessenberg form.
pub fn charpoly(a: &Matrix) -> Poly {
    assert!(a.is_square(), "charpoly of a non-square matrix");
    let ring = a.ring().clone();
    let n = a.rows();
    let mut h = a.clone();
    // similarity transform to upper Hessenberg form
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| !ring.is_zero(h.get(i, m - 1))) else {
            continue;
        };
        if i != m {
            for j in 0..n {
                let (x, y) = (h.get(i, j).clone(), h.get(m, j).clone());
                h.set(i, j, y);
                h.set(m, j, x);
            }
            for r in 0..n {
                let (x, y) = (h.get(r, i).clone(), h.get(r, m).clone());
                h.set(r, i, y);
                h.set(r, m, x);
            }
        }
        let piv_inv = ring.inv(h.get(m, m - 1)).expect("nonzero pivot");
        for i in m + 1..n {
            if ring.is_zero(h.get(i, m - 1)) {
                continue;
            }
            let u = ring.mul(h.get(i, m - 1), &piv_inv);
            for j in 0..n {
                let v = ring.sub(h.get(i, j), &ring.mul(&u, h.get(m, j)));
                h.set(i, j, v);
            }
            for r in 0..n {
                let v = ring.add(h.get(r, m), &ring.mul(&u, h.get(r, i)));
                h.set(r, m, v);
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - sum_i h_{m-i,m} (prod_{j=m-i+1}^{m} h_{j,j-1}) p_{m-i-1}  (1-based)
    let hh = |i: usize, j: usize| h.get(i - 1, j - 1).clone();
    let mut ps: Vec<Vec<Elem>> = vec![vec![ring.one()]];
    for m in 1..=n {
        let prev = &ps[m - 1];
        let mut p = vec![ring.zero(); m + 1];
        for (k, c) in prev.iter().enumerate() {
            p[k + 1] = ring.add(&p[k + 1], c);
            p[k] = ring.sub(&p[k], &ring.mul(&hh(m, m), c));
        }
        let mut t = ring.one();
        for i in 1..m {
            t = ring.mul(&t, &hh(m - i + 1, m - i));
            let coef = ring.mul(&hh(m - i, m), &t);
            if ring.is_zero(&coef) {
                continue;
            }
            for (k, c) in ps[m - i - 1].iter().enumerate() {
                p[k] = ring.sub(&p[k], &ring.mul(&coef, c));
            }
        }
        ps.push(p);
    }
    Poly {
        coeffs: ps.pop().unwrap(),
    }
}

fn poly_from(ring: &Ring, mut c: Vec<Elem>) -> Poly {
    if c.is_empty() {
        c.push(ring.zero());
    }
    Poly { coeffs: c }.trim(ring)
}

pub fn poly_mul(ring: &Ring, a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![ring.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
        }
    }
    poly_from(ring, out)
}

pub fn poly_sub(ring: &Ring, a: &Poly, b: &Poly) -> Poly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let z = ring.zero();
    let out = (0..n)
        .map(|i| ring.sub(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z)))
        .collect();
    poly_from(ring, out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn poly_divmod(ring: &Ring, a: &Poly, b: &Poly) -> (Poly, Poly) {
    let lead_inv = ring.inv(b.coeffs.last().unwrap()).expect("nonzero divisor");
    let db = b.degree();
    let mut r = a.coeffs.clone();
    if r.len() <= db || a.is_zero(ring) {
        return (poly_from(ring, vec![]), a.clone());
    }
    let mut q = vec![ring.zero(); r.len() - db];
    while r.len() > db && !(r.len() == 1 && ring.is_zero(&r[0])) {
        let shift = r.len() - 1 - db;
        let f = ring.mul(r.last().unwrap(), &lead_inv);
        q[shift] = f.clone();
        for (i, c) in b.coeffs.iter().enumerate() {
            r[shift + i] = ring.sub(&r[shift + i], &ring.mul(&f, c));
        }
        r.pop();
        if r.is_empty() {
            break;
        }
    }
    (poly_from(ring, q), poly_from(ring, r))
}

fn make_monic(ring: &Ring, a: Poly) -> Poly {
    let inv = ring.inv(a.coeffs.last().unwrap()).expect("nonzero");
    Poly {
        coeffs: a.coeffs.iter().map(|c| ring.mul(c, &inv)).collect(),
    }
}

/// Monic gcd (the zero polynomial if both inputs vanish).
pub fn poly_gcd(ring: &Ring, a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero(ring) {
        let (_, r) = poly_divmod(ring, &x, &y);
        x = y;
        y = r;
    }
    if x.is_zero(ring) {
        x
    } else {
        make_monic(ring, x)
    }
}

fn pow_mod(ring: &Ring, base: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut acc = poly_from(ring, vec![ring.one()]);
    let mut b = poly_divmod(ring, base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_divmod(ring, &poly_mul(ring, &acc, &b), m).1;
        }
        b = poly_divmod(ring, &poly_mul(ring, &b, &b), m).1;
        e >>= 1;
    }
    acc
}

/// Irreducible factors of `c` over a finite field that can be isolated cheaply:
/// distinct-degree factorization, keeping degree-i parts that are a single factor, and
/// trial division by enumerated irreducibles for small degrees otherwise.
pub fn isolated_irreducible_factors(ring: &Ring, c: &Poly, small: &[Poly]) -> Vec<Poly> {
    let q = ring.order().expect("finite field");
    let n = c.degree();
    let x = poly_from(ring, vec![ring.zero(), ring.one()]);
    let mut h = x.clone();
    let mut parts: Vec<Poly> = Vec::new(); // parts[i-1]: product of distinct factors of degree exactly i
    let mut out = Vec::new();
    for i in 1..=n {
        h = pow_mod(ring, &h, q, c);
        let mut g = poly_gcd(ring, c, &poly_sub(ring, &h, &x));
        for j in 1..i {
            if i % j == 0 && parts[j - 1].degree() > 0 {
                g = poly_divmod(ring, &g, &parts[j - 1]).0;
            }
        }
        if g.is_zero(ring) {
            g = poly_from(ring, vec![ring.one()]);
        }
        if g.degree() == i {
            out.push(g.clone());
        } else if g.degree() > i {
            out.extend(
                small
                    .iter()
                    .filter(|p| p.degree() == i && g.rem_monic(p, ring).is_zero(ring))
                    .cloned(),
            );
        }
        parts.push(g);
    }
    out
}

/// Monic irreducible polynomials over the finite field `ring` of degree 1..=max_degree,
/// restricted to sizes that are cheap to enumerate.
pub fn small_irreducibles(ring: &Ring, max_degree: usize) -> Vec<Poly> {
    let q = ring.order().expect("finite field");
    let elems: Vec<Elem> = (0..q).map(Elem::Int).collect();
    let mut out = Vec::new();
    if q <= 1 << 16 {
        for a in &elems {
            out.push(Poly {
                coeffs: vec![ring.neg(a), ring.one()],
            });
        }
    }
    for deg in 2..=max_degree.min(3) {
        let count = match q.checked_pow(deg as u32) {
            Some(c) if c <= 1 << 15 => c,
            _ => break,
        };
        for idx in 0..count {
            let mut coeffs = Vec::with_capacity(deg + 1);
            let mut x = idx;
            for _ in 0..deg {
                coeffs.push(Elem::Int(x % q));
                x /= q;
            }
            coeffs.push(ring.one());
            let p = Poly { coeffs };
            // degree <= 3: irreducible iff no root
            if elems.iter().all(|a| !ring.is_zero(&p.eval(ring, a))) {
                out.push(p);
            }
        }
    }
    out
}
