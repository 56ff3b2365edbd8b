//! Exact coefficient rings: GF(p^k), Z/kZ and Q.
//!
//! A [`Ring`] is a cheap, shareable handle to an interned [`RingDescriptor`].
//! Ring elements are plain [`Elem`] values and every operation goes through the
//! ring, which keeps matrices compact. [`Scalar`] pairs a value with its ring and
//! checks that both operands belong to the same ring.

mod finite_field;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

use finite_field::FieldTables;
pub use finite_field::{is_irreducible_mod_p, modulus_polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("{0} is not a unit")]
    NonUnit(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid ring token `{0}`")]
    BadToken(String),
    #[error("unsupported ring: {0}")]
    Unsupported(String),
    #[error("invalid literal `{literal}` for ring {ring}")]
    BadLiteral { literal: String, ring: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    FiniteField { p: u64, k: u32 },
    ModularInt { k: u64 },
    Rational,
}

/// Outcome of [`Ring::characteristic`]. Z/kZ with k composite has none.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Characteristic {
    Zero,
    Prime(u64),
    Undefined,
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Characteristic::Zero => write!(f, "0"),
            Characteristic::Prime(p) => write!(f, "{p}"),
            Characteristic::Undefined => write!(f, "undefined"),
        }
    }
}

/// A ring element. Finite rings use `Int` (see the encoding in `finite_field`), Q uses `Rat`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(u64),
    Rat(BigRational),
}

impl Elem {
    #[inline]
    pub fn as_u64(&self) -> u64 {
        match self {
            Elem::Int(v) => *v,
            Elem::Rat(_) => panic!("rational element used in a finite ring"),
        }
    }

    fn as_rat(&self) -> &BigRational {
        match self {
            Elem::Rat(r) => r,
            Elem::Int(_) => panic!("finite-ring element used in Q"),
        }
    }
}

#[derive(Debug)]
pub struct RingDescriptor {
    kind: RingKind,
    modulus: Vec<u64>,
    tables: Option<FieldTables>,
}

/// Shared handle to a ring. Equal tokens always give the same descriptor.
#[derive(Clone)]
pub struct Ring(Arc<RingDescriptor>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}
impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.kind.hash(state)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({self})")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.kind {
            RingKind::FiniteField { p, k: 1 } => write!(f, "gf:{p}"),
            RingKind::FiniteField { p, k } => write!(f, "gf:{p}:{k}"),
            RingKind::ModularInt { k } => write!(f, "zmod:{k}"),
            RingKind::Rational => write!(f, "q"),
        }
    }
}

fn interned() -> &'static Mutex<HashMap<RingKind, Ring>> {
    static CACHE: OnceLock<Mutex<HashMap<RingKind, Ring>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Residue arithmetic modulus bound: products must fit in u128 comfortably and
/// values in u64; we keep moduli below 2^32.
const MAX_MODULUS: u64 = 1 << 32;

fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

impl Ring {
    fn intern(kind: RingKind) -> Result<Ring, RingError> {
        let cache = interned();
        if let Some(r) = cache.lock().unwrap().get(&kind) {
            return Ok(r.clone());
        }
        let desc = match kind {
            RingKind::FiniteField { p, k } => {
                let modulus = modulus_polynomial(p, k)?;
                if !is_irreducible_mod_p(&modulus, p) {
                    return Err(RingError::Unsupported(format!(
                        "reducible modulus for gf:{p}:{k}"
                    )));
                }
                if k == 1 && p >= MAX_MODULUS {
                    return Err(RingError::Unsupported(format!("gf:{p} is too large")));
                }
                let tables = (k >= 2).then(|| FieldTables::build(p, k, &modulus));
                RingDescriptor {
                    kind,
                    modulus,
                    tables,
                }
            }
            RingKind::ModularInt { k } => {
                if !(2..MAX_MODULUS).contains(&k) {
                    return Err(RingError::Unsupported(format!("zmod:{k}")));
                }
                RingDescriptor {
                    kind,
                    modulus: Vec::new(),
                    tables: None,
                }
            }
            RingKind::Rational => RingDescriptor {
                kind,
                modulus: Vec::new(),
                tables: None,
            },
        };
        let ring = Ring(Arc::new(desc));
        cache.lock().unwrap().entry(kind).or_insert(ring.clone());
        Ok(ring)
    }

    pub fn gf(p: u64, k: u32) -> Result<Ring, RingError> {
        if !finite_field::is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        Ring::intern(RingKind::FiniteField { p, k })
    }

    pub fn prime_field(p: u64) -> Result<Ring, RingError> {
        Ring::gf(p, 1)
    }

    pub fn zmod(k: u64) -> Result<Ring, RingError> {
        Ring::intern(RingKind::ModularInt { k })
    }

    pub fn rational() -> Ring {
        Ring::intern(RingKind::Rational).expect("Q is always available")
    }

    pub fn kind(&self) -> RingKind {
        self.0.kind
    }

    /// Modulus polynomial coefficients (low to high) for GF(p^k); empty otherwise.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn characteristic(&self) -> Characteristic {
        match self.0.kind {
            RingKind::FiniteField { p, .. } => Characteristic::Prime(p),
            RingKind::Rational => Characteristic::Zero,
            RingKind::ModularInt { k } if finite_field::is_prime(k) => Characteristic::Prime(k),
            RingKind::ModularInt { .. } => Characteristic::Undefined,
        }
    }

    /// The characteristic as an integer, `None` when undefined.
    pub fn char_value(&self) -> Option<u64> {
        match self.characteristic() {
            Characteristic::Zero => Some(0),
            Characteristic::Prime(p) => Some(p),
            Characteristic::Undefined => None,
        }
    }

    /// True for GF(p^k) and Q. Z/kZ is treated as constructional only.
    pub fn is_field(&self) -> bool {
        !matches!(self.0.kind, RingKind::ModularInt { .. })
    }

    pub fn is_finite_field(&self) -> bool {
        matches!(self.0.kind, RingKind::FiniteField { .. })
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.0.kind, RingKind::Rational)
    }

    pub fn is_gf2(&self) -> bool {
        matches!(self.0.kind, RingKind::FiniteField { p: 2, k: 1 })
    }

    /// Number of elements, `None` for Q.
    pub fn order(&self) -> Option<u64> {
        match self.0.kind {
            RingKind::FiniteField { p, k } => Some(p.pow(k)),
            RingKind::ModularInt { k } => Some(k),
            RingKind::Rational => None,
        }
    }

    /// Modulus for residue arithmetic (prime fields and Z/kZ).
    #[inline]
    fn residue_modulus(&self) -> Option<u64> {
        match self.0.kind {
            RingKind::FiniteField { p, k: 1 } => Some(p),
            RingKind::ModularInt { k } => Some(k),
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        match self.0.kind {
            RingKind::Rational => Elem::Rat(BigRational::zero()),
            _ => Elem::Int(0),
        }
    }

    pub fn one(&self) -> Elem {
        match self.0.kind {
            RingKind::Rational => Elem::Rat(BigRational::one()),
            _ => Elem::Int(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match self.0.kind {
            RingKind::Rational => Elem::Rat(BigRational::from_integer(BigInt::from(v))),
            RingKind::FiniteField { p, .. } => Elem::Int(v.rem_euclid(p as i64) as u64),
            RingKind::ModularInt { k } => Elem::Int(v.rem_euclid(k as i64) as u64),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Elem {
        match self.0.kind {
            RingKind::Rational => Elem::Rat(BigRational::from_integer(v.clone())),
            RingKind::FiniteField { p: m, .. } | RingKind::ModularInt { k: m } => {
                let r = v.mod_floor(&BigInt::from(m));
                Elem::Int(r.to_u64().expect("residue fits"))
            }
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(v) => *v == 0,
            Elem::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(v) => *v == 1,
            Elem::Rat(r) => r.is_one(),
        }
    }

    #[inline]
    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        if let Some(m) = self.residue_modulus() {
            let s = a.as_u64() + b.as_u64();
            return Elem::Int(if s >= m { s - m } else { s });
        }
        match &self.0.tables {
            Some(t) => Elem::Int(t.add(a.as_u64(), b.as_u64())),
            None => Elem::Rat(a.as_rat() + b.as_rat()),
        }
    }

    #[inline]
    pub fn neg(&self, a: &Elem) -> Elem {
        if let Some(m) = self.residue_modulus() {
            let v = a.as_u64();
            return Elem::Int(if v == 0 { 0 } else { m - v });
        }
        match &self.0.tables {
            Some(t) => Elem::Int(t.neg(a.as_u64())),
            None => Elem::Rat(-a.as_rat()),
        }
    }

    #[inline]
    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        if let Some(m) = self.residue_modulus() {
            let (x, y) = (a.as_u64(), b.as_u64());
            return Elem::Int(if x >= y { x - y } else { x + m - y });
        }
        match &self.0.tables {
            Some(t) => Elem::Int(t.add(a.as_u64(), t.neg(b.as_u64()))),
            None => Elem::Rat(a.as_rat() - b.as_rat()),
        }
    }

    #[inline]
    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        if let Some(m) = self.residue_modulus() {
            return Elem::Int(((a.as_u64() as u128 * b.as_u64() as u128) % m as u128) as u64);
        }
        match &self.0.tables {
            Some(t) => Elem::Int(t.mul(a.as_u64(), b.as_u64())),
            None => Elem::Rat(a.as_rat() * b.as_rat()),
        }
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        match self.0.kind {
            RingKind::ModularInt { k } => a.as_u64().gcd(&k) == 1,
            _ => !self.is_zero(a),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem, RingError> {
        let non_unit = || RingError::NonUnit(format!("{} in {}", self.format_elem(a), self));
        if let Some(m) = self.residue_modulus() {
            return inv_mod(a.as_u64(), m).map(Elem::Int).ok_or_else(non_unit);
        }
        match &self.0.tables {
            Some(t) => t.inv(a.as_u64()).map(Elem::Int).ok_or_else(non_unit),
            None => {
                let r = a.as_rat();
                if r.is_zero() {
                    Err(non_unit())
                } else {
                    Ok(Elem::Rat(r.recip()))
                }
            }
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem, RingError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// All elements in encoding order; `None` for Q.
    pub fn elements(&self) -> Option<impl Iterator<Item = Elem>> {
        self.order().map(|q| (0..q).map(Elem::Int))
    }

    /// A uniformly random element (finite rings) or a small rational `a/b`, |a| ≤ 9, 1 ≤ b ≤ 5.
    pub fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match self.order() {
            Some(q) => Elem::Int(rng.gen_range(0..q)),
            None => {
                let num: i64 = rng.gen_range(-9..=9);
                let den: i64 = rng.gen_range(1..=5);
                Elem::Rat(BigRational::new(num.into(), den.into()))
            }
        }
    }

    pub fn format_elem(&self, a: &Elem) -> String {
        match (&self.0.kind, a) {
            (RingKind::Rational, Elem::Rat(r)) => format!("{}/{}", r.numer(), r.denom()),
            (RingKind::FiniteField { k, .. }, Elem::Int(v)) if *k >= 2 => {
                let t = self.0.tables.as_ref().expect("tables");
                let terms: Vec<String> = t
                    .digits(*v)
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| match (i, c) {
                        (0, c) => c.to_string(),
                        (1, 1) => "x".to_string(),
                        (1, c) => format!("{c}*x"),
                        (i, 1) => format!("x^{i}"),
                        (i, c) => format!("{c}*x^{i}"),
                    })
                    .collect();
                if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join("+")
                }
            }
            (_, Elem::Int(v)) => v.to_string(),
            (_, Elem::Rat(_)) => panic!("rational element in a finite ring"),
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem, RingError> {
        let bad = || RingError::BadLiteral {
            literal: s.to_string(),
            ring: self.to_string(),
        };
        let s = s.trim();
        match self.0.kind {
            RingKind::Rational => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Elem::Rat(BigRational::new(n, d)))
            }
            RingKind::FiniteField { p, k } if k >= 2 => {
                let t = self.0.tables.as_ref().expect("tables");
                let mut coeffs = vec![0u64; k as usize];
                for term in s.split('+') {
                    let term = term.trim();
                    let (c, e) = if let Some((c, rest)) = term.split_once('*') {
                        (
                            c.parse::<u64>().map_err(|_| bad())?,
                            parse_x_power(rest).ok_or_else(bad)?,
                        )
                    } else if term.starts_with('x') {
                        (1, parse_x_power(term).ok_or_else(bad)?)
                    } else {
                        (term.parse::<u64>().map_err(|_| bad())?, 0)
                    };
                    if e >= k as usize {
                        return Err(bad());
                    }
                    coeffs[e] = (coeffs[e] + c % p) % p;
                }
                Ok(Elem::Int(t.from_digits(&coeffs)))
            }
            _ => {
                let v: i64 = s.parse().map_err(|_| bad())?;
                Ok(self.from_i64(v))
            }
        }
    }
}

fn parse_x_power(s: &str) -> Option<usize> {
    let s = s.trim();
    if s == "x" {
        return Some(1);
    }
    s.strip_prefix("x^")?.parse().ok()
}

impl FromStr for Ring {
    type Err = RingError;

    fn from_str(token: &str) -> Result<Ring, RingError> {
        let bad = || RingError::BadToken(token.to_string());
        let parts: Vec<&str> = token.trim().split(':').collect();
        match parts.as_slice() {
            ["q"] => Ok(Ring::rational()),
            ["gf", p] => Ring::gf(p.parse().map_err(|_| bad())?, 1),
            ["gf", p, k] => Ring::gf(p.parse().map_err(|_| bad())?, k.parse().map_err(|_| bad())?),
            ["zmod", k] => Ring::zmod(k.parse().map_err(|_| bad())?),
            _ => Err(bad()),
        }
    }
}

/// A ring element bundled with its ring. Binary operations check ring agreement.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    ring: Ring,
    value: Elem,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ring)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format_elem(&self.value))
    }
}

impl Scalar {
    pub fn new(ring: &Ring, value: Elem) -> Scalar {
        Scalar {
            ring: ring.clone(),
            value,
        }
    }

    pub fn from_i64(ring: &Ring, v: i64) -> Scalar {
        Scalar::new(ring, ring.from_i64(v))
    }

    pub fn parse(ring: &Ring, s: &str) -> Result<Scalar, RingError> {
        Ok(Scalar::new(ring, ring.parse_elem(s)?))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Elem {
        &self.value
    }

    pub fn into_value(self) -> Elem {
        self.value
    }

    fn check(&self, other: &Scalar) -> Result<(), RingError> {
        if self.ring != other.ring {
            return Err(RingError::RingMismatch(
                self.ring.to_string(),
                other.ring.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, o: &Scalar) -> Result<Scalar, RingError> {
        self.check(o)?;
        Ok(Scalar::new(
            &self.ring,
            self.ring.add(&self.value, &o.value),
        ))
    }

    pub fn sub(&self, o: &Scalar) -> Result<Scalar, RingError> {
        self.check(o)?;
        Ok(Scalar::new(
            &self.ring,
            self.ring.sub(&self.value, &o.value),
        ))
    }

    pub fn mul(&self, o: &Scalar) -> Result<Scalar, RingError> {
        self.check(o)?;
        Ok(Scalar::new(
            &self.ring,
            self.ring.mul(&self.value, &o.value),
        ))
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar, RingError> {
        self.check(o)?;
        Ok(Scalar::new(
            &self.ring,
            self.ring.div(&self.value, &o.value)?,
        ))
    }

    pub fn neg(&self) -> Scalar {
        Scalar::new(&self.ring, self.ring.neg(&self.value))
    }

    pub fn inv(&self) -> Result<Scalar, RingError> {
        Ok(Scalar::new(&self.ring, self.ring.inv(&self.value)?))
    }

    pub fn pow(&self, e: u64) -> Scalar {
        Scalar::new(&self.ring, self.ring.pow(&self.value, e))
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.value)
    }
}
