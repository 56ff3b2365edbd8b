//! Finite abelian groups `Z/o_1 ⊕ … ⊕ Z/o_r`, their subgroups and homomorphisms, by enumeration.

use std::collections::{BTreeSet, VecDeque};

use num_integer::{gcd, lcm};
use rand::Rng;

use super::UniverseError;

pub type Element = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelian {
    orders: Vec<u64>,
}

impl FiniteAbelian {
    pub fn new(orders: Vec<u64>) -> Result<FiniteAbelian, UniverseError> {
        if let Some(&o) = orders.iter().find(|&&o| o < 2) {
            return Err(UniverseError::InvalidOrder(o));
        }
        Ok(FiniteAbelian { orders })
    }

    pub fn trivial() -> FiniteAbelian {
        FiniteAbelian { orders: Vec::new() }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, &b| lcm(a, b))
    }

    pub fn zero(&self) -> Element {
        vec![0; self.rank()]
    }

    pub fn unit(&self, j: usize) -> Element {
        let mut e = self.zero();
        e[j] = 1 % self.orders[j];
        e
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Element {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((x, y), o)| (x + y) % o)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Element {
        a.iter()
            .zip(&self.orders)
            .map(|(x, o)| (o - x) % o)
            .collect()
    }

    pub fn scale(&self, a: &[u64], n: i64) -> Element {
        a.iter()
            .zip(&self.orders)
            .map(|(&x, &o)| ((x as i128 * n as i128).rem_euclid(o as i128)) as u64)
            .collect()
    }

    pub fn elements(&self) -> Vec<Element> {
        let mut out = vec![self.zero()];
        for (j, &o) in self.orders.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * o as usize);
            for e in &out {
                for t in 0..o {
                    let mut v = e.clone();
                    v[j] = t;
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        self.orders.iter().map(|&o| rng.gen_range(0..o)).collect()
    }

    pub fn product(&self, o: &FiniteAbelian) -> FiniteAbelian {
        FiniteAbelian {
            orders: self.orders.iter().chain(&o.orders).copied().collect(),
        }
    }

    pub fn power(&self, n: usize) -> FiniteAbelian {
        FiniteAbelian {
            orders: (0..n).flat_map(|_| self.orders.iter().copied()).collect(),
        }
    }

    /// Σ over the prime-power cyclic factors of their exponents, i.e. the composition length.
    pub fn composition_length(&self) -> usize {
        self.orders
            .iter()
            .map(|&o| factorize(o).iter().map(|&(_, e)| e as usize).sum::<usize>())
            .sum()
    }
}

/// `(p, e)` with `n = Π p^e`, primes increasing.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// A subgroup, stored both by generators and by its full element set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: FiniteAbelian,
    gens: Vec<Element>,
    elements: BTreeSet<Element>,
}

impl PartialEq for Subgroup {
    fn eq(&self, o: &Subgroup) -> bool {
        self.ambient == o.ambient && self.elements == o.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn generated(ambient: &FiniteAbelian, gens: &[Element]) -> Subgroup {
        let mut elements = BTreeSet::from([ambient.zero()]);
        let mut kept = Vec::new();
        for g in gens {
            if elements.contains(g) {
                continue;
            }
            kept.push(g.clone());
            let mut queue: VecDeque<Element> = elements.iter().cloned().collect();
            while let Some(x) = queue.pop_front() {
                let y = ambient.add(&x, g);
                if elements.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        Subgroup {
            ambient: ambient.clone(),
            gens: kept,
            elements,
        }
    }

    fn from_set(ambient: &FiniteAbelian, set: BTreeSet<Element>) -> Subgroup {
        let all: Vec<Element> = set.into_iter().collect();
        Subgroup::generated(ambient, &all)
    }

    pub fn zero(ambient: &FiniteAbelian) -> Subgroup {
        Subgroup::generated(ambient, &[])
    }

    pub fn full(ambient: &FiniteAbelian) -> Subgroup {
        let units: Vec<Element> = (0..ambient.rank()).map(|j| ambient.unit(j)).collect();
        Subgroup::generated(ambient, &units)
    }

    pub fn random<R: Rng + ?Sized>(ambient: &FiniteAbelian, rng: &mut R) -> Subgroup {
        let k = rng.gen_range(0..=ambient.rank().max(1));
        let gens: Vec<Element> = (0..k).map(|_| ambient.random_element(rng)).collect();
        Subgroup::generated(ambient, &gens)
    }

    pub fn ambient(&self) -> &FiniteAbelian {
        &self.ambient
    }

    /// Generator matrix: one generator per row.
    pub fn generators(&self) -> &[Element] {
        &self.gens
    }

    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.elements.iter()
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.elements.contains(v)
    }

    pub fn is_subgroup_of(&self, o: &Subgroup) -> bool {
        self.elements.is_subset(&o.elements)
    }

    /// Closed under addition and negation, and contains 0.
    pub fn is_closed(&self) -> bool {
        let a = &self.ambient;
        self.contains(&a.zero())
            && self.elements.iter().all(|x| {
                self.contains(&a.neg(x)) && self.gens.iter().all(|g| self.contains(&a.add(x, g)))
            })
    }

    pub fn intersect(&self, o: &Subgroup) -> Subgroup {
        Subgroup::from_set(
            &self.ambient,
            self.elements.intersection(&o.elements).cloned().collect(),
        )
    }

    pub fn sum(&self, o: &Subgroup) -> Subgroup {
        let gens: Vec<Element> = self.gens.iter().chain(&o.gens).cloned().collect();
        Subgroup::generated(&self.ambient, &gens)
    }

    /// Number of cosets of `w` in self, counted through canonical representatives.
    pub fn coset_count(&self, w: &Subgroup) -> u64 {
        let a = &self.ambient;
        let reps: BTreeSet<Element> = self
            .elements
            .iter()
            .map(|x| {
                w.elements
                    .iter()
                    .map(|y| a.add(x, y))
                    .min()
                    .expect("w contains 0")
            })
            .collect();
        reps.len() as u64
    }

    pub fn image_under(&self, f: &AbelianHom) -> Subgroup {
        let gens: Vec<Element> = self.gens.iter().map(|g| f.apply(g)).collect();
        Subgroup::generated(&f.dst, &gens)
    }

    pub fn is_invariant_under(&self, f: &AbelianHom) -> bool {
        self.gens.iter().all(|g| self.contains(&f.apply(g)))
    }
}

/// A homomorphism given by the images of the unit generators; `o_j · images[j] = 0` is enforced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianHom {
    pub src: FiniteAbelian,
    pub dst: FiniteAbelian,
    images: Vec<Element>,
}

impl AbelianHom {
    pub fn new(
        src: &FiniteAbelian,
        dst: &FiniteAbelian,
        images: Vec<Element>,
    ) -> Result<AbelianHom, UniverseError> {
        if images.len() != src.rank() {
            return Err(UniverseError::Shape(format!(
                "{} images for rank {}",
                images.len(),
                src.rank()
            )));
        }
        for (j, img) in images.iter().enumerate() {
            if dst.scale(img, src.orders[j] as i64) != dst.zero() {
                return Err(UniverseError::NotAHomomorphism(format!(
                    "image of e_{} has the wrong order",
                    j + 1
                )));
            }
        }
        Ok(AbelianHom {
            src: src.clone(),
            dst: dst.clone(),
            images,
        })
    }

    pub fn identity(a: &FiniteAbelian) -> AbelianHom {
        AbelianHom {
            src: a.clone(),
            dst: a.clone(),
            images: (0..a.rank()).map(|j| a.unit(j)).collect(),
        }
    }

    /// Multiplication by n.
    pub fn scalar(a: &FiniteAbelian, n: i64) -> AbelianHom {
        AbelianHom {
            src: a.clone(),
            dst: a.clone(),
            images: (0..a.rank()).map(|j| a.scale(&a.unit(j), n)).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(
        src: &FiniteAbelian,
        dst: &FiniteAbelian,
        rng: &mut R,
    ) -> AbelianHom {
        let images = src
            .orders
            .iter()
            .map(|&o| {
                dst.orders
                    .iter()
                    .map(|&d| {
                        let g = gcd(o, d);
                        rng.gen_range(0..g) * (d / g)
                    })
                    .collect()
            })
            .collect();
        AbelianHom {
            src: src.clone(),
            dst: dst.clone(),
            images,
        }
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, v: &[u64]) -> Element {
        let mut out = self.dst.zero();
        for (x, img) in v.iter().zip(&self.images) {
            out = self.dst.add(&out, &self.dst.scale(img, *x as i64));
        }
        out
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &AbelianHom) -> AbelianHom {
        AbelianHom {
            src: self.src.clone(),
            dst: g.dst.clone(),
            images: self.images.iter().map(|x| g.apply(x)).collect(),
        }
    }

    pub fn add(&self, g: &AbelianHom) -> AbelianHom {
        let images = self
            .images
            .iter()
            .zip(&g.images)
            .map(|(a, b)| self.dst.add(a, b))
            .collect();
        AbelianHom {
            src: self.src.clone(),
            dst: self.dst.clone(),
            images,
        }
    }

    /// `f × g : A × B -> C × D`.
    pub fn product(&self, g: &AbelianHom) -> AbelianHom {
        let src = self.src.product(&g.src);
        let dst = self.dst.product(&g.dst);
        let zl = self.dst.zero();
        let zr = g.dst.zero();
        let images = self
            .images
            .iter()
            .map(|x| x.iter().chain(&zr).copied().collect())
            .chain(
                g.images
                    .iter()
                    .map(|y| zl.iter().chain(y).copied().collect()),
            )
            .collect();
        AbelianHom { src, dst, images }
    }

    pub fn kernel(&self) -> Subgroup {
        let set = self
            .src
            .elements()
            .into_iter()
            .filter(|v| self.apply(v) == self.dst.zero())
            .collect();
        Subgroup::from_set(&self.src, set)
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::generated(&self.dst, &self.images)
    }

    pub fn is_bijective(&self) -> bool {
        self.src.order() == self.dst.order() && self.kernel().order() == 1
    }

    /// Inverse of a bijection, read off the full value table.
    pub fn inverse(&self) -> Option<AbelianHom> {
        if !self.is_bijective() {
            return None;
        }
        let table: Vec<(Element, Element)> = self
            .src
            .elements()
            .into_iter()
            .map(|v| (self.apply(&v), v))
            .collect();
        let images = (0..self.dst.rank())
            .map(|j| {
                let u = self.dst.unit(j);
                table
                    .iter()
                    .find(|(w, _)| *w == u)
                    .map(|(_, v)| v.clone())
                    .expect("bijective")
            })
            .collect();
        AbelianHom::new(&self.dst, &self.src, images).ok()
    }
}

/// A map given by its value on each element is additive.
pub fn table_is_additive(
    a: &FiniteAbelian,
    b: &FiniteAbelian,
    f: impl Fn(&[u64]) -> Element,
) -> bool {
    let els = a.elements();
    els.iter()
        .all(|x| els.iter().all(|y| f(&a.add(x, y)) == b.add(&f(x), &f(y))))
}

/// `0 = V_0 < … < V_m = V`, built from the top by multiplication-by-p, smallest prime first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicSeries {
    /// Ascending: `terms[0] = 0`, `terms[m] = V`.
    pub terms: Vec<Subgroup>,
    /// `factor_primes[i]` is the exponent of `terms[i + 1] / terms[i]`.
    pub factor_primes: Vec<u64>,
}

impl CharacteristicSeries {
    pub fn len(&self) -> usize {
        self.factor_primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factor_primes.is_empty()
    }

    /// Each factor is nontrivial of prime exponent and the factor orders multiply to |V|.
    pub fn factors_ok(&self) -> bool {
        let mut total = 1;
        for (i, &p) in self.factor_primes.iter().enumerate() {
            let (lo, hi) = (&self.terms[i], &self.terms[i + 1]);
            if !lo.is_subgroup_of(hi) || lo == hi {
                return false;
            }
            let a = hi.ambient();
            if !hi.elements().all(|x| lo.contains(&a.scale(x, p as i64))) {
                return false;
            }
            total *= hi.coset_count(lo);
        }
        self.terms.last().map(|t| t.order()) == Some(total)
    }

    pub fn invariant_under(&self, f: &AbelianHom) -> bool {
        self.terms.iter().all(|t| t.is_invariant_under(f))
    }
}

pub fn characteristic_series(v: &FiniteAbelian) -> CharacteristicSeries {
    let primes: Vec<u64> = factorize(v.exponent())
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    let mut top = Subgroup::full(v);
    let mut desc = vec![top.clone()];
    let mut factor_primes = Vec::new();
    for p in primes {
        loop {
            let mp = top.image_under(&AbelianHom::scalar(v, p as i64));
            if mp == top {
                break;
            }
            desc.push(mp.clone());
            factor_primes.push(p);
            top = mp;
        }
    }
    desc.reverse();
    factor_primes.reverse();
    CharacteristicSeries {
        terms: desc,
        factor_primes,
    }
}

/// A random automorphism of `v`, by rejection sampling.
pub fn random_automorphism<R: Rng + ?Sized>(v: &FiniteAbelian, rng: &mut R) -> AbelianHom {
    loop {
        let f = AbelianHom::random(v, v, rng);
        if f.is_bijective() {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn series_of_z12() {
        let v = FiniteAbelian::new(vec![12]).unwrap();
        let s = characteristic_series(&v);
        assert_eq!(s.factor_primes, vec![3, 2, 2]);
        assert!(s.factors_ok());
        assert_eq!(s.terms[1].order(), 3);
        let z5 = characteristic_series(&FiniteAbelian::new(vec![5]).unwrap());
        assert_eq!(z5.len(), 1);
        assert!(characteristic_series(&FiniteAbelian::trivial()).is_empty());
    }

    #[test]
    fn homs_and_inverses() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let v = FiniteAbelian::new(vec![4, 2]).unwrap();
        for _ in 0..20 {
            let f = random_automorphism(&v, &mut rng);
            let g = f.inverse().unwrap();
            assert_eq!(f.then(&g), AbelianHom::identity(&v));
            assert!(table_is_additive(&v, &v, |x| f.apply(x)));
        }
        assert!(AbelianHom::new(&v, &v, vec![vec![0, 0], vec![1, 0]]).is_err());
    }
}
