//! An outer automorphism of Sym(6), found by backtracking at first use.
//!
//! Candidate images of the five adjacent transpositions are the 15 triple
//! transpositions. The Coxeter relations make any solution a homomorphism, and
//! pairwise-distinct images rule out the kernel Alt(6), so a solution is an
//! automorphism; it is outer because it moves the class of transpositions.

use std::sync::OnceLock;

use super::{canonical_generators, factorize, GroupKind, Perm, PermError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterAutomorphism {
    /// Images of `(1 2), (2 3), ..., (5 6)`.
    pub images: Vec<Perm>,
}

impl OuterAutomorphism {
    /// Image of an arbitrary element, via its word in the generators.
    pub fn apply(&self, s: &Perm) -> Perm {
        let word = factorize(s, GroupKind::Sym).expect("Sym factorization never fails");
        word.iter()
            .fold(Perm::identity(6), |acc, &i| acc.compose(&self.images[i]))
    }
}

fn triple_transpositions() -> Vec<Perm> {
    let mut out: Vec<Perm> = Perm::all(6)
        .into_iter()
        .filter(|p| p.cycle_type() == vec![2, 2, 2])
        .collect();
    out.sort();
    out
}

fn order_divides(p: &Perm, k: i64) -> bool {
    p.pow(k).is_identity()
}

fn extend(slot: usize, chosen: &mut Vec<Perm>, candidates: &[Perm]) -> bool {
    if slot == 5 {
        return true;
    }
    for c in candidates {
        if chosen.contains(c) {
            continue;
        }
        let ok = chosen.iter().enumerate().all(|(j, prev)| {
            let prod = prev.compose(c);
            if j + 1 == slot {
                order_divides(&prod, 3)
            } else {
                order_divides(&prod, 2)
            }
        });
        if ok {
            chosen.push(c.clone());
            if extend(slot + 1, chosen, candidates) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn search() -> Result<OuterAutomorphism, PermError> {
    let candidates = triple_transpositions();
    let mut chosen = Vec::new();
    if !extend(0, &mut chosen, &candidates) {
        return Err(PermError::SearchFailed(
            "no outer automorphism of Sym(6) found".into(),
        ));
    }
    Ok(OuterAutomorphism { images: chosen })
}

/// The cached outer automorphism (lexicographically first solution).
pub fn outer_automorphism_sym6() -> Result<&'static OuterAutomorphism, PermError> {
    static CACHE: OnceLock<Result<OuterAutomorphism, PermError>> = OnceLock::new();
    CACHE.get_or_init(search).as_ref().map_err(Clone::clone)
}

/// The inverse automorphism on generators, found by scanning all 720 elements.
pub fn outer_automorphism_sym6_inverse() -> Result<&'static OuterAutomorphism, PermError> {
    static CACHE: OnceLock<Result<OuterAutomorphism, PermError>> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            let phi = outer_automorphism_sym6()?;
            let all = Perm::all(6);
            let images = canonical_generators(GroupKind::Sym, 6)
                .iter()
                .map(|g| {
                    all.iter()
                        .find(|x| &phi.apply(x) == g)
                        .cloned()
                        .ok_or_else(|| PermError::SearchFailed("preimage not found".into()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(OuterAutomorphism { images })
        })
        .as_ref()
        .map_err(Clone::clone)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn images_are_triple_transpositions_satisfying_coxeter() {
        let phi = outer_automorphism_sym6().unwrap();
        for (i, x) in phi.images.iter().enumerate() {
            assert_eq!(x.cycle_type(), vec![2, 2, 2]);
            assert_eq!(x.sign(), -1);
            for (j, y) in phi.images.iter().enumerate() {
                let k = match i.abs_diff(j) {
                    0 => 1,
                    1 => 3,
                    _ => 2,
                };
                assert!(x.compose(y).pow(k).is_identity());
            }
        }
    }

    #[test]
    fn is_bijective_homomorphism_and_not_inner() {
        let phi = outer_automorphism_sym6().unwrap();
        let all = Perm::all(6);
        let mut images: Vec<Perm> = all.iter().map(|p| phi.apply(p)).collect();
        // homomorphism on a sample of pairs
        for a in all.iter().step_by(37) {
            for b in all.iter().step_by(53) {
                assert_eq!(
                    phi.apply(&a.compose(b)),
                    phi.apply(a).compose(&phi.apply(b))
                );
            }
        }
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 720);
        // the class of (1 2) goes to triple transpositions; inner automorphisms preserve cycle type
        assert_eq!(
            phi.apply(&Perm::transposition(6, 1, 2)).cycle_type(),
            vec![2, 2, 2]
        );
        // and 3-cycles go to products of two 3-cycles
        assert_eq!(
            phi.apply(&Perm::cycle(6, &[1, 2, 3]).unwrap()).cycle_type(),
            vec![3, 3]
        );
    }

    #[test]
    fn inverse_undoes() {
        let phi = outer_automorphism_sym6().unwrap();
        let inv = outer_automorphism_sym6_inverse().unwrap();
        for g in canonical_generators(GroupKind::Sym, 6) {
            assert_eq!(phi.apply(&inv.apply(&g)), g);
            assert_eq!(inv.apply(&phi.apply(&g)), g);
        }
        // phi composed with itself is inner: it preserves the transposition class
        let t = Perm::transposition(6, 1, 2);
        assert_eq!(phi.apply(&phi.apply(&t)).cycle_type(), vec![2, 1, 1, 1, 1]);
    }
}
