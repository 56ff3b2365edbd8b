//! Randomized property harness for modular universes with an additive dimension, over two
//! computable instances: vector spaces over a field (linear dimension) and finite abelian
//! groups (dimension identically 0).
//!
//! With dimension ≡ 0 every dim-connectedness statement about finite abelian groups
//! degenerates (only `{0}` is dim-connected), so those checks report VACUOUS. The
//! dimension identities are still backed there by their order analogues, e.g.
//! `|V| = |ker f| · |im f|`, so a VACUOUS line is never an unchecked line.

pub mod abelian;
mod field;
mod finite;

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ring::Ring;

pub use abelian::{
    characteristic_series, AbelianHom, CharacteristicSeries, Element, FiniteAbelian, Subgroup,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UniverseError {
    #[error("cyclic factor order {0} must be at least 2")]
    InvalidOrder(u64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("ring {0} is not a field")]
    NotAField(String),
    #[error("at least one trial is required")]
    ZeroTrials,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniverseKind {
    FieldSpaces(Ring),
    FiniteAbelian,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniverseInstance {
    pub kind: UniverseKind,
    pub seed: u64,
}

impl UniverseInstance {
    pub fn field_spaces(ring: &Ring) -> Result<UniverseInstance, UniverseError> {
        if !ring.is_field() {
            return Err(UniverseError::NotAField(ring.to_string()));
        }
        Ok(UniverseInstance {
            kind: UniverseKind::FieldSpaces(ring.clone()),
            seed: 0,
        })
    }

    pub fn finite_abelian() -> UniverseInstance {
        UniverseInstance {
            kind: UniverseKind::FiniteAbelian,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> UniverseInstance {
        self.seed = seed;
        self
    }

    pub fn name(&self) -> String {
        match &self.kind {
            UniverseKind::FieldSpaces(r) => format!("FieldSpaces({r})"),
            UniverseKind::FiniteAbelian => "FiniteAbelian".to_string(),
        }
    }

    /// The additive dimension of a finite abelian group.
    pub fn group_dim(&self, _g: &Subgroup) -> usize {
        0
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Vacuous(String),
    Fail(String),
}

impl Status {
    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail(_))
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => f.write_str("PASS"),
            Status::Vacuous(why) => write!(f, "VACUOUS ({why})"),
            Status::Fail(why) => write!(f, "FAIL ({why})"),
        }
    }
}

/// Results keyed by property name, in the order checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub instance: String,
    pub trials: usize,
    pub entries: Vec<(String, Status)>,
}

impl PropertyReport {
    fn new(u: &UniverseInstance, trials: usize) -> PropertyReport {
        PropertyReport {
            instance: u.name(),
            trials,
            entries: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, name: &str, status: Status) {
        self.entries.push((name.to_string(), status));
    }

    pub fn get(&self, name: &str) -> Option<&Status> {
        self.entries.iter().find(|(k, _)| k == name).map(|(_, s)| s)
    }

    pub fn no_failures(&self) -> bool {
        !self.entries.iter().any(|(_, s)| s.is_fail())
    }

    pub fn failures(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(_, s)| s.is_fail())
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn merge(&mut self, o: PropertyReport) {
        self.entries.extend(o.entries);
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instance: {}", self.instance)?;
        writeln!(f, "trials: {}", self.trials)?;
        for (k, s) in &self.entries {
            writeln!(f, "{k}: {s}")?;
        }
        Ok(())
    }
}

/// Runs `check` for each trial and keeps the first failure.
pub(crate) fn run_trials<R>(
    trials: usize,
    rng: &mut R,
    mut check: impl FnMut(&mut R) -> Result<(), String>,
) -> Status {
    for t in 0..trials {
        if let Err(why) = check(rng) {
            return Status::Fail(format!("trial {t}: {why}"));
        }
    }
    Status::Pass
}

/// Like [`run_trials`] but reports VACUOUS on success.
pub(crate) fn run_vacuous<R>(
    trials: usize,
    rng: &mut R,
    why: &str,
    check: impl FnMut(&mut R) -> Result<(), String>,
) -> Status {
    match run_trials(trials, rng, check) {
        Status::Pass => Status::Vacuous(why.to_string()),
        other => other,
    }
}

pub(crate) fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

/// Universe, Dimension, Characteristic and Divisibility properties.
pub fn check_universe_axioms(
    u: &UniverseInstance,
    trials: usize,
) -> Result<PropertyReport, UniverseError> {
    if trials == 0 {
        return Err(UniverseError::ZeroTrials);
    }
    let mut report = PropertyReport::new(u, trials);
    match &u.kind {
        UniverseKind::FieldSpaces(ring) => field::universe_axioms(u, ring, trials, &mut report),
        UniverseKind::FiniteAbelian => finite::universe_axioms(u, trials, &mut report),
    }
    Ok(report)
}

/// Connectedness Properties (i)–(iii); VACUOUS on finite abelian groups.
pub fn check_connectedness_props(
    u: &UniverseInstance,
    trials: usize,
) -> Result<PropertyReport, UniverseError> {
    if trials == 0 {
        return Err(UniverseError::ZeroTrials);
    }
    let mut report = PropertyReport::new(u, trials);
    match &u.kind {
        UniverseKind::FieldSpaces(ring) => field::connectedness(u, ring, trials, &mut report),
        UniverseKind::FiniteAbelian => {
            let why = "dim is identically 0, so only {0} is dim-connected";
            for name in [
                "connectedness.images",
                "connectedness.products",
                "connectedness.sums",
            ] {
                report.push(name, Status::Vacuous(why.to_string()));
            }
        }
    }
    Ok(report)
}

/// Both harnesses concatenated.
pub fn full_report(u: &UniverseInstance, trials: usize) -> Result<PropertyReport, UniverseError> {
    let mut r = check_universe_axioms(u, trials)?;
    r.merge(check_connectedness_props(u, trials)?);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_instances_pass() {
        for u in [
            UniverseInstance::field_spaces(&Ring::prime_field(3).unwrap()).unwrap(),
            UniverseInstance::field_spaces(&Ring::rational()).unwrap(),
            UniverseInstance::finite_abelian(),
        ] {
            let r = full_report(&u, 20).unwrap();
            assert!(r.no_failures(), "{r}");
        }
    }
}
