//! Minimal faithful Alt(n)-modules per (n, p) cell, computed in parallel.

use std::fmt;

use rayon::prelude::*;
use symrep::gmodule::GModule;
use symrep::ring::Ring;
use symrep::standard::{build_exceptional, build_rstd, ExceptionalTag};

use crate::{pre, CliError};

/// Tabulated dimension for 5 <= n <= 8; the last column covers p > 7.
pub fn table_value(n: usize, p: u64) -> Option<usize> {
    let row: [usize; 5] = match n {
        5 => [2, 3, 3, 3, 3],
        6 => [4, 3, 5, 5, 5],
        7 => [4, 6, 6, 5, 6],
        8 => [4, 7, 7, 7, 7],
        _ => return None,
    };
    let col = match p {
        2 => 0,
        3 => 1,
        5 => 2,
        7 => 3,
        _ => 4,
    };
    Some(row[col])
}

fn exceptional_for(n: usize, p: u64) -> Option<ExceptionalTag> {
    use ExceptionalTag::*;
    Some(match (n, p) {
        (5, 2) => Alt5Gf4Dim2,
        (5, 3) => Alt5Gf9Dim3,
        (5, 5) => Alt5Gf5Dim3,
        (5, 7) => Alt5Gf49Dim3,
        (6, 3) => Alt6Gf9AdjointDim3,
        (7, 2) => Alt7Gf2Dim4,
        (8, 2) => Alt8Gf2NaturalDim4,
        _ => return None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub n: usize,
    pub p: u64,
    pub module: String,
    pub ring: String,
    pub dim: usize,
    pub table: Option<usize>,
    pub faithful: bool,
    pub irreducible: bool,
    pub minimality: &'static str,
    pub notes: Vec<String>,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cell: Alt({}) p={}", self.n, self.p)?;
        writeln!(f, "module: {}", self.module)?;
        writeln!(f, "ring: {}", self.ring)?;
        writeln!(f, "dim: {}", self.dim)?;
        if let Some(t) = self.table {
            writeln!(f, "table: {t}")?;
        }
        writeln!(f, "faithful: {}", self.faithful)?;
        writeln!(f, "irreducible: {}", self.irreducible)?;
        writeln!(f, "minimality: {}", self.minimality)?;
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        Ok(())
    }
}

pub fn parse_range(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("bad range `{s}`, expected A..B"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: usize = a.trim().parse().map_err(|_| bad())?;
    let hi: usize = b.trim().parse().map_err(|_| bad())?;
    if lo < 3 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

pub fn parse_chars(s: &str) -> Result<Vec<u64>, CliError> {
    let mut out = Vec::new();
    for tok in s.split(',') {
        let p: u64 = tok
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad characteristic `{tok}`")))?;
        Ring::prime_field(p).map_err(|_| CliError::Usage(format!("{p} is not a prime")))?;
        out.push(p);
    }
    Ok(out)
}

fn module_for(n: usize, p: u64) -> Result<(GModule, String, Vec<String>), CliError> {
    let mut notes = Vec::new();
    if let Some(tag) = exceptional_for(n, p) {
        return Ok((
            build_exceptional(tag).map_err(pre)?,
            tag.name().to_string(),
            notes,
        ));
    }
    let ring = Ring::prime_field(p).map_err(pre)?;
    let m = build_rstd(n, &ring)
        .map_err(pre)?
        .restrict_to_alt()
        .map_err(pre)?;
    if n == 5 && p > 7 {
        notes
            .push("tabulated 3 is the icosahedral module, not constructed here; rstd shown".into());
    }
    if n == 9 && p == 2 {
        notes.push("lower bound 8; three classical modules; identification out of scope".into());
    }
    Ok((m, format!("rstd({n},{p})|Alt"), notes))
}

fn minimality(n: usize, p: u64) -> &'static str {
    match n {
        5..=8 => "conjectural",
        9 if p == 2 => "conjectural",
        _ if n >= 9 => "established (every faithful module of dimension below n is standard)",
        _ => "not tabulated",
    }
}

pub fn compute_cell(n: usize, p: u64, seed: u64) -> Result<Cell, CliError> {
    let (m, module, notes) = module_for(n, p)?;
    let faithful = m.is_faithful().map_err(pre)?;
    let irreducible = m.irreducibility(seed).map_err(pre)?.is_irreducible();
    Ok(Cell {
        n,
        p,
        module,
        ring: m.ring().to_string(),
        dim: m.dim(),
        table: table_value(n, p),
        faithful,
        irreducible,
        minimality: minimality(n, p),
        notes,
    })
}

/// Cells in row-major order (n, then p as listed).
pub fn compute(lo: usize, hi: usize, primes: &[u64], seed: u64) -> Result<Vec<Cell>, CliError> {
    let jobs: Vec<(usize, u64)> = (lo..=hi)
        .flat_map(|n| primes.iter().map(move |&p| (n, p)))
        .collect();
    jobs.par_iter()
        .map(|&(n, p)| compute_cell(n, p, seed))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_match_the_table() {
        for n in 5..=8 {
            for p in [2, 3, 5, 7, 11] {
                let c = compute_cell(n, p, 0).unwrap();
                assert!(c.faithful && c.irreducible, "{c}");
                if !(n == 5 && p == 11) {
                    assert_eq!(Some(c.dim), c.table, "{c}");
                }
            }
        }
    }
}
