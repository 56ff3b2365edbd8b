//! The module file: a `key: value` header followed by one matrix per canonical generator.
//!
//! ```text
//! format: 1
//! group: sym
//! n: 4
//! ring: gf:3
//! d: 3
//! generator: (1 2)
//! 0 1 0
//! 1 0 0
//! 0 0 1
//! ...
//! ```
//!
//! An optional `moduli: 2 4 4` line after `d:` carries per-coordinate orders over Z/kZ.

use std::fmt::Write as _;

use symrep::gmodule::{GModule, GModuleError};
use symrep::linalg::Matrix;
use symrep::permgroup::{canonical_generators, GroupKind, Perm};
use symrep::ring::Ring;
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("file ends early: {0}")]
    Truncated(String),
    #[error("module does not load: {0}")]
    Module(#[from] GModuleError),
}

fn perr(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn serialize(m: &GModule) -> String {
    let ring = m.ring();
    let mut out = String::new();
    writeln!(out, "format: {FORMAT_VERSION}").unwrap();
    writeln!(out, "group: {}", m.group()).unwrap();
    writeln!(out, "n: {}", m.n()).unwrap();
    writeln!(out, "ring: {ring}").unwrap();
    writeln!(out, "d: {}", m.dim()).unwrap();
    if let Some(md) = m.moduli() {
        let s: Vec<String> = md.iter().map(u64::to_string).collect();
        writeln!(out, "moduli: {}", s.join(" ")).unwrap();
    }
    for (g, a) in m.generators().iter().zip(m.images()) {
        writeln!(out, "generator: {g}").unwrap();
        out.push_str(&format_matrix(a, ""));
    }
    out
}

/// Rows of ring literals, one line each, with `indent` in front.
pub fn format_matrix(a: &Matrix, indent: &str) -> String {
    let ring = a.ring();
    let mut out = String::new();
    for i in 0..a.rows() {
        let row: Vec<String> = a.row(i).iter().map(|x| ring.format_elem(x)).collect();
        writeln!(out, "{indent}{}", row.join(" ")).unwrap();
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next(&mut self, what: &str) -> Result<(usize, &'a str), FormatError> {
        self.inner
            .next()
            .map(|(i, l)| (i + 1, l))
            .ok_or_else(|| FormatError::Truncated(format!("expected {what}")))
    }

    fn field(&mut self, key: &str) -> Result<(usize, &'a str), FormatError> {
        let (no, line) = self.next(key)?;
        let prefix = format!("{key}: ");
        line.strip_prefix(&prefix)
            .map(|v| (no, v))
            .ok_or_else(|| perr(no, format!("expected `{key}: ...`, got `{line}`")))
    }

    fn peek_is(&self, key: &str) -> bool {
        self.inner
            .clone()
            .next()
            .is_some_and(|(_, l)| l.starts_with(&format!("{key}: ")))
    }
}

fn parse_num<T: std::str::FromStr>(no: usize, v: &str, what: &str) -> Result<T, FormatError> {
    v.trim()
        .parse()
        .map_err(|_| perr(no, format!("bad {what} `{v}`")))
}

/// Parses and verifies the module; `unchecked` skips relation and invertibility checks.
pub fn parse(text: &str, unchecked: bool) -> Result<GModule, FormatError> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let (no, v) = lines.field("format")?;
    let version: u32 = parse_num(no, v, "format version")?;
    if version != FORMAT_VERSION {
        return Err(perr(no, format!("unsupported format version {version}")));
    }
    let (no, v) = lines.field("group")?;
    let group: GroupKind = v
        .parse()
        .map_err(|_| perr(no, format!("bad group `{v}`")))?;
    let (no, v) = lines.field("n")?;
    let n: usize = parse_num(no, v, "degree")?;
    if n < 3 {
        return Err(perr(no, format!("degree {n} is below 3")));
    }
    let (no, v) = lines.field("ring")?;
    let ring: Ring = v.parse().map_err(|e| perr(no, format!("{e}")))?;
    let (no, v) = lines.field("d")?;
    let d: usize = parse_num(no, v, "dimension")?;
    let _ = no;
    let moduli = if lines.peek_is("moduli") {
        let (no, v) = lines.field("moduli")?;
        let md = v
            .split_whitespace()
            .map(|x| parse_num(no, x, "modulus"))
            .collect::<Result<Vec<u64>, _>>()?;
        if md.len() != d {
            return Err(perr(no, format!("{} moduli for dimension {d}", md.len())));
        }
        Some(md)
    } else {
        None
    };
    let mut images = Vec::new();
    for g in canonical_generators(group, n) {
        let (no, v) = lines.field("generator")?;
        let key = Perm::parse(v, n).map_err(|e| perr(no, format!("{e}")))?;
        if key != g {
            return Err(perr(no, format!("expected generator {g}, got {v}")));
        }
        let mut rows = Vec::with_capacity(d);
        for _ in 0..d {
            let (no, line) = lines.next(&format!("a matrix row for {g}"))?;
            let row = line
                .split_whitespace()
                .map(|x| ring.parse_elem(x).map_err(|e| perr(no, format!("{e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != d {
                return Err(perr(
                    no,
                    format!("row has {} entries, expected {d}", row.len()),
                ));
            }
            rows.push(row);
        }
        images.push(Matrix::from_rows(&ring, d, rows).map_err(|e| perr(no, format!("{e}")))?);
    }
    if let Some((no, line)) = lines.inner.next() {
        return Err(perr(
            no + 1,
            format!("unexpected trailing content `{line}`"),
        ));
    }
    let m = if unchecked {
        GModule::new_unchecked(group, n, &ring, images, moduli)?
    } else {
        GModule::with_moduli(group, n, &ring, images, moduli)?
    };
    Ok(m)
}
