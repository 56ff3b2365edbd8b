//! `symrep` command-line surface. Exit codes: 0 ran and reported (including NotRecognized),
//! 1 I/O or malformed input, 2 usage or precondition failure.

pub mod format;
pub mod table;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use symrep::gmodule::GModule;
use symrep::identify::{self, IdentifyOptions};
use symrep::permgroup::{GroupKind, KleinFour, Perm};
use symrep::ring::Ring;
use symrep::standard::{build_exceptional, ExceptionalTag, Flavor, StandardSpec};
use thiserror::Error;

pub use format::{parse, serialize, FormatError};

/// Environment variable that supplies `--seed` when the flag is absent.
pub const SEED_ENV: &str = "SYMREP_SEED";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Input(#[from] FormatError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Input(_) => 1,
            CliError::Usage(_) | CliError::Precondition(_) => 2,
        }
    }
}

fn pre(e: impl std::fmt::Display) -> CliError {
    CliError::Precondition(e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "symrep",
    version,
    about = "Standard modules of Sym(n) and Alt(n) and their identification"
)]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    /// Load module files without verifying relations and invertibility.
    #[arg(long, global = true)]
    pub unchecked: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct a module and write it as a module file.
    Build(BuildArgs),
    /// Run the identification pipeline on a module file.
    Identify {
        path: PathBuf,
        /// Check every index tuple, not one per orbit.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Minimal faithful Alt(n)-modules for a range of degrees and characteristics.
    Table {
        /// Inclusive degree range, `A..B`.
        #[arg(long, default_value = "5..8")]
        n_range: String,
        /// Comma-separated primes.
        #[arg(long, default_value = "2,3,5,7")]
        chars: String,
    },
    /// Check the local equations on a Sym(n)-module.
    Check {
        path: PathBuf,
        #[arg(long)]
        exhaustive: bool,
    },
    /// Split V = B ⊕ C for an element of prime order, in cycle notation.
    Decompose { path: PathBuf, element: String },
    /// Weight spaces of the Klein four-group on four points, e.g. `1,2,3,4`.
    Weights { path: PathBuf, support: String },
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long, default_value = "sym")]
    pub group: String,
    #[arg(long)]
    pub n: Option<usize>,
    /// perm, ustd or rstd.
    #[arg(long)]
    pub module: Option<String>,
    /// Ring token: gf:P, gf:P:K, zmod:K or q.
    #[arg(long)]
    pub ring: Option<String>,
    #[arg(long)]
    pub sign_twist: bool,
    #[arg(long)]
    pub outer_twist: bool,
    /// Same as `--group alt`.
    #[arg(long)]
    pub restrict_alt: bool,
    /// A built-in exceptional module by name, instead of a standard one.
    #[arg(long, conflicts_with_all = ["module", "ring", "n", "sign_twist", "outer_twist", "restrict_alt"])]
    pub exceptional: Option<String>,
    /// Output path; stdout when absent.
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let opts = |exhaustive: bool| IdentifyOptions {
        seed: cli.seed,
        exhaustive,
    };
    match &cli.command {
        Command::Build(a) => cmd_build(a),
        Command::Identify { path, exhaustive } => {
            cmd_identify(&load(path, cli.unchecked)?, &opts(*exhaustive))
        }
        Command::Table { n_range, chars } => cmd_table(n_range, chars, cli.seed),
        Command::Check { path, exhaustive } => {
            cmd_check(&load(path, cli.unchecked)?, &opts(*exhaustive))
        }
        Command::Decompose { path, element } => cmd_decompose(&load(path, cli.unchecked)?, element),
        Command::Weights { path, support } => cmd_weights(&load(path, cli.unchecked)?, support),
    }
}

pub fn load(path: &Path, unchecked: bool) -> Result<GModule, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(format::parse(&text, unchecked)?)
}

pub fn build_module(a: &BuildArgs) -> Result<GModule, CliError> {
    if let Some(name) = &a.exceptional {
        let tag: ExceptionalTag = name.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
        return build_exceptional(tag).map_err(pre);
    }
    let need = |what: &str| CliError::Usage(format!("--{what} is required"));
    let n = a.n.ok_or_else(|| need("n"))?;
    let flavor: Flavor = a
        .module
        .as_deref()
        .ok_or_else(|| need("module"))?
        .parse()
        .map_err(|e| CliError::Usage(format!("{e}")))?;
    let ring: Ring = a
        .ring
        .as_deref()
        .ok_or_else(|| need("ring"))?
        .parse()
        .map_err(|e| CliError::Usage(format!("{e}")))?;
    let group: GroupKind = a
        .group
        .parse()
        .map_err(|_| CliError::Usage(format!("unknown group `{}`", a.group)))?;
    let mut spec = StandardSpec::new(flavor, n, &ring);
    spec.sign_twist = a.sign_twist;
    spec.outer_twist = a.outer_twist;
    if group == GroupKind::Alt || a.restrict_alt {
        spec.group = GroupKind::Alt;
    }
    spec.validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    spec.build().map_err(pre)
}

pub fn cmd_build(a: &BuildArgs) -> Result<String, CliError> {
    let m = build_module(a)?;
    let text = format::serialize(&m);
    match &a.output {
        None => Ok(text),
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            Ok(format!("wrote: {}\nd: {}\n", p.display(), m.dim()))
        }
    }
}

fn push_rows(out: &mut String, key: &str, a: &symrep::linalg::Matrix) {
    writeln!(out, "{key}:").unwrap();
    out.push_str(&format::format_matrix(a, "  "));
}

pub fn cmd_identify(m: &GModule, opts: &IdentifyOptions) -> Result<String, CliError> {
    let r = identify::classify(m, opts).map_err(pre)?;
    let mut out = String::new();
    writeln!(out, "verdict: {}", r.verdict).unwrap();
    writeln!(out, "group: {}", r.group).unwrap();
    writeln!(out, "n: {}", r.n).unwrap();
    writeln!(out, "q: {}", r.q).unwrap();
    writeln!(out, "d: {}", r.d).unwrap();
    if let Some(why) = r.verdict.reason() {
        writeln!(out, "reason: {why}").unwrap();
    }
    if let Some(l) = r.dim_l {
        writeln!(out, "dim L: {l}").unwrap();
    }
    if r.verdict.is_recognized() {
        let tw = if r.twists.is_empty() {
            "none".to_string()
        } else {
            r.twists.join(",")
        };
        writeln!(out, "twists: {tw}").unwrap();
    }
    if let Some(k) = &r.kernel {
        writeln!(out, "kernel dim: {}", k.dim()).unwrap();
        push_rows(&mut out, "kernel", k.basis());
    }
    if r.intertwiner.is_some() {
        writeln!(out, "intertwiner verified: {}", r.verify_intertwiner(m)).unwrap();
    }
    if let Some(x) = &r.intertwiner {
        push_rows(&mut out, "intertwiner", x);
    }
    for note in &r.notes {
        writeln!(out, "note: {note}").unwrap();
    }
    Ok(out)
}

pub fn cmd_check(m: &GModule, opts: &IdentifyOptions) -> Result<String, CliError> {
    let rep = identify::check_local_equations(m, opts).map_err(pre)?;
    let mut out = String::new();
    for (name, ok) in &rep.checks {
        writeln!(out, "check {name}: {}", if *ok { "holds" } else { "fails" }).unwrap();
    }
    writeln!(out, "all hold: {}", rep.all_hold()).unwrap();
    Ok(out)
}

pub fn cmd_decompose(m: &GModule, element: &str) -> Result<String, CliError> {
    let g = Perm::parse(element, m.n()).map_err(|e| CliError::Usage(e.to_string()))?;
    let (b, c) = identify::coprimality_decompose(m, &g).map_err(pre)?;
    let direct = b.intersect(&c).map_err(pre)?.is_zero() && b.dim() + c.dim() == m.dim();
    let mut out = String::new();
    writeln!(out, "element: {g}").unwrap();
    writeln!(out, "order: {}", g.order()).unwrap();
    writeln!(out, "dim B: {}", b.dim()).unwrap();
    writeln!(out, "dim C: {}", c.dim()).unwrap();
    writeln!(out, "direct: {direct}").unwrap();
    push_rows(&mut out, "basis B", b.basis());
    push_rows(&mut out, "basis C", c.basis());
    Ok(out)
}

pub fn cmd_weights(m: &GModule, support: &str) -> Result<String, CliError> {
    let pts = support
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("bad support `{support}`")))?;
    let pts: [usize; 4] = pts
        .try_into()
        .map_err(|_| CliError::Usage("support needs four points".into()))?;
    let k = KleinFour::new(m.n(), pts).map_err(|e| CliError::Usage(e.to_string()))?;
    let w = identify::weight_decompose(m, &k).map_err(pre)?;
    let dims: Vec<String> = w.dims().iter().map(usize::to_string).collect();
    let mut out = String::new();
    writeln!(out, "support: {}", pts.map(|p| p.to_string()).join(",")).unwrap();
    writeln!(out, "dims: {}", dims.join(",")).unwrap();
    writeln!(out, "direct: {}", w.is_direct_fill()).unwrap();
    for (weight, s) in &w.spaces {
        writeln!(out, "dim {weight}: {}", s.dim()).unwrap();
        push_rows(&mut out, &format!("basis {weight}"), s.basis());
    }
    Ok(out)
}

pub fn cmd_table(n_range: &str, chars: &str, seed: u64) -> Result<String, CliError> {
    let (lo, hi) = table::parse_range(n_range)?;
    let primes = table::parse_chars(chars)?;
    let cells = table::compute(lo, hi, &primes, seed)?;
    let mut out = String::new();
    for (i, c) in cells.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&c.to_string());
    }
    Ok(out)
}
