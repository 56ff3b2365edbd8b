//! Identification of small faithful modules: operator decompositions, recognition of the
//! standard module, extension from Alt(n) to Sym(n), geometrisation, and the full pipeline.

mod classify;
mod extend;
mod geometrise;
mod operators;
mod recognise;

use std::fmt;

use thiserror::Error;

use crate::gmodule::{GModule, GModuleError};
use crate::linalg::{LinalgError, Matrix, Subspace};
use crate::permgroup::{GroupKind, PermError};
use crate::standard::StandardError;

pub use classify::classify;
pub use extend::{extend_alt_to_sym, Extension, LineSystem};
pub use geometrise::transposition_bracket_dim;
pub use geometrise::{first_geometrise, Prescription};
pub use operators::{
    check_bracket_centralised, check_local_equations, coprimality_decompose, weight_decompose,
    LocalEquationsReport, OperatorPair, Weight, WeightDecomposition,
};
pub use recognise::recognise;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentifyError {
    #[error("characteristic {p} equals the element order: coprimality does not apply")]
    CharacteristicClash { p: u64 },
    #[error("the weight decomposition needs characteristic other than 2")]
    CharacteristicTwo,
    #[error("element {0} does not have prime order")]
    NotPrimeOrder(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("covering map is not equivariant: {0}")]
    EquivarianceFailed(String),
    #[error("kernel differs from the prediction: {0}")]
    KernelMismatch(String),
    #[error("degenerate line: {0}")]
    LineDegenerate(String),
    #[error("reconstructed transpositions fail a relation: {0}")]
    RelationFailed(String),
    #[error("dimension {d} is below the bound {bound}")]
    DimensionTooSmall { d: usize, bound: usize },
    #[error("no geometrisation branch applies: {0}")]
    NoBranchApplies(String),
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<IdentifyError>,
    },
    #[error(transparent)]
    GModule(#[from] GModuleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Standard(#[from] StandardError),
}

impl IdentifyError {
    pub(crate) fn at(stage: &'static str) -> impl FnOnce(IdentifyError) -> IdentifyError {
        move |e| IdentifyError::Stage {
            stage,
            source: Box::new(e),
        }
    }
}

/// Runtime knobs shared by the pipeline stages.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IdentifyOptions {
    pub seed: u64,
    /// Check every index tuple instead of one representative per orbit.
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    StandardRstd,
    SignTwistedRstd,
    UstdCovered,
    SignTwistedUstdCovered,
    OuterTwisted(Box<Verdict>),
    NotRecognized(String),
}

impl Verdict {
    pub fn is_recognized(&self) -> bool {
        match self {
            Verdict::NotRecognized(_) => false,
            Verdict::OuterTwisted(v) => v.is_recognized(),
            _ => true,
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Verdict::NotRecognized(r) => Some(r),
            Verdict::OuterTwisted(v) => v.reason(),
            _ => None,
        }
    }

    pub(crate) fn sign_twisted(self) -> Verdict {
        match self {
            Verdict::StandardRstd => Verdict::SignTwistedRstd,
            Verdict::SignTwistedRstd => Verdict::StandardRstd,
            Verdict::UstdCovered => Verdict::SignTwistedUstdCovered,
            Verdict::SignTwistedUstdCovered => Verdict::UstdCovered,
            other => other,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::StandardRstd => f.write_str("StandardRstd"),
            Verdict::SignTwistedRstd => f.write_str("SignTwistedRstd"),
            Verdict::UstdCovered => f.write_str("UstdCovered"),
            Verdict::SignTwistedUstdCovered => f.write_str("SignTwistedUstdCovered"),
            Verdict::OuterTwisted(v) => write!(f, "OuterTwisted({v})"),
            Verdict::NotRecognized(_) => f.write_str("NotRecognized"),
        }
    }
}

/// Outcome of [`recognise`] or [`classify`].
///
/// When `intertwiner` is set, `intertwiner · source(g) = m(g) · intertwiner` holds for every
/// canonical generator g of the input module m, where `source` is the model module
/// (rstd or ustd over L, with the recorded twists applied).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    pub group: GroupKind,
    pub n: usize,
    /// Characteristic; 0 for Q.
    pub q: u64,
    pub d: usize,
    pub dim_l: Option<usize>,
    /// Kernel of the covering map `ustd(n, L) -> V`, in ustd coordinates.
    pub kernel: Option<Subspace>,
    pub intertwiner: Option<Matrix>,
    pub source: Option<GModule>,
    /// Sym(n)-action reconstructed from an Alt(n)-input, in the input's basis.
    pub extension: Option<GModule>,
    pub twists: Vec<String>,
    pub notes: Vec<String>,
}

impl ClassificationResult {
    pub(crate) fn not_recognized(m: &GModule, reason: impl Into<String>) -> ClassificationResult {
        ClassificationResult {
            verdict: Verdict::NotRecognized(reason.into()),
            group: m.group(),
            n: m.n(),
            q: m.ring().char_value().unwrap_or(0),
            d: m.dim(),
            dim_l: None,
            kernel: None,
            intertwiner: None,
            source: None,
            extension: None,
            twists: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn kernel_dim(&self) -> Option<usize> {
        self.kernel.as_ref().map(Subspace::dim)
    }

    /// Re-checks the intertwining identity on every canonical generator of `m`.
    pub fn verify_intertwiner(&self, m: &GModule) -> bool {
        match (&self.intertwiner, &self.source) {
            (Some(x), Some(s)) => m.is_intertwiner_from(s, x) && crate::linalg::is_invertible(x),
            _ => false,
        }
    }
}
