//! Exact dense linear algebra over the rings of [`crate::ring`].

mod echelon;
pub mod gf2;
mod matrix;
pub mod meataxe;
pub mod poly;
pub mod smith;
mod subspace;

use thiserror::Error;

use crate::ring::RingError;

pub use echelon::{image, inverse, is_invertible, kernel, rank, rref, solve, EchelonBuilder, Rref};
pub use matrix::Matrix;
pub use meataxe::{
    commutant_dimension, intertwiner_basis, irreducibility, irreducible_over_q,
    meataxe_irreducible, spin_subspace, spin_vectors, Irreducibility,
};
pub use smith::{smith_normal_form, IntMatrix, SmithForm};
pub use subspace::{quotient_map, subspace_intersect, subspace_sum, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("ring {0} is not a field")]
    NotAField(String),
    #[error("ring {0} is not a finite field")]
    NotFiniteField(String),
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("expected a square matrix, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("no generators given")]
    EmptyGenerators,
    #[error("module has dimension zero")]
    DimensionZero,
    #[error("meataxe gave up after {0} random algebra elements")]
    RandomnessExhausted(usize),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}
