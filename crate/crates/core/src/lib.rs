//! Exact computations with the standard modules of the symmetric and alternating groups.
//!
//! The crate builds permutation, standard and reduced standard modules over finite
//! fields, Z/kZ and Q, and implements the identification pipeline: operator
//! decompositions, recognition of standard modules via a covering map, extension of
//! Alt(n)-actions to Sym(n), and the geometrisation checks.

pub mod gmodule;
pub mod identify;
pub mod linalg;
pub mod permgroup;
pub mod ring;
pub mod standard;
pub mod universe;
