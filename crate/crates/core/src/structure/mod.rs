//! Radicals, socles and heads, simplicity and realness, head convolution,
//! the adjunction modules, and the verifier for the main theorem.

mod algebra;
mod derived;
mod simple;
mod theorem;

use thiserror::Error;

use crate::module::ModuleError;

pub use algebra::{action_algebra, head, radical_basis, radical_subspace, socle, socle_subspace, ActionAlgebra};
pub use derived::{adjunction_x, adjunction_y, crystal_f, crystal_f_dual, hconv, sandwich};
pub use simple::{end_dimension, is_real, is_simple, minimal_polynomial, rational_roots, Realness, Simplicity};
pub use theorem::{verify_main_theorem, Claim, StructureReport, TheoremError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("{0} not simple")]
    NotSimple(&'static str),
    #[error("root of m is not contained in the root of L")]
    RootMismatch,
    #[error("subspace is not a submodule")]
    NotInvariant,
    #[error("X∘M3 is not contained in M1∘Y")]
    SandwichPrecondition,
    #[error("X is not contained in M1∘N")]
    SandwichPostcondition,
    #[error(transparent)]
    Module(#[from] ModuleError),
}
