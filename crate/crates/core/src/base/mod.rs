//! Index sets, root lattice elements, words, the defining family `Q_ij`,
//! and symmetric-group combinatorics.

pub mod perm;
pub mod qfamily;
pub mod root;

pub use perm::{block_transposition, min_coset_reps, CosetRep, Permutation};
pub use qfamily::{poly_uv, QFamily, QFamilyError};
pub use root::{words_of, Letter, RootVector, Word};
