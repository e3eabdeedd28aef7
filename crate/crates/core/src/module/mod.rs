//! Modules over KLR algebras: the data type, relation checks, duality,
//! restriction, hom-spaces, submodules and quotients.

mod hom;
mod ops;
mod relations;
mod rep;
mod sub;

pub use hom::{hom_space, is_isomorphic, is_module_map, ModuleMap};
pub use ops::{dual, restrict, Restriction};
pub use relations::{check_defining_relations, check_relations, RelationReport, Violation};
pub use rep::{ConvOrigin, KlrModule, ModuleError, PolyModule, Rep};
pub use sub::{invariant_closure, is_invariant, quotient, submodule_of, submodule_spanned, word_components};
