//! Convolution products: normal forms in `R(β)`, the induced module
//! `A∘B`, and the deformed generators used for symmetric roots.

mod conv;
mod pbw;
mod tilde;

pub use conv::{apply_tau_word, associator, associator_inv, conv_label, conv_maps, conv_word, convolve, embed_pure_tensor};
pub use pbw::{
    export_engines, import_engines, pbw_reduce, with_engine, EngineDump, Exponents, Generator, GeneratorToken, MemoEntry,
    NormalFormElement, PbwEngine, Terms,
};
pub use tilde::{check_tilde_relations, TildeError, TildeOperators};
