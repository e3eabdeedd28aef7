//! Modules over KLR (quiver Hecke) algebras: exact linear algebra, convolution
//! products, R-matrices and structural analysis.

pub mod base;
pub mod convolution;
pub mod corpus;
pub mod io;
pub mod linalg;
pub mod module;
pub mod rmatrix;
pub mod structure;
