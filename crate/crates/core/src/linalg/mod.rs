//! Exact linear algebra: rationals, polynomials, matrices and subspaces.

pub mod echelon;
pub mod matrix;
pub mod poly;
pub mod ring;
pub mod scalar;
pub mod subspace;

pub use matrix::{eval_poly_at, z_valuation, Matrix, PolyMatrix, QMatrix};
pub use poly::{Monomial, Poly, Var};
pub use ring::Ring;
pub use scalar::Scalar;
pub use subspace::{kernel_basis, subspace_ops, AmbientMismatch, Subspace, SubspaceOps};
