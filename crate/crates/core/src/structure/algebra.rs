use std::collections::{HashMap, VecDeque};

use crate::linalg::echelon::{to_sparse, SparseEchelon};
use crate::linalg::subspace::unit;
use crate::linalg::{QMatrix, Scalar, Subspace};
use crate::module::{quotient, submodule_of, KlrModule, ModuleError, ModuleMap};

/// The image of `R(β)` in `End(M)`: a basis of the unital matrix algebra
/// generated by the `e(ν)`, `x_k` and `τ_k`.
#[derive(Clone, Debug)]
pub struct ActionAlgebra {
    pub dim_module: usize,
    pub basis: Vec<QMatrix>,
}

impl ActionAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether the algebra is all of `End(M)`.
    pub fn is_full(&self) -> bool {
        self.dim_module > 0 && self.basis.len() == self.dim_module * self.dim_module
    }
}

pub(crate) fn flatten(m: &QMatrix) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); m.rows() * m.cols()];
    for (i, j, x) in m.entries() {
        v[i * m.cols() + j] = x.clone();
    }
    v
}

type Sparse = Vec<(usize, usize, Scalar)>;

/// `g · a` for a sparse `g`.
fn sparse_left_mul(g: &Sparse, a: &QMatrix) -> QMatrix {
    let d = a.rows();
    let mut out = QMatrix::zeros(d, a.cols());
    for (i, k, v) in g {
        for (j, x) in a.row(*k).iter().enumerate() {
            if !x.is_zero() {
                out.add_at(*i, j, &(v * x));
            }
        }
    }
    out
}

pub fn action_algebra(m: &KlrModule) -> ActionAlgebra {
    let d = m.dim();
    if d == 0 {
        return ActionAlgebra { dim_module: 0, basis: Vec::new() };
    }
    let gens: Vec<Sparse> =
        m.generators().map(|g| g.entries().map(|(i, j, x)| (i, j, x.clone())).collect()).filter(|g: &Sparse| !g.is_empty()).collect();
    let mut ech = SparseEchelon::new(d * d);
    let mut basis = Vec::new();
    let mut queue: VecDeque<QMatrix> = m.word_blocks().keys().map(|w| m.projection(w)).collect();
    while let Some(a) = queue.pop_front() {
        if ech.is_full() {
            break;
        }
        if !ech.insert(&to_sparse(&flatten(&a))) {
            continue;
        }
        for g in &gens {
            let p = sparse_left_mul(g, &a);
            if !p.is_zero() {
                queue.push_back(p);
            }
        }
        basis.push(a);
    }
    ActionAlgebra { dim_module: d, basis }
}

/// A basis of the trace-form radical `{a ∈ A : tr(ab) = 0 for all b ∈ A}`.
pub fn radical_basis(alg: &ActionAlgebra) -> Vec<QMatrix> {
    if alg.is_full() || alg.basis.is_empty() {
        return Vec::new();
    }
    let d = alg.dim_module;
    let r = alg.dim();
    let entries: Vec<Sparse> = alg.basis.iter().map(|b| b.entries().map(|(i, j, x)| (i, j, x.clone())).collect()).collect();
    // tr(a_i a_j) = sum of a_i[p][q] a_j[q][p], over the few nonzero entries
    let mut ech = SparseEchelon::new(r);
    for j in 0..r {
        let transposed: HashMap<(usize, usize), &Scalar> = entries[j].iter().map(|(p, q, x)| ((*q, *p), x)).collect();
        let row: Vec<Scalar> = entries
            .iter()
            .map(|ai| {
                let mut acc = Scalar::zero();
                for (p, q, x) in ai {
                    if let Some(y) = transposed.get(&(*p, *q)) {
                        acc += &(x * *y);
                    }
                }
                acc
            })
            .collect();
        ech.insert(&to_sparse(&row));
    }
    ech.null_space()
        .into_iter()
        .map(|c| {
            let mut acc = QMatrix::zeros(d, d);
            for (x, b) in c.iter().zip(&alg.basis) {
                if !x.is_zero() {
                    acc = acc.add(&b.scale(x));
                }
            }
            acc
        })
        .collect()
}

/// `rad(A)·M`.
pub fn radical_subspace(m: &KlrModule) -> Subspace {
    let rad = radical_basis(&action_algebra(m));
    radical_image(m.dim(), &rad)
}

fn radical_image(d: usize, rad: &[QMatrix]) -> Subspace {
    let mut vs: Vec<Vec<Scalar>> = Vec::new();
    for a in rad {
        for j in 0..d {
            let c = a.col(j);
            if c.iter().any(|x| !x.is_zero()) {
                vs.push(c);
            }
        }
    }
    Subspace::span(d, vs.iter())
}

/// `{v ∈ M : rad(A)·v = 0}`.
pub fn socle_subspace(m: &KlrModule) -> Subspace {
    let d = m.dim();
    let rad = radical_basis(&action_algebra(m));
    let mut ech = SparseEchelon::new(d);
    for a in &rad {
        for i in 0..d {
            ech.insert(&to_sparse(a.row(i)));
        }
    }
    if ech.rank() == 0 {
        return Subspace::full(d);
    }
    let ns = ech.null_space();
    Subspace::span(d, ns.iter())
}

pub fn socle(m: &KlrModule) -> Result<(KlrModule, ModuleMap), ModuleError> {
    submodule_of(m, &socle_subspace(m))
}

pub fn head(m: &KlrModule) -> Result<(KlrModule, ModuleMap), ModuleError> {
    quotient(m, &radical_subspace(m))
}

/// Basis vectors of `M` as columns of the identity.
pub(crate) fn units(d: usize) -> Vec<Vec<Scalar>> {
    (0..d).map(|i| unit(d, i)).collect()
}
