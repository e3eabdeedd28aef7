//! Intertwiners, R-matrices, spectral deformation and renormalization.

mod hexagon;

pub use hexagon::{check_hexagons, HexagonReport};

use thiserror::Error;

use crate::base::{block_transposition, min_coset_reps, Permutation};
use crate::convolution::{apply_tau_word, conv_label, convolve, embed_pure_tensor};
use crate::linalg::{eval_poly_at, z_valuation, Matrix, Poly, PolyMatrix, QMatrix, Ring, Scalar, Var};
use crate::module::{KlrModule, ModuleError, PolyModule, RelationReport, Rep};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RMatrixError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("the root of the deformed factor is not symmetric")]
    NotSymmetric,
    #[error("position {0} is out of range for height {1}")]
    Position(usize, usize),
    #[error("the deformed R-matrix vanishes identically")]
    ZeroMap,
    #[error("the two renormalizations disagree")]
    Inconsistent,
}

fn unit_vec<R: Ring>(d: usize, i: usize) -> Vec<R> {
    let mut v = vec![R::zero(); d];
    v[i] = R::one();
    v
}

/// `φ_a v`: `(τ_a(x_a - x_{a+1}) + 1)` on components with `ν_a = ν_{a+1}`, `τ_a` on the rest.
pub fn phi_action<R: Ring>(m: &Rep<R>, a: usize, v: &[R]) -> Result<Vec<R>, RMatrixError> {
    if a == 0 || a >= m.height() {
        return Err(RMatrixError::Position(a, m.height()));
    }
    let mut eq = vec![R::zero(); v.len()];
    let mut neq = vec![R::zero(); v.len()];
    for (i, x) in v.iter().enumerate() {
        let w = m.word(i);
        if w.at(a) == w.at(a + 1) {
            eq[i] = x.clone();
        } else {
            neq[i] = x.clone();
        }
    }
    let xa = m.x(a).apply(&eq);
    let xb = m.x(a + 1).apply(&eq);
    let diff: Vec<R> = xa.iter().zip(&xb).map(|(p, q)| p.sub(q)).collect();
    let t1 = m.tau(a).apply(&diff);
    let t2 = m.tau(a).apply(&neq);
    Ok(t1.iter().zip(&t2).zip(&eq).map(|((p, q), r)| p.add(q).add(r)).collect())
}

/// `φ_{a_1} ⋯ φ_{a_l} v`, rightmost first.
pub fn phi_word_action<R: Ring>(m: &Rep<R>, word: &[usize], v: &[R]) -> Result<Vec<R>, RMatrixError> {
    let mut out = v.to_vec();
    for &a in word.iter().rev() {
        out = phi_action(m, a, &out)?;
    }
    Ok(out)
}

/// The matrix of `φ_{a_1} ⋯ φ_{a_l}`.
pub fn phi_matrix<R: Ring>(m: &Rep<R>, word: &[usize]) -> Result<Matrix<R>, RMatrixError> {
    let d = m.dim();
    let cols = (0..d).map(|j| phi_word_action(m, word, &unit_vec::<R>(d, j))).collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_cols(d, &cols))
}

/// `R_{M,N} : M∘N → N∘M`, `u ⊗ v ↦ φ_{w[n,m]}(v ⊗ u)`, using the canonical
/// reduced word of `w[n,m]`. `nm` must be `convolve(n, m)`.
pub fn big_r_into<R: Ring>(m: &Rep<R>, n: &Rep<R>, nm: &Rep<R>) -> Result<Matrix<R>, RMatrixError> {
    let word = block_transposition(n.height(), m.height()).canonical_reduced_word();
    big_r_with_word(m, n, nm, &word)
}

/// As [`big_r_into`] with an explicit reduced word for `w[n,m]`.
pub fn big_r_with_word<R: Ring>(m: &Rep<R>, n: &Rep<R>, nm: &Rep<R>, word: &[usize]) -> Result<Matrix<R>, RMatrixError> {
    m.same_family(n)?;
    let (hm, hn) = (m.height(), n.height());
    let (dm, dn) = (m.dim(), n.dim());
    let reps = min_coset_reps(hm, hn);
    let total = nm.dim();
    let mut cols = vec![Vec::new(); reps.len() * dm * dn];
    for i in 0..dm {
        for j in 0..dn {
            let v = embed_pure_tensor(total, dn, dm, &unit_vec::<R>(dn, j), &unit_vec::<R>(dm, i));
            let base = phi_word_action(nm, word, &v)?;
            for (wi, w) in reps.iter().enumerate() {
                cols[conv_label(dm, dn, wi, i, j)] = apply_tau_word(nm.taus(), &w.word, &base);
            }
        }
    }
    Ok(Matrix::from_cols(total, &cols))
}

/// `R_{M,N}` together with `M∘N` and `N∘M`.
pub struct RMatrix<R> {
    pub source: Rep<R>,
    pub target: Rep<R>,
    pub matrix: Matrix<R>,
}

pub fn big_r<R: Ring>(m: &Rep<R>, n: &Rep<R>) -> Result<RMatrix<R>, RMatrixError> {
    let source = convolve(m, n)?;
    let target = convolve(n, m)?;
    let matrix = big_r_into(m, n, &target)?;
    Ok(RMatrix { source, target, matrix })
}

/// `M_z`: `x_k` acts by `x_k + z` for the given spectral variable.
pub fn deform(m: &KlrModule, var: Var) -> Result<PolyModule, RMatrixError> {
    if !m.qfamily().is_symmetric(m.beta()) {
        return Err(RMatrixError::NotSymmetric);
    }
    Ok(shift(m, var))
}

fn shift(m: &KlrModule, var: Var) -> PolyModule {
    let p = m.to_poly();
    let d = m.dim();
    let z = Poly::var(var);
    let mut shift = Matrix::<Poly>::zeros(d, d);
    for i in 0..d {
        shift.set(i, i, z.clone());
    }
    let x = p.xs().iter().map(|x| x.add(&shift)).collect();
    let tau = p.taus().to_vec();
    Rep::new(m.qfamily().clone(), m.beta().clone(), m.words().to_vec(), x, tau).expect("same shape as the base module")
}

/// `R_{M_z,N} : M_z∘N → N∘M_z`.
pub fn big_r_deformed(m: &KlrModule, n: &KlrModule) -> Result<RMatrix<Poly>, RMatrixError> {
    big_r(&deform(m, Var::Z)?, &n.to_poly())
}

/// The largest `s` with `z^s | R`.
pub fn vanishing_order(r: &PolyMatrix) -> Result<u16, RMatrixError> {
    z_valuation(r).ok_or(RMatrixError::ZeroMap)
}

/// A renormalized R-matrix with its vanishing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Renormalized {
    pub order: u16,
    pub matrix: QMatrix,
}

fn leading(r: &PolyMatrix, sign: bool) -> Result<Renormalized, RMatrixError> {
    let order = vanishing_order(r)?;
    let mut matrix = r.coefficient(Var::Z, order).to_scalar().expect("entries are polynomials in z only");
    if sign && order % 2 == 1 {
        matrix = matrix.scale(&-Scalar::one());
    }
    Ok(Renormalized { order, matrix })
}

/// `r_{M,N} = (z^{-s} R_{M_z,N})|_{z=0} : M∘N → N∘M`. When the root of `N`
/// is symmetric too, `((-z)^{-s} R_{M,N_z})|_{z=0}` is computed as well and
/// must agree.
pub fn renormalized_r(m: &KlrModule, n: &KlrModule) -> Result<Renormalized, RMatrixError> {
    let r = leading(&big_r_deformed(m, n)?.matrix, false)?;
    if n.qfamily().is_symmetric(n.beta()) {
        let other = big_r(&m.to_poly(), &deform(n, Var::Z)?)?;
        let r2 = leading(&other.matrix, true)?;
        if r2 != r {
            return Err(RMatrixError::Inconsistent);
        }
    }
    Ok(r)
}

/// `r_{N,M} = ((-z)^{-t} R_{N,M_z})|_{z=0} : N∘M → M∘N`, deforming the right factor `M`.
pub fn renormalized_r_rev(n: &KlrModule, m: &KlrModule) -> Result<Renormalized, RMatrixError> {
    let r = big_r(&n.to_poly(), &deform(m, Var::Z)?)?;
    leading(&r.matrix, true)
}

/// Whether every entry of `R_{M_{z1},N_{z2}}` lies in `k[z1 - z2]`.
pub fn check_z1z2_dependence(m: &KlrModule, n: &KlrModule) -> Result<bool, RMatrixError> {
    let r = big_r(&deform(m, Var::Z1)?, &deform(n, Var::Z2)?)?;
    let ok = r.matrix.entries().all(|(_, _, p)| p.is_polynomial_in_difference(Var::Z1, Var::Z2));
    Ok(ok)
}

/// `Σ_ν (Q_{ν_a,ν_{a+1}}(x_a, x_{a+1}) + δ(ν_a = ν_{a+1})) e(ν)` on `m`.
fn phi_square_rhs<R: Ring>(m: &Rep<R>, a: usize) -> Matrix<R> {
    let d = m.dim();
    let mut out = Matrix::<R>::zeros(d, d);
    for (w, idx) in m.word_blocks() {
        let (i, j) = (w.at(a), w.at(a + 1));
        let mut p = m.qfamily().q(i, j);
        if i == j {
            p = &p + &Poly::one();
        }
        let val = eval_poly_at(&p, &[(Var::U, m.x(a)), (Var::V, m.x(a + 1))], d);
        out = out.add(&val.mask_cols(|c| idx.contains(&c)));
    }
    out
}

/// The intertwiner laws as matrix identities on `m`: the square, the braid
/// and far commutation relations, `φ_w x_k = x_{w(k)} φ_w`, and
/// `φ_w τ_k = τ_{w(k)} φ_w` when `w(k+1) = w(k) + 1`, for every `w`.
pub fn check_intertwiner_laws<R: Ring>(m: &Rep<R>) -> RelationReport {
    let mut rep = RelationReport::default();
    let n = m.height();
    let phis: Vec<Matrix<R>> = (1..n).map(|a| phi_matrix(m, &[a]).expect("in range")).collect();
    for a in 1..n {
        let p = &phis[a - 1];
        if p.mul(p) != phi_square_rhs(m, a) {
            rep.fail("phi_square", vec![a]);
        }
        if a + 1 < n {
            let q = &phis[a];
            if p.mul(q).mul(p) != q.mul(p).mul(q) {
                rep.fail("phi_braid", vec![a]);
            }
        }
        for b in a + 2..n {
            if p.mul(&phis[b - 1]) != phis[b - 1].mul(p) {
                rep.fail("phi_far", vec![a, b]);
            }
        }
    }
    for w in all_perms(n) {
        let word = w.canonical_reduced_word();
        let mut pw = Matrix::<R>::identity(m.dim());
        for &a in &word {
            pw = pw.mul(&phis[a - 1]);
        }
        for k in 1..=n {
            if pw.mul(m.x(k)) != m.x(w.apply(k)).mul(&pw) {
                rep.fail("phi_x", vec![k]);
            }
        }
        for k in 1..n {
            if w.apply(k + 1) == w.apply(k) + 1 && pw.mul(m.tau(k)) != m.tau(w.apply(k)).mul(&pw) {
                rep.fail("phi_tau", vec![k]);
            }
        }
    }
    rep
}

fn all_perms(n: usize) -> Vec<Permutation> {
    let mut out = vec![Permutation::identity(n)];
    let mut frontier = out.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for a in 1..n {
                if !p.is_left_descent(a) {
                    let q = p.left_mul_simple(a);
                    if !next.contains(&q) {
                        next.push(q);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
