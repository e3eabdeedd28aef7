use super::rep::{KlrModule, ModuleError, Rep};
use crate::base::{RootVector, Word};
use crate::linalg::{Matrix, Ring};

/// The dual module: `ψ` fixes the generators, so every generator acts by its transpose.
pub fn dual<R: Ring>(m: &Rep<R>) -> Rep<R> {
    let x = m.xs().iter().map(Matrix::transpose).collect();
    let tau = m.taus().iter().map(Matrix::transpose).collect();
    Rep::from_parts_unchecked(m.qfamily().clone(), m.beta().clone(), m.words().to_vec(), x, tau)
}

/// `e(β,γ)L` with its commuting `R(β)` and `R(γ)` actions.
#[derive(Clone, Debug)]
pub struct Restriction {
    /// Basis indices of `L` spanning `e(β,γ)L`.
    pub indices: Vec<usize>,
    /// `e(β,γ)L` as an `R(β)`-module (words are prefixes).
    pub left: KlrModule,
    /// `e(β,γ)L` as an `R(γ)`-module (words are suffixes, generators shifted).
    pub right: KlrModule,
}

pub fn restrict(l: &KlrModule, beta: &RootVector, gamma: &RootVector) -> Result<Restriction, ModuleError> {
    let (m, n) = (beta.height(), gamma.height());
    if m + n != l.height() || beta.add(gamma) != *l.beta() {
        return Err(ModuleError::HeightMismatch(m, n, l.height()));
    }
    let indices: Vec<usize> =
        (0..l.dim()).filter(|&i| RootVector::of_word(&l.word(i).prefix(m)) == *beta).collect();
    let sub = |g: &Matrix<_>| g.submatrix(&indices, &indices);
    let left = Rep::from_parts_unchecked(
        l.qfamily().clone(),
        beta.clone(),
        indices.iter().map(|&i| l.word(i).prefix(m)).collect::<Vec<Word>>(),
        (1..=m).map(|k| sub(l.x(k))).collect(),
        (1..m).map(|k| sub(l.tau(k))).collect(),
    );
    let right = Rep::from_parts_unchecked(
        l.qfamily().clone(),
        gamma.clone(),
        indices.iter().map(|&i| l.word(i).suffix(m)).collect::<Vec<Word>>(),
        (1..=n).map(|k| sub(l.x(m + k))).collect(),
        (1..n).map(|k| sub(l.tau(m + k))).collect(),
    );
    Ok(Restriction { indices, left, right })
}
