use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::base::Letter;
use crate::linalg::echelon::{to_sparse, SparseEchelon};
use crate::linalg::{eval_poly_at, QMatrix, Scalar, Var};
use crate::module::{KlrModule, RelationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TildeError {
    #[error("module does not come from a convolution")]
    NoOrigin,
    #[error("both factors must have symmetric roots")]
    NotSymmetric,
}

/// The operators `x̃_{a,b}` and `τ̃_c` acting on a convolution `L∘R`.
///
/// `x̃_{a,b} = Σ (x_a - x_b) e(ν)` over `ν_a, ν_b ∈ supp L ∩ supp R`, and
/// `τ̃_c = Σ τ_c e(ν)` over `ν_c ∈ supp L`, `ν_{c+1} ∈ supp R`.
pub struct TildeOperators<'a> {
    m: &'a KlrModule,
    left: BTreeSet<Letter>,
    right: BTreeSet<Letter>,
    common: BTreeSet<Letter>,
}

impl<'a> TildeOperators<'a> {
    pub fn new(m: &'a KlrModule) -> Result<Self, TildeError> {
        let o = m.origin().ok_or(TildeError::NoOrigin)?;
        let left = o.left_beta.support();
        let right = o.right_beta.support();
        let common = left.intersection(&right).copied().collect();
        Ok(TildeOperators { m, left, right, common })
    }

    fn in_common(&self, j: usize, positions: &[usize]) -> bool {
        positions.iter().all(|&p| self.common.contains(&self.m.word(j).at(p)))
    }

    pub fn x(&self, a: usize, b: usize) -> QMatrix {
        self.m.x(a).sub(self.m.x(b)).mask_cols(|j| self.in_common(j, &[a, b]))
    }

    pub fn tau(&self, c: usize) -> QMatrix {
        self.m.tau(c).mask_cols(|j| {
            let w = self.m.word(j);
            self.left.contains(&w.at(c)) && self.right.contains(&w.at(c + 1))
        })
    }

    /// Diagonal matrix with entry `f(ν)` on each basis vector of word `ν`.
    fn diagonal(&self, f: impl Fn(usize) -> Scalar) -> QMatrix {
        let d = self.m.dim();
        let mut out = QMatrix::zeros(d, d);
        for j in 0..d {
            let v = f(j);
            if !v.is_zero() {
                out.set(j, j, v);
            }
        }
        out
    }

    /// `Σ p(x_{k_1}, …) e(ν)` over the basis vectors selected by `keep`.
    fn poly_on(&self, p: &crate::linalg::Poly, at: &[(Var, usize)], keep: impl Fn(usize) -> bool) -> QMatrix {
        let subs: Vec<(Var, &QMatrix)> = at.iter().map(|(v, k)| (*v, self.m.x(*k))).collect();
        eval_poly_at(p, &subs, self.m.dim()).mask_cols(keep)
    }

    /// A spanning set for the image of the commutative algebra `A` generated
    /// by the `x̃_{a,b}` and the `e(ν)`.
    pub fn algebra_a(&self) -> Vec<QMatrix> {
        let n = self.m.height();
        let d = self.m.dim();
        let gens: Vec<QMatrix> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).map(|(a, b)| self.x(a, b)).collect();
        let mut ech = SparseEchelon::new(d * d);
        let mut basis = Vec::new();
        let mut queue: VecDeque<QMatrix> = self.m.word_blocks().keys().map(|w| self.m.projection(w)).collect();
        while let Some(e) = queue.pop_front() {
            if !ech.insert(&to_sparse(&flatten(&e))) {
                continue;
            }
            for g in &gens {
                queue.push_back(g.mul(&e));
            }
            basis.push(e);
        }
        basis
    }
}

fn flatten(m: &QMatrix) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); m.rows() * m.cols()];
    for (i, j, x) in m.entries() {
        v[i * m.cols() + j] = x.clone();
    }
    v
}

fn delta(b: bool) -> i64 {
    b as i64
}

/// Check the commutation relations of `x̃`, `τ̃` on a convolution of modules
/// with symmetric roots, and that every error term lies in `A`.
///
/// The first relation is checked with the indicator that makes it an
/// identity: the right hand side on `e(ν)` is nonzero only if
/// `ν_c = ν_{c+1}` and `ν_{s_c a}, ν_{s_c b}` lie in the common support.
pub fn check_tilde_relations(m: &KlrModule) -> Result<RelationReport, TildeError> {
    let o = m.origin().ok_or(TildeError::NoOrigin)?;
    let q = m.qfamily();
    if !q.is_symmetric(&o.left_beta) || !q.is_symmetric(&o.right_beta) {
        return Err(TildeError::NotSymmetric);
    }
    let t = TildeOperators::new(m)?;
    let n = m.height();
    let mut report = RelationReport::default();
    let mut rhs_all: Vec<(&'static str, Vec<usize>, QMatrix)> = Vec::new();
    let s = |c: usize, k: usize| if k == c { c + 1 } else if k == c + 1 { c } else { k };
    let taus: Vec<QMatrix> = (1..n).map(|c| t.tau(c)).collect();

    for a in 1..=n {
        for b in 1..=n {
            if a == b {
                continue;
            }
            for c in 1..n {
                let lhs = t.x(a, b).mul(&taus[c - 1]).sub(&taus[c - 1].mul(&t.x(s(c, a), s(c, b))));
                let coef = delta(a == c + 1) - delta(a == c) - delta(b == c + 1) + delta(b == c);
                let rhs = t.diagonal(|j| {
                    let w = m.word(j);
                    let hit = w.at(c) == w.at(c + 1) && t.in_common(j, &[c, s(c, a), s(c, b)]);
                    Scalar::from_int(if hit { coef } else { 0 })
                });
                if lhs != rhs {
                    report.fail("tilde_x_tau", vec![a, b, c]);
                }
                rhs_all.push(("tilde_x_tau", vec![a, b, c], lhs));
            }
        }
    }
    for a in 1..n {
        let lhs = taus[a - 1].mul(&taus[a - 1]);
        let mut rhs = QMatrix::zeros(m.dim(), m.dim());
        let mut by_pair: BTreeMap<(Letter, Letter), Vec<usize>> = BTreeMap::new();
        for j in 0..m.dim() {
            if t.in_common(j, &[a, a + 1]) {
                by_pair.entry((m.word(j).at(a), m.word(j).at(a + 1))).or_default().push(j);
            }
        }
        for ((i, k), cols) in by_pair {
            rhs = rhs.add(&t.poly_on(&q.q(i, k), &[(Var::U, a), (Var::V, a + 1)], |j| cols.contains(&j)));
        }
        if lhs != rhs {
            report.fail("tilde_square", vec![a]);
        }
        rhs_all.push(("tilde_square", vec![a], lhs));
    }
    for a in 1..n {
        for b in a + 2..n {
            if taus[a - 1].mul(&taus[b - 1]) != taus[b - 1].mul(&taus[a - 1]) {
                report.fail("tilde_far", vec![a, b]);
            }
        }
    }
    for a in 1..n.saturating_sub(1) {
        let (ta, tb) = (&taus[a - 1], &taus[a]);
        let lhs = tb.mul(ta).mul(tb).sub(&ta.mul(tb).mul(ta));
        let mut rhs = QMatrix::zeros(m.dim(), m.dim());
        let mut by_pair: BTreeMap<(Letter, Letter), Vec<usize>> = BTreeMap::new();
        for j in 0..m.dim() {
            let w = m.word(j);
            if t.in_common(j, &[a, a + 1]) && w.at(a) == w.at(a + 2) {
                by_pair.entry((w.at(a), w.at(a + 1))).or_default().push(j);
            }
        }
        for ((i, k), cols) in by_pair {
            let qb = q.qbar(i, k).expect("validated family");
            rhs = rhs.add(&t.poly_on(&qb, &[(Var::U, a), (Var::V, a + 1), (Var::W, a + 2)], |j| cols.contains(&j)));
        }
        if lhs != rhs {
            report.fail("tilde_braid", vec![a]);
        }
        rhs_all.push(("tilde_braid", vec![a], lhs));
    }

    let alg = t.algebra_a();
    let mut ech = SparseEchelon::new(m.dim() * m.dim());
    for e in &alg {
        ech.insert(&to_sparse(&flatten(e)));
    }
    for (name, idx, mat) in rhs_all {
        if !ech.contains(&to_sparse(&flatten(&mat))) {
            let mut v = idx;
            v.insert(0, match name {
                "tilde_x_tau" => 1,
                "tilde_square" => 2,
                _ => 4,
            });
            report.fail("tilde_rhs_in_a", v);
        }
    }
    Ok(report)
}
