use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::algebra::{action_algebra, radical_basis, units, ActionAlgebra};
use crate::convolution::convolve;
use crate::linalg::echelon::{to_dense, to_sparse, SparseEchelon, SparseRow};
use crate::linalg::{QMatrix, Scalar, Subspace};
use crate::module::{dual, hom_space, invariant_closure, KlrModule};
use crate::rmatrix::renormalized_r;

/// Outcome of the simplicity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    /// A proper submodule (zero for the zero module).
    NotSimple(Subspace),
    /// Semisimple with `dim End > 1`, but no splitting was found.
    SemisimpleUnsplit,
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Simplicity::Simple => "SIMPLE",
            Simplicity::NotSimple(_) => "NOT_SIMPLE",
            Simplicity::SemisimpleUnsplit => "SEMISIMPLE_UNSPLIT",
        }
    }
}

/// `dim End(M)`; an absolutely simple module gives 1 without solving for `End`.
pub fn end_dimension(m: &KlrModule) -> usize {
    if m.dim() > 0 && matches!(rank_one_test(m), Some(Simplicity::Simple)) {
        return 1;
    }
    if m.dim() > 0 && action_algebra(m).is_full() {
        return 1;
    }
    hom_space(m, m).map(|h| h.len()).unwrap_or(0)
}

pub fn is_simple(m: &KlrModule) -> Simplicity {
    let d = m.dim();
    if d == 0 {
        return Simplicity::NotSimple(Subspace::zero(0));
    }
    if let Some(s) = rank_one_test(m) {
        return s;
    }
    for v in units(d) {
        let s = invariant_closure(m, &[v]).expect("length matches");
        if !s.is_full() {
            return Simplicity::NotSimple(s);
        }
    }
    let alg = action_algebra(m);
    if alg.is_full() {
        return Simplicity::Simple;
    }
    simple_from_algebra(m, &alg)
}

/// Columns of a generator as sparse lists.
fn sparse_cols(g: &QMatrix) -> Vec<SparseRow> {
    let mut cols = vec![Vec::new(); g.cols()];
    for (i, j, x) in g.entries() {
        cols[j].push((i, x.clone()));
    }
    cols
}

/// An independent spanning set of `g·V`.
fn sparse_image(cols: &[SparseRow], span: &[SparseRow]) -> Vec<SparseRow> {
    let d = cols.len();
    let mut ech = SparseEchelon::new(d);
    let mut out = Vec::new();
    for v in span {
        let mut w = vec![Scalar::zero(); d];
        for (j, x) in v {
            for (i, a) in &cols[*j] {
                w[*i] += &(a * x);
            }
        }
        let w = to_sparse(&w);
        if !w.is_empty() && ech.insert(&w) {
            out.push(w);
            if ech.is_full() {
                break;
            }
        }
    }
    out
}

/// Norton's criterion with a rank-one element of the action algebra. If
/// `θ = g_k⋯g_1 e(ν)` has image `k·u` and `θᵀ` has image `k·u'`, then `M` is
/// simple iff `u` generates `M` and `u'` generates `M*`, and then
/// `End(M) = k` because `End(M)` preserves the line `k·u`. `None` when
/// steepest descent on the rank does not reach one.
fn rank_one_test(m: &KlrModule) -> Option<Simplicity> {
    let d = m.dim();
    let gens: Vec<&QMatrix> = m.generators().filter(|g| !g.is_zero()).collect();
    let cols: Vec<Vec<SparseRow>> = gens.iter().map(|g| sparse_cols(g)).collect();
    let blocks = m.word_blocks();
    let (nu, idx) = blocks.iter().min_by_key(|(_, i)| i.len())?;
    let mut img: Vec<SparseRow> = idx.iter().map(|&i| vec![(i, Scalar::one())]).collect();
    let mut path = Vec::new();
    while img.len() > 1 {
        let (k, next) = cols
            .iter()
            .enumerate()
            .map(|(k, c)| (k, sparse_image(c, &img)))
            .filter(|(_, s)| !s.is_empty() && s.len() < img.len())
            .min_by_key(|(_, s)| s.len())?;
        path.push(k);
        img = next;
    }
    let u = to_dense(&img[0], d);
    // θᵀ = e(ν) g_1ᵀ ⋯ g_kᵀ
    let mut co: Vec<SparseRow> = (0..d).map(|i| vec![(i, Scalar::one())]).collect();
    for &k in path.iter().rev() {
        co = sparse_image(&sparse_cols(&gens[k].transpose()), &co);
    }
    co = sparse_image(&sparse_cols(&m.projection(nu)), &co);
    debug_assert_eq!(co.len(), 1);
    let s = invariant_closure(m, &[u]).expect("length matches");
    if !s.is_full() {
        return Some(Simplicity::NotSimple(s));
    }
    let s2 = invariant_closure(&dual(m), &[to_dense(&co[0], d)]).expect("length matches");
    if !s2.is_full() {
        // the annihilator of a proper submodule of M*
        return Some(Simplicity::NotSimple(Subspace::kernel(&QMatrix::from_rows(s2.basis().to_vec()))));
    }
    Some(Simplicity::Simple)
}

fn simple_from_algebra(m: &KlrModule, alg: &ActionAlgebra) -> Simplicity {
    let d = m.dim();
    let rad = radical_basis(alg);
    let mut vs = Vec::new();
    for a in &rad {
        for j in 0..d {
            vs.push(a.col(j));
        }
    }
    let radm = Subspace::span(d, vs.iter());
    if !radm.is_zero() {
        return Simplicity::NotSimple(radm);
    }
    let end = hom_space(m, m).expect("same module");
    if end.len() == 1 {
        return Simplicity::Simple;
    }
    for f in &end {
        if let Some(w) = split_with(&f.matrix) {
            return Simplicity::NotSimple(w);
        }
    }
    Simplicity::SemisimpleUnsplit
}

/// A proper nonzero submodule from an endomorphism: its kernel if singular,
/// else the kernel of `f - λ` for a rational eigenvalue `λ`.
fn split_with(f: &QMatrix) -> Option<Subspace> {
    let d = f.rows();
    let proper = |s: Subspace| if !s.is_zero() && !s.is_full() { Some(s) } else { None };
    let k = Subspace::kernel(f);
    if !k.is_zero() {
        return proper(k);
    }
    for lambda in rational_roots(&minimal_polynomial(f)) {
        let g = f.sub(&QMatrix::identity(d).scale(&lambda));
        if let Some(s) = proper(Subspace::kernel(&g)) {
            return Some(s);
        }
    }
    None
}

/// Monic minimal polynomial, lowest degree first.
pub fn minimal_polynomial(f: &QMatrix) -> Vec<Scalar> {
    let d = f.rows();
    let mut powers = vec![QMatrix::identity(d)];
    loop {
        let k = powers.len();
        let cand = powers[k - 1].mul(f);
        // solve cand = Σ c_i powers[i]
        let cols: Vec<Vec<Scalar>> = powers.iter().chain(std::iter::once(&cand)).map(super::algebra::flatten).collect();
        let mut ech = SparseEchelon::new(k + 1);
        for r in 0..d * d {
            let row: Vec<Scalar> = cols.iter().map(|c| c[r].clone()).collect();
            ech.insert(&to_sparse(&row));
        }
        let ns = ech.null_space();
        if let Some(v) = ns.into_iter().find(|v| !v[k].is_zero()) {
            let lead = v[k].clone();
            return v.iter().map(|x| x * &lead.inv().expect("nonzero")).collect();
        }
        powers.push(cand);
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let Some(small) = n.to_u64() else {
        return vec![BigInt::one()];
    };
    if small > 1_000_000_000_000 {
        return vec![BigInt::one()];
    }
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= small {
        if small % i == 0 {
            out.push(BigInt::from(i));
            if i * i != small {
                out.push(BigInt::from(small / i));
            }
        }
        i += 1;
    }
    out
}

/// Rational roots of a polynomial with rational coefficients (lowest degree first).
pub fn rational_roots(p: &[Scalar]) -> Vec<Scalar> {
    let mut lcm = BigInt::one();
    for c in p {
        lcm = lcm.lcm(&c.denom());
    }
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut out = Vec::new();
    let Some(lo) = ints.iter().position(|c| !c.is_zero()) else {
        return out;
    };
    if lo > 0 {
        out.push(Scalar::zero());
    }
    let hi = ints.iter().rposition(|c| !c.is_zero()).expect("nonzero");
    let eval = |x: &Scalar| p.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c);
    for a in divisors(&ints[lo]) {
        for b in divisors(&ints[hi]) {
            for sign in [1i64, -1] {
                let x = Scalar::from_bigint(&a * sign) * Scalar::from_bigint(b.clone()).inv().expect("nonzero");
                if eval(&x).is_zero() && !out.contains(&x) {
                    out.push(x);
                }
            }
        }
    }
    out
}

/// The realness test with its cross-checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Realness {
    /// `M` simple and `M∘M` simple.
    pub real: bool,
    pub simple: bool,
    pub square_simple: bool,
    /// `r_{M,M} ∈ k·id`; absent when the root is not symmetric.
    pub r_scalar: Option<bool>,
    pub square_end_dim: usize,
    /// Whether the three characterizations agree (always true for a correct library).
    pub consistent: bool,
}

pub fn is_real(m: &KlrModule) -> Realness {
    let simple = is_simple(m).is_simple();
    let mm = convolve(m, m).expect("same algebra");
    let square_simple = is_simple(&mm).is_simple();
    let square_end_dim = end_dimension(&mm);
    let r_scalar = if m.qfamily().is_symmetric(m.beta()) {
        renormalized_r(m, m).ok().map(|r| r.matrix.scalar_multiple_of_identity().is_some())
    } else {
        None
    };
    let consistent = !simple || (square_simple == (square_end_dim == 1) && r_scalar.map_or(true, |r| r == square_simple));
    Realness { real: simple && square_simple, simple, square_simple, r_scalar, square_end_dim, consistent }
}
