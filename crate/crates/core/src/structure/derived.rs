use std::collections::BTreeMap;

use super::algebra::head;
use super::simple::is_simple;
use super::StructureError;
use crate::base::{Letter, RootVector, Word};
use crate::convolution::{associator, conv_maps, convolve, embed_pure_tensor};
use crate::linalg::subspace::unit;
use crate::linalg::{QMatrix, Scalar, Subspace};
use crate::module::{dual, hom_space, is_invariant, restrict, submodule_of, KlrModule, Rep};

/// `M∘̄N`, the head of `M∘N`, for simple `M` and `N`.
pub fn hconv(m: &KlrModule, n: &KlrModule) -> Result<KlrModule, StructureError> {
    if !is_simple(m).is_simple() {
        return Err(StructureError::NotSimple("m"));
    }
    if !is_simple(n).is_simple() {
        return Err(StructureError::NotSimple("n"));
    }
    Ok(head(&convolve(m, n)?)?.0)
}

/// `f̃_i M = M∘̄L(i)`.
pub fn crystal_f(i: Letter, m: &KlrModule) -> Result<KlrModule, StructureError> {
    hconv(m, &KlrModule::letter(m.qfamily().clone(), i))
}

/// `f̃_i^∨ M = L(i)∘̄M`.
pub fn crystal_f_dual(i: Letter, m: &KlrModule) -> Result<KlrModule, StructureError> {
    hconv(&KlrModule::letter(m.qfamily().clone(), i), m)
}

fn difference(total: &RootVector, part: &RootVector) -> Result<RootVector, StructureError> {
    let mut pairs = Vec::new();
    for (i, c) in total.iter() {
        let p = part.multiplicity(i);
        if p > c {
            return Err(StructureError::RootMismatch);
        }
        pairs.push((i, c - p));
    }
    if part.iter().any(|(i, c)| c > 0 && total.multiplicity(i) == 0) {
        return Err(StructureError::RootMismatch);
    }
    Ok(RootVector::from_pairs(&pairs))
}

/// `X = Hom_{R(β)}(M, e(β,γ)L)` with the `R(γ)`-action of `L`, so that
/// `Hom(M∘Z, L) ≅ Hom(Z, X)`.
pub fn adjunction_x(m: &KlrModule, l: &KlrModule) -> Result<KlrModule, StructureError> {
    let gamma = difference(l.beta(), m.beta())?;
    let res = restrict(l, m.beta(), &gamma)?;
    let (dres, dm) = (res.indices.len(), m.dim());
    let flat = |f: &QMatrix| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); dres * dm];
        for (i, j, x) in f.entries() {
            v[i * dm + j] = x.clone();
        }
        v
    };
    let unflat = |v: &[Scalar]| -> QMatrix {
        let mut f = QMatrix::zeros(dres, dm);
        for (k, x) in v.iter().enumerate() {
            if !x.is_zero() {
                f.set(k / dm, k % dm, x.clone());
            }
        }
        f
    };
    // one block of X per suffix word μ
    let mut blocks: Vec<(Word, Vec<usize>, Subspace)> = Vec::new();
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    let mut words: Vec<Word> = Vec::new();
    let mut block_of_row: BTreeMap<usize, usize> = BTreeMap::new();
    for (mu, idx) in res.right.word_blocks() {
        let sub = |g: &QMatrix| g.submatrix(&idx, &idx);
        let v_mu = Rep::new(
            l.qfamily().clone(),
            m.beta().clone(),
            idx.iter().map(|&i| res.left.word(i).clone()).collect(),
            res.left.xs().iter().map(sub).collect(),
            res.left.taus().iter().map(sub).collect(),
        )?;
        let maps: Vec<Vec<Scalar>> = hom_space(m, &v_mu)?
            .into_iter()
            .map(|f| {
                let mut big = QMatrix::zeros(dres, dm);
                for (a, b, x) in f.matrix.entries() {
                    big.set(idx[a], b, x.clone());
                }
                flat(&big)
            })
            .collect();
        let span = Subspace::span(dres * dm, maps.iter());
        for &i in &idx {
            block_of_row.insert(i, blocks.len());
        }
        let start = basis.len();
        for b in span.basis() {
            basis.push(b.clone());
            words.push(mu.clone());
        }
        blocks.push((mu, (start..basis.len()).collect(), span));
    }
    let k = basis.len();
    let act = |g: &QMatrix| -> QMatrix {
        let cols: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|b| {
                let img = g.mul(&unflat(b));
                let mut out = vec![Scalar::zero(); k];
                let Some((r, _, _)) = img.entries().next() else {
                    return out;
                };
                let (_, pos, span) = &blocks[block_of_row[&r]];
                let c = span.coordinates(&flat(&img)).expect("right action preserves Hom");
                for (p, x) in pos.iter().zip(c) {
                    out[*p] = x;
                }
                out
            })
            .collect();
        QMatrix::from_cols(k, &cols)
    };
    let x = res.right.xs().iter().map(act).collect();
    let tau = res.right.taus().iter().map(act).collect();
    Ok(Rep::new(l.qfamily().clone(), gamma, words, x, tau)?)
}

/// `Y` with `Hom(L, Z∘M) ≅ Hom(Y, Z)`, as the dual of `X(M*, L*)`.
pub fn adjunction_y(m: &KlrModule, l: &KlrModule) -> Result<KlrModule, StructureError> {
    Ok(dual(&adjunction_x(&dual(m), &dual(l))?))
}

/// Given submodules `X ⊂ M1∘M2` and `Y ⊂ M2∘M3` with `X∘M3 ⊂ M1∘Y`, the
/// largest `N ⊂ M2` with `N∘M3 ⊂ Y`; it satisfies `X ⊂ M1∘N`.
pub fn sandwich(
    m1: &KlrModule,
    m2: &KlrModule,
    m3: &KlrModule,
    x: &Subspace,
    y: &Subspace,
) -> Result<Subspace, StructureError> {
    let m12 = convolve(m1, m2)?;
    let m23 = convolve(m2, m3)?;
    if x.ambient() != m12.dim() || !is_invariant(&m12, x) || y.ambient() != m23.dim() || !is_invariant(&m23, y) {
        return Err(StructureError::NotInvariant);
    }
    let (h1, h2, h3) = (m1.height(), m2.height(), m3.height());
    let (d1, d2, d3) = (m1.dim(), m2.dim(), m3.dim());
    let (_, x_incl) = submodule_of(&m12, x)?;
    let (_, y_incl) = submodule_of(&m23, y)?;
    let m1_m23 = convolve(m1, &m23)?;
    let phi = associator(m1, m2, m3, &m1_m23);
    let x_m3 = Subspace::image(&phi.mul(&conv_maps(h1 + h2, h3, &x_incl.matrix, &QMatrix::identity(d3))));
    let m1_y = Subspace::image(&conv_maps(h1, h2 + h3, &QMatrix::identity(d1), &y_incl.matrix));
    if !m1_y.contains(&x_m3).expect("same ambient") {
        return Err(StructureError::SandwichPrecondition);
    }
    let mut n = Subspace::full(d2);
    for k in 0..d3 {
        let cols: Vec<Vec<Scalar>> =
            (0..d2).map(|i| embed_pure_tensor(m23.dim(), d2, d3, &unit(d2, i), &unit(d3, k))).collect();
        let e_k = QMatrix::from_cols(m23.dim(), &cols);
        n = n.intersection(&y.preimage(&e_k)).expect("same ambient");
    }
    let (_, n_incl) = submodule_of(m2, &n)?;
    let m1_n = Subspace::image(&conv_maps(h1, h2, &QMatrix::identity(d1), &n_incl.matrix));
    if !m1_n.contains(x).expect("same ambient") {
        return Err(StructureError::SandwichPostcondition);
    }
    Ok(n)
}
