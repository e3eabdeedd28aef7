use std::collections::VecDeque;

use super::hom::ModuleMap;
use super::rep::{KlrModule, ModuleError, Rep};
use crate::base::Word;
use crate::linalg::echelon::{to_sparse, SparseEchelon};
use crate::linalg::subspace::unit;
use crate::linalg::{QMatrix, Scalar, Subspace};

/// Split `v` into its word components, dropping zero ones.
pub fn word_components(m: &KlrModule, v: &[Scalar]) -> Vec<Vec<Scalar>> {
    m.word_blocks()
        .into_values()
        .filter_map(|idx| {
            if idx.iter().all(|&i| v[i].is_zero()) {
                return None;
            }
            let mut w = vec![Scalar::zero(); v.len()];
            for i in idx {
                w[i] = v[i].clone();
            }
            Some(w)
        })
        .collect()
}

/// The smallest invariant subspace containing `vectors`.
pub fn invariant_closure(m: &KlrModule, vectors: &[Vec<Scalar>]) -> Result<Subspace, ModuleError> {
    let d = m.dim();
    let mut ech = SparseEchelon::new(d);
    let mut found: Vec<Vec<Scalar>> = Vec::new();
    let mut queue: VecDeque<Vec<Scalar>> = VecDeque::new();
    for v in vectors {
        if v.len() != d {
            return Err(ModuleError::VectorLength(v.len(), d));
        }
        queue.extend(word_components(m, v));
    }
    let gens: Vec<Vec<(usize, usize, Scalar)>> =
        m.generators().map(|g| g.entries().map(|(i, j, x)| (i, j, x.clone())).collect()).collect();
    while let Some(v) = queue.pop_front() {
        if ech.is_full() {
            break;
        }
        if !ech.insert(&to_sparse(&v)) {
            continue;
        }
        for g in &gens {
            let mut w = vec![Scalar::zero(); d];
            let mut nonzero = false;
            for (i, j, x) in g {
                if !v[*j].is_zero() {
                    w[*i] += &(x * &v[*j]);
                    nonzero = true;
                }
            }
            if nonzero && w.iter().any(|x| !x.is_zero()) {
                queue.push_back(w);
            }
        }
        found.push(v);
    }
    if ech.is_full() {
        return Ok(Subspace::full(d));
    }
    Ok(Subspace::span(d, found.iter()))
}

/// Whether `s` is stable under every generator and every `e(ν)`.
pub fn is_invariant(m: &KlrModule, s: &Subspace) -> bool {
    s.basis().iter().all(|v| {
        word_components(m, v).iter().all(|c| s.contains_vector(c)) && m.generators().all(|g| s.contains_vector(&g.apply(v)))
    })
}

/// Package an invariant subspace as a module with a word-adapted basis,
/// together with its inclusion.
pub fn submodule_of(m: &KlrModule, s: &Subspace) -> Result<(KlrModule, ModuleMap), ModuleError> {
    if s.ambient() != m.dim() {
        return Err(ModuleError::VectorLength(s.ambient(), m.dim()));
    }
    if !is_invariant(m, s) {
        return Err(ModuleError::NotInvariant);
    }
    let blocks = m.word_blocks();
    let mut parts: Vec<(Word, Vec<usize>, Subspace)> = Vec::new();
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    let mut words: Vec<Word> = Vec::new();
    for (w, idx) in &blocks {
        let comps: Vec<Vec<Scalar>> = s
            .basis()
            .iter()
            .map(|v| {
                let mut c = vec![Scalar::zero(); v.len()];
                for &i in idx {
                    c[i] = v[i].clone();
                }
                c
            })
            .collect();
        let sw = Subspace::span(m.dim(), comps.iter());
        if sw.is_zero() {
            continue;
        }
        let start = basis.len();
        for b in sw.basis() {
            basis.push(b.clone());
            words.push(w.clone());
        }
        parts.push((w.clone(), (start..basis.len()).collect(), sw));
    }
    let k = basis.len();
    let coords = |v: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); k];
        for (_, pos, sw) in &parts {
            let idx = &blocks[&words[pos[0]]];
            let mut c = vec![Scalar::zero(); v.len()];
            let mut any = false;
            for &i in idx {
                if !v[i].is_zero() {
                    c[i] = v[i].clone();
                    any = true;
                }
            }
            if !any {
                continue;
            }
            let xs = sw.coordinates(&c).expect("invariant subspace");
            for (p, x) in pos.iter().zip(xs) {
                out[*p] = x;
            }
        }
        out
    };
    let restrict_gen = |g: &QMatrix| {
        let cols: Vec<Vec<Scalar>> = basis.iter().map(|b| coords(&g.apply(b))).collect();
        QMatrix::from_cols(k, &cols)
    };
    let x = m.xs().iter().map(restrict_gen).collect();
    let tau = m.taus().iter().map(restrict_gen).collect();
    let sub = Rep::from_parts_unchecked(m.qfamily().clone(), m.beta().clone(), words, x, tau);
    let incl = ModuleMap::new(QMatrix::from_cols(m.dim(), &basis));
    Ok((sub, incl))
}

/// The submodule generated by `vectors`, with its inclusion.
pub fn submodule_spanned(m: &KlrModule, vectors: &[Vec<Scalar>]) -> Result<(KlrModule, ModuleMap), ModuleError> {
    let s = invariant_closure(m, vectors)?;
    submodule_of(m, &s)
}

/// `m / s` on the basis of non-pivot coordinate vectors, with the projection.
pub fn quotient(m: &KlrModule, s: &Subspace) -> Result<(KlrModule, ModuleMap), ModuleError> {
    if s.ambient() != m.dim() {
        return Err(ModuleError::VectorLength(s.ambient(), m.dim()));
    }
    if !is_invariant(m, s) {
        return Err(ModuleError::NotInvariant);
    }
    let d = m.dim();
    let piv = s.pivots();
    let free: Vec<usize> = (0..d).filter(|i| !piv.contains(i)).collect();
    let project = |v: &[Scalar]| -> Vec<Scalar> {
        let r = s.reduce(v);
        free.iter().map(|&i| r[i].clone()).collect()
    };
    let q = free.len();
    let induced = |g: &QMatrix| {
        let cols: Vec<Vec<Scalar>> = free.iter().map(|&i| project(&g.col(i))).collect();
        QMatrix::from_cols(q, &cols)
    };
    let x = m.xs().iter().map(induced).collect();
    let tau = m.taus().iter().map(induced).collect();
    let words = free.iter().map(|&i| m.word(i).clone()).collect();
    let quo = Rep::from_parts_unchecked(m.qfamily().clone(), m.beta().clone(), words, x, tau);
    let cols: Vec<Vec<Scalar>> = (0..d).map(|j| project(&unit(d, j))).collect();
    Ok((quo, ModuleMap::new(QMatrix::from_cols(q, &cols))))
}
