use std::collections::HashMap;

use super::pbw::{with_engine, Generator};
use crate::base::{min_coset_reps, CosetRep, Permutation, Word};
use crate::linalg::{Matrix, Ring};
use crate::module::{ConvOrigin, ModuleError, Rep};

/// Index of `b(w, i, j) = τ_{red w}(a_i ⊗ b_j)` in `A∘B`, with `w` numbered
/// as in [`min_coset_reps`].
pub fn conv_label(dim_a: usize, dim_b: usize, w: usize, i: usize, j: usize) -> usize {
    (w * dim_a + i) * dim_b + j
}

/// Apply `τ_{a_1} ⋯ τ_{a_l}` (rightmost first) to `v`.
pub fn apply_tau_word<R: Ring>(taus: &[Matrix<R>], word: &[usize], v: &[R]) -> Vec<R> {
    let mut out = v.to_vec();
    for &a in word.iter().rev() {
        out = taus[a - 1].apply(&out);
    }
    out
}

fn unit_vec<R: Ring>(d: usize, i: usize) -> Vec<R> {
    let mut v = vec![R::zero(); d];
    v[i] = R::one();
    v
}

struct Factor<'a, R: Ring> {
    m: &'a Rep<R>,
    offset: usize,
    cache: HashMap<(usize, Vec<u16>, Permutation), Vec<R>>,
}

impl<'a, R: Ring> Factor<'a, R> {
    /// `τ_{red y} x^p` applied to the `i`-th basis vector.
    fn act(&mut self, i: usize, p: &[u16], y: &Permutation) -> Vec<R> {
        let h = self.m.height();
        let exps = p[self.offset..self.offset + h].to_vec();
        let key = (i, exps, y.clone());
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let mut v = unit_vec::<R>(self.m.dim(), i);
        for (k, &e) in key.1.iter().enumerate() {
            for _ in 0..e {
                v = self.m.x(k + 1).apply(&v);
            }
        }
        v = apply_tau_word(self.m.taus(), &y.canonical_reduced_word(), &v);
        self.cache.insert(key, v.clone());
        v
    }
}

/// The convolution product `A∘B = R(β+γ)e(β,γ) ⊗ (A ⊠ B)` on the basis
/// `b(w, i, j)`, `w` a minimal left coset representative of `S_m × S_n`.
pub fn convolve<R: Ring>(a: &Rep<R>, b: &Rep<R>) -> Result<Rep<R>, ModuleError> {
    a.same_family(b)?;
    let (hm, hn) = (a.height(), b.height());
    let n = hm + hn;
    let (da, db) = (a.dim(), b.dim());
    let reps: Vec<CosetRep> = min_coset_reps(hm, hn);
    let rep_index: HashMap<Permutation, usize> = reps.iter().enumerate().map(|(k, r)| (r.perm.clone(), k)).collect();
    let d = reps.len() * da * db;
    let mut words = Vec::with_capacity(d);
    for r in &reps {
        for i in 0..da {
            for j in 0..db {
                words.push(r.perm.act_on_word(&a.word(i).concat(b.word(j))));
            }
        }
    }
    let gens: Vec<Generator> = (1..=n).map(Generator::X).chain((1..n).map(Generator::T)).collect();
    let mut mats: Vec<Matrix<R>> = vec![Matrix::zeros(d, d); gens.len()];
    let mut fa = Factor { m: a, offset: 0, cache: HashMap::new() };
    let mut fb = Factor { m: b, offset: hm, cache: HashMap::new() };
    let q = a.qfamily().clone();
    with_engine(&q, n, hm, |eng| {
        for (wi, r) in reps.iter().enumerate() {
            for i in 0..da {
                for j in 0..db {
                    let col = conv_label(da, db, wi, i, j);
                    let nu = a.word(i).concat(b.word(j));
                    for (g, mat) in gens.iter().zip(mats.iter_mut()) {
                        for ((y, p), c) in eng.left_mul_basic(*g, &r.perm, &nu) {
                            let (y0, y1, y2) = y.coset_factorization(hm);
                            let w0 = rep_index[&y0];
                            let u = fa.act(i, &p, &y1);
                            let v = fb.act(j, &p, &y2);
                            for (i2, ui) in u.iter().enumerate() {
                                if ui.is_zero() {
                                    continue;
                                }
                                let cu = ui.scale(&c);
                                for (j2, vj) in v.iter().enumerate() {
                                    if !vj.is_zero() {
                                        mat.add_at(conv_label(da, db, w0, i2, j2), col, &cu.mul(vj));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    });
    let tau = mats.split_off(n);
    let origin = ConvOrigin { left_beta: a.beta().clone(), right_beta: b.beta().clone(), left_dim: da, right_dim: db };
    Ok(Rep::from_parts_unchecked(q, a.beta().add(b.beta()), words, mats, tau).with_origin(origin))
}

/// `u ⊠ v` placed in `A∘B` (of dimension `total`) as `1 ⊗ (u ⊠ v)`.
pub fn embed_pure_tensor<R: Ring>(total: usize, dim_a: usize, dim_b: usize, u: &[R], v: &[R]) -> Vec<R> {
    let mut out = vec![R::zero(); total];
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            if !vj.is_zero() {
                out[conv_label(dim_a, dim_b, 0, i, j)] = ui.mul(vj);
            }
        }
    }
    out
}

/// `f∘g : A∘B → A'∘B'` for module maps `f : A → A'`, `g : B → B'`,
/// where `ht A = ht A'` and `ht B = ht B'`.
pub fn conv_maps<R: Ring>(hm: usize, hn: usize, f: &Matrix<R>, g: &Matrix<R>) -> Matrix<R> {
    let k = min_coset_reps(hm, hn).len();
    Matrix::<R>::identity(k).kron(&f.kron(g))
}

/// The associativity isomorphism `(A∘B)∘C → A∘(B∘C)`.
/// `a_bc` is `convolve(a, convolve(b, c))`.
pub fn associator<R: Ring>(a: &Rep<R>, b: &Rep<R>, c: &Rep<R>, a_bc: &Rep<R>) -> Matrix<R> {
    let (ha, hb, hc) = (a.height(), b.height(), c.height());
    let (da, db, dc) = (a.dim(), b.dim(), c.dim());
    let outer = min_coset_reps(ha + hb, hc);
    let inner = min_coset_reps(ha, hb);
    let dab = inner.len() * da * db;
    let dbc = min_coset_reps(hb, hc).len() * db * dc;
    let total = a_bc.dim();
    let mut cols = vec![Vec::new(); outer.len() * dab * dc];
    for (w2i, w2) in outer.iter().enumerate() {
        for (w1i, w1) in inner.iter().enumerate() {
            for i in 0..da {
                for j in 0..db {
                    for k in 0..dc {
                        let bc = embed_pure_tensor(dbc, db, dc, &unit_vec::<R>(db, j), &unit_vec::<R>(dc, k));
                        let v = embed_pure_tensor(total, da, dbc, &unit_vec::<R>(da, i), &bc);
                        let v = apply_tau_word(a_bc.taus(), &w1.word, &v);
                        let v = apply_tau_word(a_bc.taus(), &w2.word, &v);
                        let col = conv_label(dab, dc, w2i, conv_label(da, db, w1i, i, j), k);
                        cols[col] = v;
                    }
                }
            }
        }
    }
    Matrix::from_cols(total, &cols)
}

/// The word of `b(w, i, j)`.
pub fn conv_word(w: &Permutation, left: &Word, right: &Word) -> Word {
    w.act_on_word(&left.concat(right))
}

/// The inverse associativity isomorphism `A∘(B∘C) → (A∘B)∘C`.
///
/// `ab_c` is `convolve(convolve(a, b), c)`.
pub fn associator_inv<R: Ring>(a: &Rep<R>, b: &Rep<R>, c: &Rep<R>, ab_c: &Rep<R>) -> Matrix<R> {
    let (ha, hb, hc) = (a.height(), b.height(), c.height());
    let (da, db, dc) = (a.dim(), b.dim(), c.dim());
    let outer = min_coset_reps(ha, hb + hc);
    let inner = min_coset_reps(hb, hc);
    let dbc = inner.len() * db * dc;
    let dab = min_coset_reps(ha, hb).len() * da * db;
    let total = ab_c.dim();
    let mut cols = vec![Vec::new(); outer.len() * da * dbc];
    for (w2i, w2) in outer.iter().enumerate() {
        for (w1i, w1) in inner.iter().enumerate() {
            let shifted: Vec<usize> = w1.word.iter().map(|k| k + ha).collect();
            for i in 0..da {
                for j in 0..db {
                    for k in 0..dc {
                        let ab = embed_pure_tensor(dab, da, db, &unit_vec::<R>(da, i), &unit_vec::<R>(db, j));
                        let v = embed_pure_tensor(total, dab, dc, &ab, &unit_vec::<R>(dc, k));
                        let v = apply_tau_word(ab_c.taus(), &shifted, &v);
                        let v = apply_tau_word(ab_c.taus(), &w2.word, &v);
                        cols[conv_label(da, dbc, w2i, i, conv_label(db, dc, w1i, j, k))] = v;
                    }
                }
            }
        }
    }
    Matrix::from_cols(total, &cols)
}
