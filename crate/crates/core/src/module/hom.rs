use std::collections::HashMap;

use super::rep::{KlrModule, ModuleError};
use crate::linalg::echelon::{SparseEchelon, SparseRow};
use crate::linalg::{QMatrix, Scalar, Subspace};

/// A homomorphism of modules, as a `dim(target) × dim(source)` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleMap {
    pub matrix: QMatrix,
}

impl ModuleMap {
    pub fn new(matrix: QMatrix) -> Self {
        ModuleMap { matrix }
    }

    pub fn identity(d: usize) -> Self {
        ModuleMap { matrix: QMatrix::identity(d) }
    }

    pub fn image(&self) -> Subspace {
        Subspace::image(&self.matrix)
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::kernel(&self.matrix)
    }

    pub fn rank(&self) -> usize {
        self.image().dim()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.rows() == self.matrix.cols() && self.rank() == self.matrix.rows()
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &ModuleMap) -> ModuleMap {
        ModuleMap { matrix: self.matrix.mul(&o.matrix) }
    }
}

/// Whether `f` preserves words and intertwines every generator.
pub fn is_module_map(src: &KlrModule, tgt: &KlrModule, f: &QMatrix) -> bool {
    if src.qfamily() != tgt.qfamily() || src.beta() != tgt.beta() {
        return false;
    }
    if f.rows() != tgt.dim() || f.cols() != src.dim() {
        return false;
    }
    if f.entries().any(|(i, j, _)| tgt.word(i) != src.word(j)) {
        return false;
    }
    src.generators().zip(tgt.generators()).all(|(gs, gt)| f.mul(gs) == gt.mul(f))
}

/// A basis of `Hom(m, n)`, in canonical echelon form on the flattened matrices.
pub fn hom_space(m: &KlrModule, n: &KlrModule) -> Result<Vec<ModuleMap>, ModuleError> {
    m.same_algebra(n)?;
    let (dm, dn) = (m.dim(), n.dim());
    // unknowns f[a][b] with matching words
    let mut var_of: HashMap<(usize, usize), usize> = HashMap::new();
    let mut vars: Vec<(usize, usize)> = Vec::new();
    for a in 0..dn {
        for b in 0..dm {
            if n.word(a) == m.word(b) {
                var_of.insert((a, b), vars.len());
                vars.push((a, b));
            }
        }
    }
    if vars.is_empty() {
        return Ok(Vec::new());
    }
    let mut ech = SparseEchelon::new(vars.len());
    for (gm, gn) in m.generators().zip(n.generators()) {
        let mut col_of_gm: Vec<Vec<(usize, &Scalar)>> = vec![Vec::new(); dm];
        for (c, b, v) in gm.entries() {
            col_of_gm[b].push((c, v));
        }
        let mut row_of_gn: Vec<Vec<(usize, &Scalar)>> = vec![Vec::new(); dn];
        for (a, c, v) in gn.entries() {
            row_of_gn[a].push((c, v));
        }
        // (f gm - gn f)[a][b] = Σ_c f[a][c] gm[c][b] - Σ_c gn[a][c] f[c][b]
        for a in 0..dn {
            for b in 0..dm {
                let mut row: HashMap<usize, Scalar> = HashMap::new();
                for (c, v) in &col_of_gm[b] {
                    if let Some(&k) = var_of.get(&(a, *c)) {
                        *row.entry(k).or_insert_with(Scalar::zero) += *v;
                    }
                }
                for (c, v) in &row_of_gn[a] {
                    if let Some(&k) = var_of.get(&(*c, b)) {
                        *row.entry(k).or_insert_with(Scalar::zero) -= *v;
                    }
                }
                let mut sparse: SparseRow = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if sparse.is_empty() {
                    continue;
                }
                sparse.sort_by_key(|(k, _)| *k);
                ech.insert(&sparse);
                if ech.is_full() {
                    return Ok(Vec::new());
                }
            }
        }
    }
    Ok(ech
        .null_space()
        .into_iter()
        .map(|v| {
            let mut f = QMatrix::zeros(dn, dm);
            for (k, x) in v.into_iter().enumerate() {
                if !x.is_zero() {
                    let (a, b) = vars[k];
                    f.set(a, b, x);
                }
            }
            ModuleMap::new(f)
        })
        .collect())
}

/// Search `Hom(m, n)` for an isomorphism: each basis element, then
/// combinations of up to three basis maps with coefficients in `-3..=3`.
pub fn is_isomorphic(m: &KlrModule, n: &KlrModule) -> Option<ModuleMap> {
    if m.same_algebra(n).is_err() || m.dim() != n.dim() || m.word_character() != n.word_character() {
        return None;
    }
    if m.dim() == 0 {
        return Some(ModuleMap::identity(0));
    }
    let hom = hom_space(m, n).ok()?;
    if hom.is_empty() || hom.len() != hom_space(n, m).ok()?.len() {
        return None;
    }
    if let Some(f) = hom.iter().find(|f| f.is_invertible()) {
        return Some(f.clone());
    }
    let coeffs: Vec<i64> = vec![1, -1, 2, -2, 3, -3];
    let k = hom.len();
    let combine = |terms: &[(usize, i64)]| {
        let mut acc = QMatrix::zeros(n.dim(), m.dim());
        for (i, c) in terms {
            acc = acc.add(&hom[*i].matrix.scale(&Scalar::from_int(*c)));
        }
        ModuleMap::new(acc)
    };
    for i in 0..k {
        for j in i + 1..k {
            for &a in &coeffs {
                for &b in &coeffs {
                    let f = combine(&[(i, a), (j, b)]);
                    if f.is_invertible() {
                        return Some(f);
                    }
                }
            }
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                for &a in &coeffs {
                    for &b in &coeffs {
                        for &c in &coeffs {
                            let f = combine(&[(i, a), (j, b), (l, c)]);
                            if f.is_invertible() {
                                return Some(f);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}
