//! Incremental sparse row reduction over the rationals.

use super::scalar::Scalar;

pub type SparseRow = Vec<(usize, Scalar)>;

pub fn to_sparse(v: &[Scalar]) -> SparseRow {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn to_dense(v: &SparseRow, n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Row echelon form built one row at a time. Pivots are leading entries,
/// normalized to one; stored rows are reduced against the pivots present at
/// insertion time only.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    ncols: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl SparseEchelon {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon { ncols, rows: Vec::new(), pivot_row: vec![None; ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Reduce a dense vector in place against the current pivots.
    pub fn reduce_dense(&self, w: &mut [Scalar]) {
        debug_assert_eq!(w.len(), self.ncols);
        for c in 0..self.ncols {
            if w[c].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let f = w[c].clone();
                for (j, a) in &self.rows[r] {
                    w[*j] -= &(&f * a);
                }
            }
        }
    }

    pub fn reduce(&self, v: &SparseRow) -> SparseRow {
        let mut w = to_dense(v, self.ncols);
        self.reduce_dense(&mut w);
        to_sparse(&w)
    }

    pub fn contains(&self, v: &SparseRow) -> bool {
        self.reduce(v).is_empty()
    }

    /// Insert a row; returns true if it was independent of the existing rows.
    pub fn insert(&mut self, v: &SparseRow) -> bool {
        let mut w = to_dense(v, self.ncols);
        self.insert_dense(&mut w)
    }

    pub fn insert_dense(&mut self, w: &mut [Scalar]) -> bool {
        self.reduce_dense(w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().unwrap();
        let row: SparseRow =
            w.iter().enumerate().skip(p).filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x * &inv)).collect();
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    /// Fully reduced rows sorted by pivot column.
    pub fn rref(&self) -> Vec<SparseRow> {
        let mut order: Vec<usize> = (0..self.ncols).filter(|c| self.pivot_row[*c].is_some()).collect();
        order.reverse();
        let mut done: Vec<Option<SparseRow>> = vec![None; self.ncols];
        for &c in &order {
            let mut w = to_dense(&self.rows[self.pivot_row[c].unwrap()], self.ncols);
            for j in c + 1..self.ncols {
                if w[j].is_zero() {
                    continue;
                }
                if let Some(r) = &done[j] {
                    let f = w[j].clone();
                    for (k, a) in r {
                        w[*k] -= &(&f * a);
                    }
                }
            }
            done[c] = Some(to_sparse(&w));
        }
        done.into_iter().flatten().collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| self.pivot_row[*c].is_some()).collect()
    }

    /// Basis of `{x : row·x = 0 for every row}`, with the free column of
    /// each vector as its last nonzero entry (equal to one).
    pub fn null_space(&self) -> Vec<Vec<Scalar>> {
        let rref = self.rref();
        let piv: Vec<usize> = rref.iter().map(|r| r[0].0).collect();
        let mut is_pivot = vec![false; self.ncols];
        for p in &piv {
            is_pivot[*p] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.ncols).filter(|c| !is_pivot[*c]) {
            let mut v = vec![Scalar::zero(); self.ncols];
            v[f] = Scalar::one();
            for (r, p) in rref.iter().zip(&piv) {
                if let Ok(k) = r.binary_search_by_key(&f, |(i, _)| *i) {
                    v[*p] = -&r[k].1;
                }
            }
            out.push(v);
        }
        out
    }
}

/// Rank of a dense matrix given by rows.
pub fn rank_of_rows(rows: &[Vec<Scalar>], ncols: usize) -> usize {
    let mut e = SparseEchelon::new(ncols);
    for r in rows {
        e.insert(&to_sparse(r));
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|x| Scalar::from_int(*x)).collect()
    }

    #[test]
    fn null_space_of_rank_one() {
        let mut e = SparseEchelon::new(2);
        e.insert(&to_sparse(&q(&[1, 2])));
        assert!(!e.insert(&to_sparse(&q(&[2, 4]))));
        assert_eq!(e.null_space(), vec![q(&[-2, 1])]);
    }

    #[test]
    fn rref_back_substitutes() {
        let mut e = SparseEchelon::new(3);
        e.insert(&to_sparse(&q(&[1, 1, 1])));
        e.insert(&to_sparse(&q(&[0, 1, 2])));
        let r = e.rref();
        assert_eq!(to_dense(&r[0], 3), q(&[1, 0, -1]));
        assert_eq!(to_dense(&r[1], 3), q(&[0, 1, 2]));
    }
}
