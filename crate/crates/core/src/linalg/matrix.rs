use std::fmt;

use super::poly::{Poly, Var};
use super::ring::Ring;
use super::scalar::Scalar;

/// Dense row-major matrix over a [`Ring`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

pub type QMatrix = Matrix<Scalar>;
pub type PolyMatrix = Matrix<Poly>;

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(rows: usize, cols: &[Vec<R>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &R) {
        let k = i * self.cols + j;
        self.data[k] = self.data[k].add(v);
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &R)> {
        let c = self.cols;
        self.data.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(k, v)| (k / c, k % c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, j, v) in self.entries() {
            t.set(j, i, v.clone());
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn scale_ring(&self, c: &R) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn apply(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![R::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o = o.add(&a.mul(x));
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Keep only the listed columns (others zeroed).
    pub fn mask_cols(&self, keep: impl Fn(usize) -> bool) -> Self {
        let mut m = self.clone();
        for j in 0..self.cols {
            if !keep(j) {
                for i in 0..self.rows {
                    m.set(i, j, R::zero());
                }
            }
        }
        m
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Kronecker product with the convention `(A⊗B)[(i,k),(j,l)] = A[i,j] B[k,l]`.
    pub fn kron(&self, o: &Self) -> Self {
        let mut m = Self::zeros(self.rows * o.rows, self.cols * o.cols);
        for (i, j, a) in self.entries() {
            for (k, l, b) in o.entries() {
                m.set(i * o.rows + k, j * o.cols + l, a.mul(b));
            }
        }
        m
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl QMatrix {
    pub fn to_poly(&self) -> PolyMatrix {
        self.map(|c| Poly::constant(c.clone()))
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    /// Whether `self = c·I` for some scalar `c` (returned).
    pub fn scalar_multiple_of_identity(&self) -> Option<Scalar> {
        if self.rows != self.cols {
            return None;
        }
        let c = if self.rows == 0 { Scalar::zero() } else { self.get(0, 0).clone() };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { &c } else { &Scalar::zero() };
                if self.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(c)
    }
}

impl PolyMatrix {
    /// Minimum `var`-adic valuation over nonzero entries; `None` (infinite) for the zero matrix.
    pub fn valuation(&self, var: Var) -> Option<u16> {
        self.data.iter().filter_map(|p| p.valuation_in(var)).min()
    }

    /// Coefficient matrix of `var^e` (entries may still involve other variables).
    pub fn coefficient(&self, var: Var, e: u16) -> PolyMatrix {
        self.map(|p| p.coefficient_of(var, e))
    }

    pub fn eval_var(&self, var: Var, x: &Scalar) -> PolyMatrix {
        self.map(|p| p.eval_var(var, x))
    }

    /// Entrywise conversion to rationals; `None` if any entry is non-constant.
    pub fn to_scalar(&self) -> Option<QMatrix> {
        let data: Option<Vec<Scalar>> = self.data.iter().map(|p| p.as_constant()).collect();
        data.map(|data| Matrix { rows: self.rows, cols: self.cols, data })
    }
}

/// Evaluate `p` at pairwise commuting `dim × dim` matrices substituted for its variables.
pub fn eval_poly_at<R: Ring>(p: &Poly, subs: &[(Var, &Matrix<R>)], dim: usize) -> Matrix<R> {
    let mut out = Matrix::<R>::zeros(dim, dim);
    let mut powers: std::collections::HashMap<(usize, u16), Matrix<R>> = std::collections::HashMap::new();
    for (mono, c) in p.terms() {
        let mut acc = Matrix::<R>::identity(dim);
        for (v, m) in subs {
            let e = mono[*v as usize];
            if e == 0 {
                continue;
            }
            let pw = powers.entry((*v as usize, e)).or_insert_with(|| m.pow(e as u32));
            acc = acc.mul(pw);
        }
        for (vi, e) in mono.iter().enumerate() {
            assert!(*e == 0 || subs.iter().any(|(v, _)| *v as usize == vi), "unsubstituted variable in polynomial");
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// z-adic valuation of a polynomial matrix in the single spectral parameter `z`.
pub fn z_valuation(m: &PolyMatrix) -> Option<u16> {
    m.valuation(Var::Z)
}

impl<R: Ring + fmt::Display> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Poly {
        Poly::var(Var::Z)
    }

    #[test]
    fn z_valuation_examples() {
        let m = Matrix::from_rows(vec![vec![z().pow(2), z().pow(3)]]);
        assert_eq!(z_valuation(&m), Some(2));
        let m = Matrix::from_rows(vec![vec![Poly::one(), z()]]);
        assert_eq!(z_valuation(&m), Some(0));
        assert_eq!(z_valuation(&PolyMatrix::zeros(2, 2)), None);
    }

    #[test]
    fn z_valuation_is_scale_invariant() {
        let m = Matrix::from_rows(vec![vec![&z().pow(2) + &z().pow(4), Poly::zero()], vec![z().pow(7), Poly::zero()]]);
        for c in [-3i64, 1, 5] {
            assert_eq!(z_valuation(&m.scale(&Scalar::from_int(c))), z_valuation(&m));
        }
    }

    #[test]
    fn kron_and_product() {
        let a = QMatrix::from_rows(vec![vec![1.into(), 2.into()], vec![3.into(), 4.into()]]);
        let i = QMatrix::identity(2);
        assert_eq!(a.mul(&i), a);
        let k = a.kron(&i);
        assert_eq!(k.get(2, 0), &Scalar::from_int(3));
        assert_eq!(k.get(3, 1), &Scalar::from_int(3));
        assert_eq!(k.get(1, 0), &Scalar::zero());
    }
}
