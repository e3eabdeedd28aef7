use thiserror::Error;

use super::echelon::{to_sparse, SparseEchelon};
use super::matrix::QMatrix;
use super::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("ambient dimension mismatch: {0} vs {1}")]
pub struct AmbientMismatch(pub usize, pub usize);

/// A linear subspace of `Q^n` in canonical form.
///
/// Each basis vector has its last nonzero entry equal to one (its pivot);
/// every other basis vector vanishes at that coordinate; vectors are sorted
/// by pivot. Two equal subspaces therefore have identical stored bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit(ambient, i)).collect();
        Subspace { ambient, basis }
    }

    pub fn span<'a>(ambient: usize, vectors: impl IntoIterator<Item = &'a Vec<Scalar>>) -> Self {
        let mut e = SparseEchelon::new(ambient);
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
            let rev: Vec<Scalar> = v.iter().rev().cloned().collect();
            e.insert(&to_sparse(&rev));
            if e.is_full() {
                return Subspace::full(ambient);
            }
        }
        let mut basis: Vec<Vec<Scalar>> = e
            .rref()
            .into_iter()
            .map(|r| {
                let mut d = vec![Scalar::zero(); ambient];
                for (i, x) in r {
                    d[ambient - 1 - i] = x;
                }
                d
            })
            .collect();
        basis.reverse();
        Subspace { ambient, basis }
    }

    /// Null space of `m` (as a subspace of the column space dimension).
    pub fn kernel(m: &QMatrix) -> Self {
        let mut e = SparseEchelon::new(m.cols());
        for i in 0..m.rows() {
            e.insert(&to_sparse(m.row(i)));
        }
        Subspace { ambient: m.cols(), basis: e.null_space() }
    }

    /// Column space of `m`.
    pub fn image(m: &QMatrix) -> Self {
        let cols: Vec<Vec<Scalar>> = (0..m.cols()).map(|j| m.col(j)).collect();
        Subspace::span(m.rows(), cols.iter())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|v| v.iter().rposition(|x| !x.is_zero()).unwrap()).collect()
    }

    /// Reduce `v` modulo the subspace (zeroes the pivot coordinates).
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (b, p) in self.basis.iter().zip(self.pivots()) {
            if !w[p].is_zero() {
                let f = w[p].clone();
                for (x, y) in w.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        w
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the stored basis; `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots().into_iter().map(|p| v[p].clone()).collect())
    }

    fn check(&self, o: &Subspace) -> Result<(), AmbientMismatch> {
        if self.ambient != o.ambient {
            return Err(AmbientMismatch(self.ambient, o.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace, AmbientMismatch> {
        self.check(o)?;
        Ok(Subspace::span(self.ambient, self.basis.iter().chain(o.basis.iter())))
    }

    pub fn intersection(&self, o: &Subspace) -> Result<Subspace, AmbientMismatch> {
        self.check(o)?;
        // x = Σ a_i s_i = Σ b_j o_j  <=>  [S | -O] (a, b) = 0
        let (k, l) = (self.dim(), o.dim());
        let mut m = QMatrix::zeros(self.ambient, k + l);
        for (j, v) in self.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        for (j, v) in o.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.set(i, k + j, -x);
            }
        }
        let ker = Subspace::kernel(&m);
        let vecs: Vec<Vec<Scalar>> = ker
            .basis
            .iter()
            .map(|c| {
                let mut x = vec![Scalar::zero(); self.ambient];
                for (a, s) in c[..k].iter().zip(&self.basis) {
                    if !a.is_zero() {
                        for (xi, si) in x.iter_mut().zip(s) {
                            *xi += &(a * si);
                        }
                    }
                }
                x
            })
            .collect();
        Ok(Subspace::span(self.ambient, vecs.iter()))
    }

    /// Whether `o ⊆ self`.
    pub fn contains(&self, o: &Subspace) -> Result<bool, AmbientMismatch> {
        self.check(o)?;
        Ok(o.basis.iter().all(|v| self.contains_vector(v)))
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, m: &QMatrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        let imgs: Vec<Vec<Scalar>> = self.basis.iter().map(|v| m.apply(v)).collect();
        Subspace::span(m.rows(), imgs.iter())
    }

    /// Preimage under a linear map `m: Q^a -> Q^b` of a subspace of `Q^b`.
    pub fn preimage(&self, m: &QMatrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient);
        // x ↦ (m x mod self) is linear; its kernel is the preimage.
        let mut red = QMatrix::zeros(self.ambient, m.cols());
        for j in 0..m.cols() {
            let c = self.reduce(&m.col(j));
            for (i, x) in c.into_iter().enumerate() {
                red.set(i, j, x);
            }
        }
        Subspace::kernel(&red)
    }

    /// Matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> QMatrix {
        QMatrix::from_cols(self.ambient, &self.basis)
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

/// Null space of `m` in canonical form.
pub fn kernel_basis(m: &QMatrix) -> Subspace {
    Subspace::kernel(m)
}

pub struct SubspaceOps {
    pub sum: Subspace,
    pub intersection: Subspace,
    pub contains: bool,
}

/// Sum, intersection, and whether `b ⊆ a`.
pub fn subspace_ops(a: &Subspace, b: &Subspace) -> Result<SubspaceOps, AmbientMismatch> {
    Ok(SubspaceOps { sum: a.sum(b)?, intersection: a.intersection(b)?, contains: a.contains(b)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|x| Scalar::from_int(*x)).collect()
    }

    fn mat(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| q(r)).collect())
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&mat(&[&[1, 2], &[2, 4]]));
        assert_eq!(k.basis(), &[q(&[-2, 1])]);
        assert!(kernel_basis(&QMatrix::identity(3)).is_zero());
        assert_eq!(kernel_basis(&QMatrix::zeros(2, 2)), Subspace::full(2));
    }

    #[test]
    fn subspace_ops_examples() {
        let a = Subspace::span(2, [q(&[1, 0])].iter());
        let b = Subspace::span(2, [q(&[0, 1])].iter());
        let r = subspace_ops(&a, &b).unwrap();
        assert!(r.sum.is_full());
        assert!(r.intersection.is_zero());
        assert!(!r.contains);
        assert!(subspace_ops(&Subspace::full(2), &b).unwrap().contains);
        assert_eq!(subspace_ops(&a, &a).unwrap().intersection, a);
        assert_eq!(subspace_ops(&a, &Subspace::zero(3)).err(), Some(AmbientMismatch(2, 3)));
    }

    #[test]
    fn canonical_form_is_spanning_set_independent() {
        let s1 = Subspace::span(3, [q(&[1, 1, 0]), q(&[0, 1, 1])].iter());
        let s2 = Subspace::span(3, [q(&[1, 2, 1]), q(&[1, 0, -1]), q(&[2, 2, 0])].iter());
        assert_eq!(s1, s2);
    }

    fn small_matrix() -> impl Strategy<Value = QMatrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                QMatrix::from_rows(v.chunks(c).map(|row| q(row)).collect())
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = kernel_basis(&m);
            let rank = Subspace::image(&m).dim();
            prop_assert_eq!(k.dim() + rank, m.cols());
            for v in k.basis() {
                prop_assert!(m.apply(v).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn intersection_in_both(m in small_matrix(), n in small_matrix()) {
            let a = Subspace::image(&m.transpose());
            let b = Subspace::image(&n.transpose());
            if a.ambient() == b.ambient() {
                let i = a.intersection(&b).unwrap();
                let s = a.sum(&b).unwrap();
                prop_assert!(a.contains(&i).unwrap() && b.contains(&i).unwrap());
                prop_assert_eq!(i.dim() + s.dim(), a.dim() + b.dim());
            }
        }
    }
}
