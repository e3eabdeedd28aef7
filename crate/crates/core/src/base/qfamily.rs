use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::root::{Letter, RootVector};
use crate::linalg::{Poly, Scalar, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QFamilyError {
    #[error("index set has a repeated letter {0}")]
    RepeatedLetter(Letter),
    #[error("pair ({0},{1}) references a letter outside the index set")]
    UnknownLetter(Letter, Letter),
    #[error("no polynomial given for the pair ({0},{1})")]
    MissingPair(Letter, Letter),
    #[error("a polynomial was given for the diagonal pair ({0},{0}); Q_ii is always zero")]
    DiagonalPair(Letter),
    #[error("Q_{0}{1} involves variables other than u and v")]
    ForeignVariables(Letter, Letter),
    #[error("Q_{0}{1}(u,v) - Q_{0}{1}(w,v) is not divisible by u - w")]
    InexactQuotient(Letter, Letter),
}

/// The defining family `(Q_ij(u,v))` of a KLR algebra.
///
/// One polynomial is stored per unordered pair `i < j`; `Q_ji(u,v) = Q_ij(v,u)`
/// is derived on access and `Q_ii = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QFamily {
    index_set: Vec<Letter>,
    polys: BTreeMap<(Letter, Letter), Poly>,
}

impl QFamily {
    /// `pairs` maps `(i, j)` to `Q_ij(u,v)`; either orientation is accepted
    /// and normalized to `i < j`.
    pub fn new(index_set: Vec<Letter>, pairs: Vec<((Letter, Letter), Poly)>) -> Result<Self, QFamilyError> {
        let mut seen = BTreeSet::new();
        for i in &index_set {
            if !seen.insert(*i) {
                return Err(QFamilyError::RepeatedLetter(*i));
            }
        }
        let mut polys = BTreeMap::new();
        for ((i, j), p) in pairs {
            if !seen.contains(&i) || !seen.contains(&j) {
                return Err(QFamilyError::UnknownLetter(i, j));
            }
            if i == j {
                return Err(QFamilyError::DiagonalPair(i));
            }
            if p.vars().iter().any(|v| *v != Var::U && *v != Var::V) {
                return Err(QFamilyError::ForeignVariables(i, j));
            }
            let (key, p) = if i < j { ((i, j), p) } else { ((j, i), swap_uv(&p)) };
            polys.insert(key, p);
        }
        let mut sorted: Vec<Letter> = index_set.clone();
        sorted.sort_unstable();
        for (a, &i) in sorted.iter().enumerate() {
            for &j in &sorted[a + 1..] {
                if !polys.contains_key(&(i, j)) {
                    return Err(QFamilyError::MissingPair(i, j));
                }
            }
        }
        Ok(QFamily { index_set: sorted, polys })
    }

    pub fn index_set(&self) -> &[Letter] {
        &self.index_set
    }

    pub fn contains(&self, i: Letter) -> bool {
        self.index_set.binary_search(&i).is_ok()
    }

    /// Stored pairs `i < j` with their polynomials.
    pub fn pairs(&self) -> impl Iterator<Item = ((Letter, Letter), &Poly)> {
        self.polys.iter().map(|(k, p)| (*k, p))
    }

    /// `Q_ij(u, v)`.
    pub fn q(&self, i: Letter, j: Letter) -> Poly {
        if i == j {
            return Poly::zero();
        }
        if i < j {
            self.polys.get(&(i, j)).cloned().unwrap_or_else(Poly::zero)
        } else {
            self.polys.get(&(j, i)).map(swap_uv).unwrap_or_else(Poly::zero)
        }
    }

    /// `Q̄_ij(u,v,w) = (Q_ij(u,v) − Q_ij(w,v)) / (u − w)`.
    pub fn qbar(&self, i: Letter, j: Letter) -> Result<Poly, QFamilyError> {
        let q = self.q(i, j);
        let diff = &q - &q.rename(&[(Var::U, Var::W)]);
        diff.div_by_difference(Var::U, Var::W).ok_or(QFamilyError::InexactQuotient(i, j))
    }

    /// Whether every `Q_ij` with `i, j ∈ supp(β)` is a polynomial in `u − v`.
    pub fn is_symmetric(&self, beta: &RootVector) -> bool {
        let supp: Vec<Letter> = beta.support().into_iter().collect();
        supp.iter().all(|&i| supp.iter().all(|&j| self.q(i, j).is_polynomial_in_difference(Var::U, Var::V)))
    }

    /// A compact fingerprint used to key persisted rewriting caches.
    pub fn fingerprint(&self) -> String {
        let mut s = format!("I={:?};", self.index_set);
        for ((i, j), p) in &self.polys {
            let mut terms: Vec<String> = p.terms().map(|(m, c)| format!("{c}@{}:{}", m[0], m[1])).collect();
            terms.sort();
            s.push_str(&format!("{i},{j}={};", terms.join("|")));
        }
        s
    }
}

fn swap_uv(p: &Poly) -> Poly {
    p.rename(&[(Var::U, Var::V), (Var::V, Var::U)])
}

/// `Q_ij(u,v) = Σ c·u^a v^b` given as `(c, a, b)` triples.
pub fn poly_uv(terms: &[(i64, u16, u16)]) -> Poly {
    Poly::from_terms(terms.iter().map(|(c, a, b)| {
        let mut m = [0u16; crate::linalg::poly::NVARS];
        m[Var::U as usize] = *a;
        m[Var::V as usize] = *b;
        (m, Scalar::from_int(*c))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> QFamily {
        QFamily::new(vec![1, 2], vec![((1, 2), poly_uv(&[(1, 1, 0), (-1, 0, 1)]))]).unwrap()
    }

    #[test]
    fn transpose_is_derived() {
        let q = c2();
        assert_eq!(q.q(2, 1), poly_uv(&[(1, 0, 1), (-1, 1, 0)]));
        assert!(q.q(1, 1).is_zero());
        // storing the transposed orientation gives the same family
        let q2 = QFamily::new(vec![2, 1], vec![((2, 1), poly_uv(&[(1, 0, 1), (-1, 1, 0)]))]).unwrap();
        assert_eq!(q, q2);
    }

    #[test]
    fn qbar_examples() {
        let q = c2();
        assert_eq!(q.qbar(1, 2).unwrap(), Poly::one());
        assert_eq!(q.qbar(2, 1).unwrap(), -&Poly::one());
        assert!(q.qbar(1, 1).unwrap().is_zero());
    }

    #[test]
    fn qbar_identity_for_higher_degree() {
        // Q_12 = u^3 + 2 u v^2 - v^4
        let q = QFamily::new(vec![1, 2], vec![((1, 2), poly_uv(&[(1, 3, 0), (2, 1, 2), (-1, 0, 4)]))]).unwrap();
        for (i, j) in [(1, 2), (2, 1)] {
            let qb = q.qbar(i, j).unwrap();
            let lhs = &q.q(i, j) - &q.q(i, j).rename(&[(Var::U, Var::W)]);
            let rhs = &(&Poly::var(Var::U) - &Poly::var(Var::W)) * &qb;
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn symmetry_examples() {
        let q = c2();
        let b = RootVector::from_pairs(&[(1, 1), (2, 1)]);
        assert!(q.is_symmetric(&b));
        let q3 = QFamily::new(vec![1, 2], vec![((1, 2), poly_uv(&[(1, 1, 0), (1, 0, 1)]))]).unwrap();
        assert!(!q3.is_symmetric(&b));
        assert!(q3.is_symmetric(&RootVector::simple(1)));
        assert!(q3.is_symmetric(&RootVector::from_pairs(&[(2, 3)])));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(QFamily::new(vec![1, 2], vec![]), Err(QFamilyError::MissingPair(1, 2)));
        assert_eq!(QFamily::new(vec![1, 1], vec![]), Err(QFamilyError::RepeatedLetter(1)));
        assert_eq!(QFamily::new(vec![1], vec![((1, 1), Poly::one())]), Err(QFamilyError::DiagonalPair(1)));
    }
}
