//! Sparse multivariate polynomials over the rationals.
//!
//! The variable alphabet is fixed: `u, v, w` carry the defining family
//! `Q_ij(u,v)` and its divided difference, `z, z1, z2` are spectral
//! parameters. Fixing the alphabet keeps variable tags consistent across
//! operands by construction.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::ring::Ring;
use super::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    U = 0,
    V = 1,
    W = 2,
    Z = 3,
    Z1 = 4,
    Z2 = 5,
}

pub const NVARS: usize = 6;

impl Var {
    pub const ALL: [Var; NVARS] = [Var::U, Var::V, Var::W, Var::Z, Var::Z1, Var::Z2];

    pub fn name(self) -> &'static str {
        match self {
            Var::U => "u",
            Var::V => "v",
            Var::W => "w",
            Var::Z => "z",
            Var::Z1 => "z1",
            Var::Z2 => "z2",
        }
    }
}

/// Exponent vector indexed by [`Var`].
pub type Monomial = [u16; NVARS];

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Poly::zero();
        p.add_term([0; NVARS], c);
        p
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn var(v: Var) -> Self {
        Poly::monomial(v, 1, Scalar::one())
    }

    pub fn monomial(v: Var, e: u16, c: Scalar) -> Self {
        let mut m = [0; NVARS];
        m[v as usize] = e;
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Scalar::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant term, or `None` if some variable occurs.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (*m == [0; NVARS]).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    /// Variables that occur with positive exponent.
    pub fn vars(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|v| self.terms.keys().any(|m| m[*v as usize] > 0)).collect()
    }

    pub fn degree_in(&self, v: Var) -> Option<u16> {
        self.terms.keys().map(|m| m[v as usize]).max()
    }

    /// Lowest exponent of `v` over the nonzero terms; `None` for the zero polynomial.
    pub fn valuation_in(&self, v: Var) -> Option<u16> {
        self.terms.keys().map(|m| m[v as usize]).min()
    }

    /// Coefficient of `v^e`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, v: Var, e: u16) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m[v as usize] == e {
                let mut m2 = *m;
                m2[v as usize] = 0;
                out.add_term(m2, c.clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute a polynomial for each variable listed in `subs`; others are kept.
    pub fn substitute(&self, subs: &[(Var, Poly)]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            let mut rest = *m;
            for (v, p) in subs {
                let e = m[*v as usize];
                rest[*v as usize] = 0;
                if e > 0 {
                    term = &term * &p.pow(e as u32);
                }
            }
            let mut keep = Poly::zero();
            keep.add_term(rest, Scalar::one());
            out = &out + &(&term * &keep);
        }
        out
    }

    /// Evaluate a variable at a rational value.
    pub fn eval_var(&self, v: Var, x: &Scalar) -> Poly {
        self.substitute(&[(v, Poly::constant(x.clone()))])
    }

    /// Rename variables (simultaneous).
    pub fn rename(&self, map: &[(Var, Var)]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut m2 = *m;
            for (from, _) in map {
                m2[*from as usize] = 0;
            }
            for (from, to) in map {
                m2[*to as usize] += m[*from as usize];
            }
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Exact division by `(a - b)`. Returns `None` if the remainder is nonzero.
    pub fn div_by_difference(&self, a: Var, b: Var) -> Option<Poly> {
        // Synthetic division in `a` with root `a = b`.
        let deg = match self.degree_in(a) {
            None => return Some(Poly::zero()),
            Some(d) => d,
        };
        let coeffs: Vec<Poly> = (0..=deg).map(|e| self.coefficient_of(a, e)).collect();
        let vb = Poly::var(b);
        let mut quot = vec![Poly::zero(); deg as usize];
        let mut carry = Poly::zero();
        for e in (1..=deg as usize).rev() {
            carry = &coeffs[e] + &(&vb * &carry);
            quot[e - 1] = carry.clone();
        }
        let remainder = &coeffs[0] + &(&vb * &carry);
        if !remainder.is_zero() {
            return None;
        }
        let mut out = Poly::zero();
        for (e, q) in quot.into_iter().enumerate() {
            out = &out + &(&q * &Poly::monomial(a, e as u16, Scalar::one()));
        }
        Some(out)
    }

    /// Whether `self` lies in the subring `k[a - b]` (other variables absent).
    pub fn is_polynomial_in_difference(&self, a: Var, b: Var) -> bool {
        if self.vars().iter().any(|v| *v != a && *v != b) {
            return false;
        }
        // p(a, b) ∈ k[a-b]  iff  p(a, b) = p(a - b, 0)
        let shifted = self.substitute(&[(b, Poly::zero())]).substitute(&[(a, &Poly::var(a) - &Poly::var(b))]);
        &shifted == self
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let mut m = *m1;
                for i in 0..NVARS {
                    m[i] += m2[i];
                }
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Scalar::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = Var::ALL
                .iter()
                .filter(|v| m[**v as usize] > 0)
                .map(|v| match m[*v as usize] {
                    1 => v.name().to_string(),
                    e => format!("{}^{}", v.name(), e),
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Ring for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn from_scalar(c: Scalar) -> Self {
        Poly::constant(c)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Scalar) -> Self {
        Poly::scale(self, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn difference_quotient_is_exact() {
        // (u^2 v - w^2 v) / (u - w) = (u + w) v
        let p = &(&Poly::var(Var::U).pow(2) * &Poly::var(Var::V)) - &(&Poly::var(Var::W).pow(2) * &Poly::var(Var::V));
        let q = p.div_by_difference(Var::U, Var::W).unwrap();
        assert_eq!(q, &(&Poly::var(Var::U) + &Poly::var(Var::W)) * &Poly::var(Var::V));
        assert!((&Poly::var(Var::U) - &Poly::var(Var::W)).div_by_difference(Var::U, Var::W).unwrap() == Poly::one());
        assert!(Poly::var(Var::U).div_by_difference(Var::U, Var::W).is_none());
        assert!((&Poly::var(Var::U) + &Poly::one()).div_by_difference(Var::U, Var::W).is_none());
    }

    #[test]
    fn difference_subring_membership() {
        let d = &Poly::var(Var::U) - &Poly::var(Var::V);
        assert!(d.pow(3).is_polynomial_in_difference(Var::U, Var::V));
        assert!((&d.pow(2) + &Poly::constant(s(5))).is_polynomial_in_difference(Var::U, Var::V));
        assert!(!(&Poly::var(Var::U) + &Poly::var(Var::V)).is_polynomial_in_difference(Var::U, Var::V));
        assert!(Poly::zero().is_polynomial_in_difference(Var::U, Var::V));
    }

    #[test]
    fn valuation_and_coefficients() {
        let z = Poly::var(Var::Z);
        let p = &z.pow(2) + &z.pow(5).scale(&s(3));
        assert_eq!(p.valuation_in(Var::Z), Some(2));
        assert_eq!(p.coefficient_of(Var::Z, 5), Poly::constant(s(3)));
        assert_eq!(Poly::zero().valuation_in(Var::Z), None);
    }
}
