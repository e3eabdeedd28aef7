use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::rep::Rep;
use crate::base::Letter;
use crate::linalg::{eval_poly_at, Matrix, Ring, Var};

/// One failed relation, with the generator indices involved (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub relation: &'static str,
    pub indices: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "{}[{}]", self.relation, idx.join(","))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub violations: Vec<Violation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn fail(&mut self, relation: &'static str, indices: Vec<usize>) {
        self.violations.push(Violation { relation, indices });
    }
}

/// Every defining relation plus nilpotency of each `x_k`.
pub fn check_relations<R: Ring>(m: &Rep<R>) -> RelationReport {
    let mut rep = check_defining_relations(m);
    let d = m.dim() as u32;
    for (k, x) in m.xs().iter().enumerate() {
        if d > 0 && !x.pow(d).is_zero() {
            rep.fail("nilpotent", vec![k + 1]);
        }
    }
    rep
}

/// The defining relations only. Spectral specializations `x_k ↦ x_k + c`
/// with `c ≠ 0` satisfy these but are not nilpotent.
pub fn check_defining_relations<R: Ring>(m: &Rep<R>) -> RelationReport {
    let mut rep = RelationReport::default();
    let n = m.height();
    let d = m.dim();
    let words = m.words();

    for (i, w) in words.iter().enumerate() {
        if w.len() != n {
            rep.fail("word", vec![i]);
        }
    }
    if !rep.passed() {
        return rep;
    }

    // x_k preserves e(ν), τ_k maps e(ν) to e(s_k ν)
    for k in 1..=n {
        if m.x(k).entries().any(|(i, j, _)| words[i] != words[j]) {
            rep.fail("x_word", vec![k]);
        }
    }
    for k in 1..n {
        if m.tau(k).entries().any(|(i, j, _)| words[i] != words[j].swap(k)) {
            rep.fail("tau_word", vec![k]);
        }
    }

    for k in 1..=n {
        for l in k + 1..=n {
            if m.x(k).mul(m.x(l)) != m.x(l).mul(m.x(k)) {
                rep.fail("x_commute", vec![k, l]);
            }
        }
    }

    for k in 1..n {
        for l in k + 2..n {
            if m.tau(k).mul(m.tau(l)) != m.tau(l).mul(m.tau(k)) {
                rep.fail("tau_far", vec![k, l]);
            }
        }
    }

    let eq = |k: usize, j: usize| words[j].at(k) == words[j].at(k + 1);
    for k in 1..n {
        let tk = m.tau(k);
        for mm in 1..=n {
            let sm = if mm == k {
                k + 1
            } else if mm == k + 1 {
                k
            } else {
                mm
            };
            let lhs = tk.mul(m.x(mm)).sub(&m.x(sm).mul(tk));
            let mut rhs = Matrix::<R>::zeros(d, d);
            if mm == k || mm == k + 1 {
                let v = if mm == k { R::one().neg() } else { R::one() };
                for j in 0..d {
                    if eq(k, j) {
                        rhs.set(j, j, v.clone());
                    }
                }
            }
            if lhs != rhs {
                rep.fail("tau_x", vec![k, mm]);
            }
        }
    }

    let q = m.qfamily();
    for k in 1..n {
        let lhs = m.tau(k).mul(m.tau(k));
        let mut rhs = Matrix::<R>::zeros(d, d);
        for (a, b) in letter_pairs(words.iter().map(|w| (w.at(k), w.at(k + 1)))) {
            let val = eval_poly_at(&q.q(a, b), &[(Var::U, m.x(k)), (Var::V, m.x(k + 1))], d);
            rhs = rhs.add(&val.mask_cols(|j| words[j].at(k) == a && words[j].at(k + 1) == b));
        }
        if lhs != rhs {
            rep.fail("tau_square", vec![k]);
        }
    }

    for k in 1..n.saturating_sub(1) {
        let (t0, t1) = (m.tau(k), m.tau(k + 1));
        let lhs = t1.mul(t0).mul(t1).sub(&t0.mul(t1).mul(t0));
        let mut rhs = Matrix::<R>::zeros(d, d);
        let pairs = letter_pairs(words.iter().filter(|w| w.at(k) == w.at(k + 2)).map(|w| (w.at(k), w.at(k + 1))));
        for (a, b) in pairs {
            let qb = q.qbar(a, b).expect("Q-family passed validation");
            let val = eval_poly_at(&qb, &[(Var::U, m.x(k)), (Var::V, m.x(k + 1)), (Var::W, m.x(k + 2))], d);
            rhs = rhs.add(&val.mask_cols(|j| {
                let w = &words[j];
                w.at(k) == a && w.at(k + 1) == b && w.at(k + 2) == a
            }));
        }
        if lhs != rhs {
            rep.fail("braid", vec![k]);
        }
    }
    rep
}

fn letter_pairs(it: impl Iterator<Item = (Letter, Letter)>) -> BTreeSet<(Letter, Letter)> {
    it.collect()
}
