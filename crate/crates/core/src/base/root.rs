use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

/// A vertex of the quiver (an element of the index set `I`).
pub type Letter = u32;

/// An element `Σ n_i α_i` of the positive root lattice.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "BTreeMap<Letter, u32>", into = "BTreeMap<Letter, u32>")]
pub struct RootVector(BTreeMap<Letter, u32>);

impl From<BTreeMap<Letter, u32>> for RootVector {
    fn from(mut m: BTreeMap<Letter, u32>) -> Self {
        m.retain(|_, n| *n > 0);
        RootVector(m)
    }
}

impl From<RootVector> for BTreeMap<Letter, u32> {
    fn from(r: RootVector) -> Self {
        r.0
    }
}

impl RootVector {
    pub fn zero() -> Self {
        RootVector(BTreeMap::new())
    }

    /// The simple root `α_i`.
    pub fn simple(i: Letter) -> Self {
        RootVector::from_pairs(&[(i, 1)])
    }

    pub fn from_pairs(pairs: &[(Letter, u32)]) -> Self {
        let mut m = BTreeMap::new();
        for (i, n) in pairs {
            *m.entry(*i).or_insert(0) += n;
        }
        RootVector::from(m)
    }

    pub fn of_word(w: &Word) -> Self {
        let mut m = BTreeMap::new();
        for i in &w.0 {
            *m.entry(*i).or_insert(0) += 1;
        }
        RootVector(m)
    }

    pub fn height(&self) -> usize {
        self.0.values().map(|n| *n as usize).sum()
    }

    pub fn support(&self) -> BTreeSet<Letter> {
        self.0.keys().copied().collect()
    }

    pub fn multiplicity(&self, i: Letter) -> u32 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Letter, u32)> + '_ {
        self.0.iter().map(|(i, n)| (*i, *n))
    }

    pub fn add(&self, o: &RootVector) -> RootVector {
        let mut m = self.0.clone();
        for (i, n) in &o.0 {
            *m.entry(*i).or_insert(0) += n;
        }
        RootVector(m)
    }

    pub fn scale(&self, k: u32) -> RootVector {
        RootVector::from(self.0.iter().map(|(i, n)| (*i, n * k)).collect::<BTreeMap<_, _>>())
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.0.iter().map(|(i, n)| if *n == 1 { format!("a{i}") } else { format!("{n}a{i}") }).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// A sequence `(ν_1, …, ν_n)` of letters, labelling the idempotent `e(ν)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based access, matching the position labels of `x_k` and `τ_k`.
    pub fn at(&self, k: usize) -> Letter {
        self.0[k - 1]
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }

    /// `s_k ν`: swap positions `k` and `k+1` (1-based).
    pub fn swap(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        v.swap(k - 1, k);
        Word(v)
    }

    pub fn prefix(&self, m: usize) -> Word {
        Word(self.0[..m].to_vec())
    }

    pub fn suffix(&self, m: usize) -> Word {
        Word(self.0[m..].to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All words with letter multiset `β`, in lexicographic order.
pub fn words_of(beta: &RootVector) -> Vec<Word> {
    fn rec(counts: &mut Vec<(Letter, u32)>, cur: &mut Vec<Letter>, n: usize, out: &mut Vec<Word>) {
        if cur.len() == n {
            out.push(Word(cur.clone()));
            return;
        }
        for k in 0..counts.len() {
            if counts[k].1 == 0 {
                continue;
            }
            counts[k].1 -= 1;
            cur.push(counts[k].0);
            rec(counts, cur, n, out);
            cur.pop();
            counts[k].1 += 1;
        }
    }
    let mut counts: Vec<(Letter, u32)> = beta.iter().collect();
    let mut out = Vec::new();
    rec(&mut counts, &mut Vec::new(), beta.height(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn words_of_examples() {
        let b = RootVector::from_pairs(&[(1, 1), (2, 1)]);
        assert_eq!(words_of(&b), vec![Word(vec![1, 2]), Word(vec![2, 1])]);
        assert_eq!(words_of(&RootVector::from_pairs(&[(1, 2)])), vec![Word(vec![1, 1])]);
        assert_eq!(words_of(&RootVector::zero()), vec![Word::empty()]);
    }

    fn factorial(n: u64) -> u64 {
        (1..=n).product()
    }

    proptest! {
        #[test]
        fn multinomial_count(a in 0u32..4, b in 0u32..4, c in 0u32..3) {
            prop_assume!(a + b + c <= 8);
            let beta = RootVector::from_pairs(&[(1, a), (2, b), (5, c)]);
            let ws = words_of(&beta);
            let expect = factorial((a + b + c) as u64) / (factorial(a as u64) * factorial(b as u64) * factorial(c as u64));
            prop_assert_eq!(ws.len() as u64, expect);
            prop_assert!(ws.windows(2).all(|p| p[0] < p[1]));
            prop_assert!(ws.iter().all(|w| RootVector::of_word(w) == beta));
        }
    }
}
