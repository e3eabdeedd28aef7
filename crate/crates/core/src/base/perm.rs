//! Permutations in one-line notation, reduced words, and minimal coset
//! representatives for Young subgroups `S_m × S_n ⊂ S_{m+n}`.

use std::fmt;

use super::root::Word;

/// A permutation of `{1..n}` in one-line notation: `self.0[k-1] = w(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn from_one_line(v: Vec<usize>) -> Option<Self> {
        let n = v.len();
        let mut seen = vec![false; n];
        for &x in &v {
            if x == 0 || x > n || seen[x - 1] {
                return None;
            }
            seen[x - 1] = true;
        }
        Some(Permutation(v))
    }

    /// The simple transposition `s_k = (k, k+1)` in `S_n`.
    pub fn simple(n: usize, k: usize) -> Self {
        assert!(k >= 1 && k < n);
        let mut p = Self::identity(n);
        p.0.swap(k - 1, k);
        p
    }

    /// Product `s_{a_1} ⋯ s_{a_l}` of a word in the simple transpositions.
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        let mut p = Self::identity(n);
        for &a in word.iter().rev() {
            p = p.left_mul_simple(a);
        }
        p
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    /// `w(k)`, 1-based.
    pub fn apply(&self, k: usize) -> usize {
        self.0[k - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, x)| *x == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// `(self ∘ o)(k) = self(o(k))`.
    pub fn compose(&self, o: &Permutation) -> Self {
        Permutation(o.0.iter().map(|&k| self.0[k - 1]).collect())
    }

    /// `s_a ∘ self`: exchanges the values `a` and `a+1`.
    pub fn left_mul_simple(&self, a: usize) -> Self {
        Permutation(
            self.0
                .iter()
                .map(|&x| {
                    if x == a {
                        a + 1
                    } else if x == a + 1 {
                        a
                    } else {
                        x
                    }
                })
                .collect(),
        )
    }

    /// `self ∘ s_a`: exchanges positions `a` and `a+1`.
    pub fn right_mul_simple(&self, a: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(a - 1, a);
        Permutation(v)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.0.len();
        let mut c = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.0[i] > self.0[j] {
                    c += 1;
                }
            }
        }
        c
    }

    /// Whether `ℓ(s_a w) < ℓ(w)`, i.e. `a+1` appears before `a` in one-line notation.
    pub fn is_left_descent(&self, a: usize) -> bool {
        let inv = self.inverse();
        inv.0[a] < inv.0[a - 1]
    }

    /// Whether `ℓ(w s_a) < ℓ(w)`.
    pub fn is_right_descent(&self, a: usize) -> bool {
        self.0[a - 1] > self.0[a]
    }

    /// Lexicographically smallest reduced word `(a_1, …, a_l)` with
    /// `w = s_{a_1} ⋯ s_{a_l}`: repeatedly strip the smallest left descent.
    pub fn canonical_reduced_word(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut w = self.clone();
        let mut out = Vec::new();
        while let Some(a) = (1..n).find(|&a| w.is_left_descent(a)) {
            out.push(a);
            w = w.left_mul_simple(a);
        }
        out
    }

    /// Lexicographically largest reduced word; an alternative convention
    /// used to test independence of the choice of reduced expression.
    pub fn max_reduced_word(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut w = self.clone();
        let mut out = Vec::new();
        while let Some(a) = (1..n).rev().find(|&a| w.is_left_descent(a)) {
            out.push(a);
            w = w.left_mul_simple(a);
        }
        out
    }

    /// Place permutation of a word: `(w·ν)_{w(p)} = ν_p`.
    pub fn act_on_word(&self, nu: &Word) -> Word {
        assert_eq!(nu.len(), self.0.len());
        let mut out = vec![0; nu.len()];
        for (p, &l) in nu.0.iter().enumerate() {
            out[self.0[p] - 1] = l;
        }
        Word(out)
    }

    /// Whether `w` is increasing on `[1,m]` and on `[m+1, n]`.
    pub fn is_min_coset_rep(&self, m: usize) -> bool {
        self.0[..m].windows(2).all(|p| p[0] < p[1]) && self.0[m..].windows(2).all(|p| p[0] < p[1])
    }

    /// Factor `w = w0 ∘ (w1 × w2)` with `w0` a minimal coset representative
    /// for `S_m × S_{n-m}`, `w1 ∈ S_m`, `w2 ∈ S_{n-m}`.
    pub fn coset_factorization(&self, m: usize) -> (Permutation, Permutation, Permutation) {
        let n = self.0.len();
        let mut first: Vec<usize> = self.0[..m].to_vec();
        let mut second: Vec<usize> = self.0[m..].to_vec();
        first.sort_unstable();
        second.sort_unstable();
        let w0 = Permutation(first.iter().chain(second.iter()).copied().collect());
        let rest = w0.inverse().compose(self);
        let w1 = Permutation(rest.0[..m].to_vec());
        let w2 = Permutation(rest.0[m..].iter().map(|x| x - m).collect());
        debug_assert_eq!(w0.size(), n);
        (w0, w1, w2)
    }

    /// `w1 × w2 ∈ S_{m+n}`.
    pub fn juxtapose(w1: &Permutation, w2: &Permutation) -> Permutation {
        let m = w1.size();
        Permutation(w1.0.iter().copied().chain(w2.0.iter().map(|x| x + m)).collect())
    }

    /// Reduced word adapted to the split at `m`: the canonical word of the
    /// coset representative followed by those of the two parabolic factors.
    pub fn adapted_reduced_word(&self, m: usize) -> Vec<usize> {
        let (w0, w1, w2) = self.coset_factorization(m);
        let mut out = w0.canonical_reduced_word();
        out.extend(w1.canonical_reduced_word());
        out.extend(w2.canonical_reduced_word().into_iter().map(|a| a + m));
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A minimal coset representative together with its canonical reduced word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetRep {
    pub perm: Permutation,
    pub word: Vec<usize>,
}

/// The minimal coset representatives `S_{m,n}` of `S_{m+n} / (S_m × S_n)`,
/// ordered by length and then by canonical reduced word; identity first.
pub fn min_coset_reps(m: usize, n: usize) -> Vec<CosetRep> {
    let total = m + n;
    let mut out = Vec::new();
    // choose the image of [1,m]
    let mut subset: Vec<usize> = (1..=m).collect();
    loop {
        let rest: Vec<usize> = (1..=total).filter(|x| !subset.contains(x)).collect();
        let perm = Permutation(subset.iter().copied().chain(rest).collect());
        let word = perm.canonical_reduced_word();
        out.push(CosetRep { perm, word });
        // next m-subset in lexicographic order
        let mut i = m;
        loop {
            if i == 0 {
                out.sort_by(|a, b| (a.word.len(), &a.word).cmp(&(b.word.len(), &b.word)));
                return out;
            }
            i -= 1;
            if subset[i] < total - (m - 1 - i) {
                subset[i] += 1;
                for j in i + 1..m {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// `w[m,n]`: sends `k ↦ k+n` for `k ≤ m` and `k ↦ k-m` otherwise.
pub fn block_transposition(m: usize, n: usize) -> Permutation {
    Permutation((1..=m + n).map(|k| if k <= m { k + n } else { k - m }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn all_perms(n: usize) -> Vec<Permutation> {
        fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation(cur.clone()));
                return;
            }
            for x in 1..=n {
                if !used[x - 1] {
                    used[x - 1] = true;
                    cur.push(x);
                    rec(cur, used, n, out);
                    cur.pop();
                    used[x - 1] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], n, &mut out);
        out
    }

    #[test]
    fn coset_reps_examples() {
        let r = min_coset_reps(1, 1);
        assert_eq!(r.len(), 2);
        assert!(r[0].perm.is_identity());
        assert_eq!(r[1].word, vec![1]);
        assert_eq!(min_coset_reps(2, 1).len(), 3);
        let r = min_coset_reps(0, 3);
        assert_eq!(r.len(), 1);
        assert!(r[0].perm.is_identity());
        for (m, n) in [(2, 2), (3, 1), (1, 3), (2, 3), (0, 0)] {
            let r = min_coset_reps(m, n);
            assert_eq!(r.len(), binom(m + n, m));
            assert!(r[0].perm.is_identity());
            for c in &r {
                assert!(c.perm.is_min_coset_rep(m));
                assert_eq!(Permutation::from_word(m + n, &c.word), c.perm);
                assert_eq!(c.word.len(), c.perm.length());
            }
        }
    }

    #[test]
    fn block_transposition_examples() {
        assert_eq!(block_transposition(1, 1), Permutation::simple(2, 1));
        // k ↦ k+n on [1,m], k ↦ k-m on [m+1,m+n]
        let w = block_transposition(2, 1);
        assert_eq!(w.one_line(), &[2, 3, 1]);
        assert_eq!(w.inverse().one_line(), &[3, 1, 2]);
        assert_eq!(w.length(), 2);
        assert!(block_transposition(3, 0).is_identity());
        for (m, n) in [(2, 2), (1, 3), (3, 2)] {
            let w = block_transposition(m, n);
            assert_eq!(w.length(), m * n);
            let reps = min_coset_reps(m, n);
            let max = reps.iter().map(|c| c.perm.length()).max().unwrap();
            assert!(reps.iter().any(|c| c.perm == w));
            assert_eq!(max, m * n);
        }
    }

    #[test]
    fn canonical_word_is_lex_smallest_reduced() {
        for w in all_perms(4) {
            let c = w.canonical_reduced_word();
            assert_eq!(c.len(), w.length());
            assert_eq!(Permutation::from_word(4, &c), w);
            let mx = w.max_reduced_word();
            assert_eq!(Permutation::from_word(4, &mx), w);
            assert!(c <= mx);
        }
    }

    #[test]
    fn length_additive_coset_factorization() {
        for total in 0..=6 {
            for m in 0..=total {
                for w in all_perms(total) {
                    let (w0, w1, w2) = w.coset_factorization(m);
                    assert!(w0.is_min_coset_rep(m));
                    assert_eq!(w0.compose(&Permutation::juxtapose(&w1, &w2)), w);
                    assert_eq!(w.length(), w0.length() + w1.length() + w2.length());
                    let a = w.adapted_reduced_word(m);
                    assert_eq!(Permutation::from_word(total, &a), w);
                    assert_eq!(a.len(), w.length());
                }
            }
        }
    }

    #[test]
    fn word_action_matches_composition() {
        let nu = Word(vec![1, 2, 3]);
        let s1 = Permutation::simple(3, 1);
        assert_eq!(s1.act_on_word(&nu), Word(vec![2, 1, 3]));
        let w = Permutation::from_word(3, &[1, 2]);
        assert_eq!(w.act_on_word(&nu), s1.act_on_word(&Permutation::simple(3, 2).act_on_word(&nu)));
    }
}
