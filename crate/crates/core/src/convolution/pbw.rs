//! Normal forms in `R(β)` with respect to the basis `τ_{r(y)} x^p e(ν)`.
//!
//! `r(y)` is the reduced word of `y` adapted to a split `n = m + (n - m)`:
//! the canonical word of the minimal coset representative, followed by
//! the canonical words of the two parabolic factors. With split `0` this is
//! the canonical word of `y` itself.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::base::{Permutation, QFamily, Word};
use crate::linalg::{Poly, Scalar, Var};

/// A generator of `R(β)` acting by left multiplication (positions 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    X(usize),
    T(usize),
}

pub type Exponents = Vec<u16>;

/// `Σ c · τ_{r(y)} x^p e(ν)` for one fixed right idempotent `e(ν)`.
pub type Terms = BTreeMap<(Permutation, Exponents), Scalar>;

/// A raw product `c · g_1 ⋯ g_k e(ν)`.
type Raw = (Scalar, Vec<Generator>);

/// Rewriting engine for `R(β)` with `ht β = n`, memoized on `(g, y, ν)`.
pub struct PbwEngine {
    q: Arc<QFamily>,
    n: usize,
    split: usize,
    words: HashMap<Permutation, Vec<usize>>,
    memo: HashMap<(Generator, Permutation, Word), Terms>,
}

fn add_into(acc: &mut Terms, key: (Permutation, Exponents), c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&key) {
        Some(v) => {
            *v += &c;
            if v.is_zero() {
                acc.remove(&key);
            }
        }
        None => {
            acc.insert(key, c);
        }
    }
}

impl PbwEngine {
    pub fn new(q: Arc<QFamily>, n: usize, split: usize) -> Self {
        assert!(split <= n);
        PbwEngine { q, n, split, words: HashMap::new(), memo: HashMap::new() }
    }

    pub fn height(&self) -> usize {
        self.n
    }

    pub fn split(&self) -> usize {
        self.split
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// The reduced word `r(y)` used for the normal form.
    pub fn reduced_word(&mut self, y: &Permutation) -> Vec<usize> {
        if let Some(w) = self.words.get(y) {
            return w.clone();
        }
        let w = y.adapted_reduced_word(self.split);
        self.words.insert(y.clone(), w.clone());
        w
    }

    /// `g · τ_{r(y)} e(ν)` in normal form.
    pub fn left_mul_basic(&mut self, g: Generator, y: &Permutation, nu: &Word) -> Terms {
        let key = (g, y.clone(), nu.clone());
        if let Some(t) = self.memo.get(&key) {
            return t.clone();
        }
        let out = match g {
            Generator::X(k) => self.mul_x(k, y, nu),
            Generator::T(a) => self.mul_tau(a, y, nu),
        };
        self.memo.insert(key, out.clone());
        out
    }

    /// `g · t` for a normal-form sum `t` with right idempotent `e(ν)`.
    pub fn left_mul(&mut self, g: Generator, t: &Terms, nu: &Word) -> Terms {
        let mut acc = Terms::new();
        for ((y, p), c) in t {
            let basic = self.left_mul_basic(g, y, nu);
            for ((y2, p2), c2) in basic {
                let e: Exponents = p2.iter().zip(p).map(|(a, b)| a + b).collect();
                add_into(&mut acc, (y2, e), c * &c2);
            }
        }
        acc
    }

    /// Normal form of `c · g_1 ⋯ g_k e(ν)`.
    pub fn normalize(&mut self, c: &Scalar, gens: &[Generator], nu: &Word) -> Terms {
        let mut t = Terms::new();
        add_into(&mut t, (Permutation::identity(self.n), vec![0; self.n]), c.clone());
        for g in gens.iter().rev() {
            if t.is_empty() {
                break;
            }
            t = self.left_mul(*g, &t, nu);
        }
        t
    }

    fn normalize_all(&mut self, raws: Vec<Raw>, nu: &Word, acc: &mut Terms) {
        for (c, gens) in raws {
            for (k, v) in self.normalize(&c, &gens, nu) {
                add_into(acc, k, v);
            }
        }
    }

    fn mul_x(&mut self, k: usize, y: &Permutation, nu: &Word) -> Terms {
        let r = self.reduced_word(y);
        let l = r.len();
        // omegas[i]: the word to the right of τ_{r[i]}
        let mut omegas = vec![nu.clone(); l];
        for i in (0..l.saturating_sub(1)).rev() {
            omegas[i] = omegas[i + 1].swap(r[i + 1]);
        }
        let mut acc = Terms::new();
        let mut raws: Vec<Raw> = Vec::new();
        let mut kc = k;
        for i in 0..l {
            let a = r[i];
            let om = &omegas[i];
            if om.at(a) == om.at(a + 1) {
                // x_k τ_a e = τ_a x_{s_a k} e + (δ(k=a+1) − δ(k=a)) e
                let c = if kc == a + 1 {
                    1
                } else if kc == a {
                    -1
                } else {
                    0
                };
                if c != 0 {
                    let gens = r[..i].iter().chain(&r[i + 1..]).map(|&b| Generator::T(b)).collect();
                    raws.push((Scalar::from_int(c), gens));
                }
            }
            kc = if kc == a {
                a + 1
            } else if kc == a + 1 {
                a
            } else {
                kc
            };
        }
        let mut p = vec![0u16; self.n];
        p[kc - 1] = 1;
        add_into(&mut acc, (y.clone(), p), Scalar::one());
        self.normalize_all(raws, nu, &mut acc);
        acc
    }

    fn mul_tau(&mut self, a: usize, y: &Permutation, nu: &Word) -> Terms {
        let r = self.reduced_word(y);
        let mut acc = Terms::new();
        if !y.is_left_descent(a) {
            let ya = y.left_mul_simple(a);
            let target = self.reduced_word(&ya);
            let mut w = vec![a];
            w.extend(&r);
            let raws = self.transform(&w, &target, nu);
            add_into(&mut acc, (ya, vec![0; self.n]), Scalar::one());
            self.normalize_all(raws, nu, &mut acc);
        } else {
            let (w2, corr) = self.make_front(&r, a, nu);
            let rest = &w2[1..];
            let om = word_after(rest, nu);
            let qp = self.q.q(om.at(a), om.at(a + 1));
            let mut raws: Vec<Raw> = Vec::new();
            let tail: Vec<Generator> = rest.iter().map(|&b| Generator::T(b)).collect();
            for (c, mut xs) in poly_monomials(&qp, &[(Var::U, a), (Var::V, a + 1)]) {
                xs.extend(tail.iter().copied());
                raws.push((c, xs));
            }
            for (c, gens) in corr {
                let mut g = vec![Generator::T(a)];
                g.extend(gens);
                raws.push((c, g));
            }
            self.normalize_all(raws, nu, &mut acc);
        }
        acc
    }

    /// Rewrite the reduced word `w` (followed by `e(ω)`) so that it starts
    /// with the left descent `a`; returns the new word and the error terms.
    fn make_front(&mut self, w: &[usize], a: usize, omega: &Word) -> (Vec<usize>, Vec<Raw>) {
        let c = w[0];
        if c == a {
            return (w.to_vec(), Vec::new());
        }
        let tail = &w[1..];
        if a.abs_diff(c) > 1 {
            let (t2, corr) = self.make_front(tail, a, omega);
            let mut out = vec![a, c];
            out.extend(&t2[1..]);
            return (out, prefix_all(corr, &[c]));
        }
        let (t2, corr1) = self.make_front(tail, a, omega);
        let (t3, corr2) = self.make_front(&t2[1..], c, omega);
        let r2 = &t3[1..];
        let mut raws = prefix_all(corr1, &[c]);
        raws.extend(prefix_all(corr2, &[c, a]));
        // (c, a, c) → (a, c, a)
        let k = a.min(c);
        let om = word_after(r2, omega);
        if om.at(k) == om.at(k + 2) {
            let qb = self.q.qbar(om.at(k), om.at(k + 1)).expect("Q-family passed validation");
            // τ_{k+1}τ_kτ_{k+1} = τ_kτ_{k+1}τ_k + Q̄
            let sign = if c == k + 1 { Scalar::one() } else { -Scalar::one() };
            let tail: Vec<Generator> = r2.iter().map(|&b| Generator::T(b)).collect();
            for (coef, mut xs) in poly_monomials(&qb, &[(Var::U, k), (Var::V, k + 1), (Var::W, k + 2)]) {
                xs.extend(tail.iter().copied());
                raws.push((&coef * &sign, xs));
            }
        }
        let mut out = vec![a, c, a];
        out.extend(r2);
        (out, raws)
    }

    /// Error terms `E` with `τ_w e(ω) = τ_v e(ω) + E` for reduced words `w`, `v`
    /// of the same permutation.
    fn transform(&mut self, w: &[usize], v: &[usize], omega: &Word) -> Vec<Raw> {
        if v.is_empty() {
            debug_assert!(w.is_empty());
            return Vec::new();
        }
        let (w2, mut corr) = self.make_front(w, v[0], omega);
        let sub = self.transform(&w2[1..], &v[1..], omega);
        corr.extend(prefix_all(sub, &[v[0]]));
        corr
    }

    /// Export the memo table for persistence.
    pub fn export(&self) -> Vec<MemoEntry> {
        let mut out: Vec<MemoEntry> = self
            .memo
            .iter()
            .map(|((g, y, nu), t)| MemoEntry {
                gen: *g,
                perm: y.one_line().to_vec(),
                word: nu.letters().to_vec(),
                terms: t.iter().map(|((y2, p), c)| (y2.one_line().to_vec(), p.clone(), c.clone())).collect(),
            })
            .collect();
        out.sort_by(|a, b| (a.gen, &a.perm, &a.word).cmp(&(b.gen, &b.perm, &b.word)));
        out
    }

    /// Load persisted memo entries; malformed entries are ignored.
    pub fn import(&mut self, entries: Vec<MemoEntry>) {
        for e in entries {
            let (Some(y), true) = (Permutation::from_one_line(e.perm), e.word.len() == self.n) else {
                continue;
            };
            if y.size() != self.n {
                continue;
            }
            let mut t = Terms::new();
            let mut ok = true;
            for (p, ex, c) in e.terms {
                match Permutation::from_one_line(p) {
                    Some(y2) if y2.size() == self.n && ex.len() == self.n => add_into(&mut t, (y2, ex), c),
                    _ => ok = false,
                }
            }
            if ok {
                self.memo.insert((e.gen, y, Word::new(e.word)), t);
            }
        }
    }
}

/// A persisted memo entry: `gen · τ_{r(perm)} e(word) = Σ c τ_{r(y)} x^p e(word)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MemoEntry {
    pub gen: Generator,
    pub perm: Vec<usize>,
    pub word: Vec<u32>,
    pub terms: Vec<(Vec<usize>, Exponents, Scalar)>,
}

fn prefix_all(raws: Vec<Raw>, prefix: &[usize]) -> Vec<Raw> {
    raws.into_iter()
        .map(|(c, g)| {
            let mut v: Vec<Generator> = prefix.iter().map(|&b| Generator::T(b)).collect();
            v.extend(g);
            (c, v)
        })
        .collect()
}

/// The word to the right of `τ_{w_1} ⋯ τ_{w_l} e(ω)`'s leftmost factor, i.e. `s_{w_1} ⋯ s_{w_l} ω`.
fn word_after(w: &[usize], omega: &Word) -> Word {
    let mut om = omega.clone();
    for &b in w.iter().rev() {
        om = om.swap(b);
    }
    om
}

/// Monomials of `p` as products of `x`-generators at the given positions.
fn poly_monomials(p: &Poly, at: &[(Var, usize)]) -> Vec<Raw> {
    p.terms()
        .map(|(mono, c)| {
            let mut xs = Vec::new();
            for (v, pos) in at {
                for _ in 0..mono[*v as usize] {
                    xs.push(Generator::X(*pos));
                }
            }
            (c.clone(), xs)
        })
        .collect()
}

thread_local! {
    static ENGINES: RefCell<HashMap<(String, usize, usize), PbwEngine>> = RefCell::new(HashMap::new());
}

/// Run `f` with the shared engine for `(q, n, split)` on this thread.
pub fn with_engine<T>(q: &Arc<QFamily>, n: usize, split: usize, f: impl FnOnce(&mut PbwEngine) -> T) -> T {
    ENGINES.with(|cell| {
        let mut map = cell.borrow_mut();
        let eng = map.entry((q.fingerprint(), n, split)).or_insert_with(|| PbwEngine::new(q.clone(), n, split));
        f(eng)
    })
}

/// Dump of every engine on this thread, for persistence.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EngineDump {
    pub fingerprint: String,
    pub height: usize,
    pub split: usize,
    pub entries: Vec<MemoEntry>,
}

pub fn export_engines() -> Vec<EngineDump> {
    ENGINES.with(|cell| {
        let map = cell.borrow();
        let mut out: Vec<EngineDump> = map
            .iter()
            .map(|((fp, n, s), e)| EngineDump { fingerprint: fp.clone(), height: *n, split: *s, entries: e.export() })
            .collect();
        out.sort_by(|a, b| (&a.fingerprint, a.height, a.split).cmp(&(&b.fingerprint, b.height, b.split)));
        out
    })
}

/// Preload memo tables for `q` from a previous dump; dumps for other families are skipped.
pub fn import_engines(q: &Arc<QFamily>, dumps: Vec<EngineDump>) {
    let fp = q.fingerprint();
    ENGINES.with(|cell| {
        let mut map = cell.borrow_mut();
        for d in dumps {
            if d.fingerprint != fp || d.split > d.height {
                continue;
            }
            let eng = map
                .entry((fp.clone(), d.height, d.split))
                .or_insert_with(|| PbwEngine::new(q.clone(), d.height, d.split));
            eng.import(d.entries);
        }
    })
}

/// An element of `R(β)` as `Σ c · τ_w x^p e(ν)` with `τ_w` along the
/// canonical reduced word of `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormElement {
    pub height: usize,
    pub terms: BTreeMap<(Permutation, Exponents, Word), Scalar>,
}

impl NormalFormElement {
    pub fn zero(height: usize) -> Self {
        NormalFormElement { height, terms: BTreeMap::new() }
    }

    /// The idempotent `e(ν)`.
    pub fn idempotent(nu: &Word) -> Self {
        let n = nu.len();
        let mut terms = BTreeMap::new();
        terms.insert((Permutation::identity(n), vec![0; n], nu.clone()), Scalar::one());
        NormalFormElement { height: n, terms }
    }

    /// `τ_w x^p e(ν)`.
    pub fn monomial(w: Permutation, p: Exponents, nu: Word) -> Self {
        let n = nu.len();
        let mut terms = BTreeMap::new();
        terms.insert((w, p, nu), Scalar::one());
        NormalFormElement { height: n, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The word `w·ν` of the left idempotent of each term.
    pub fn left_word(w: &Permutation, nu: &Word) -> Word {
        w.act_on_word(nu)
    }
}

/// A token for [`pbw_reduce`]: a generator or an idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorToken {
    X(usize),
    T(usize),
    E(Word),
}

/// `g · t` in normal form.
pub fn pbw_reduce(q: &Arc<QFamily>, g: &GeneratorToken, t: &NormalFormElement) -> NormalFormElement {
    let n = t.height;
    let mut out = NormalFormElement::zero(n);
    let mut by_word: BTreeMap<Word, Terms> = BTreeMap::new();
    for ((w, p, nu), c) in &t.terms {
        by_word.entry(nu.clone()).or_default().insert((w.clone(), p.clone()), c.clone());
    }
    for (nu, terms) in by_word {
        let res: Terms = match g {
            GeneratorToken::E(mu) => terms.into_iter().filter(|((w, _), _)| w.act_on_word(&nu) == *mu).collect(),
            GeneratorToken::X(k) => with_engine(q, n, 0, |e| e.left_mul(Generator::X(*k), &terms, &nu)),
            GeneratorToken::T(a) => with_engine(q, n, 0, |e| e.left_mul(Generator::T(*a), &terms, &nu)),
        };
        for ((w, p), c) in res {
            out.terms.insert((w, p, nu.clone()), c);
        }
    }
    out
}
