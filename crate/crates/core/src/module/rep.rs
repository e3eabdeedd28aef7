use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::base::{Letter, QFamily, RootVector, Word};
use crate::linalg::{Matrix, Poly, QMatrix, Ring, Scalar, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("malformed module: {0}")]
    Shape(String),
    #[error("modules are over different KLR algebras")]
    QFamilyMismatch,
    #[error("root mismatch: {0} vs {1}")]
    BetaMismatch(RootVector, RootVector),
    #[error("height mismatch: {0} + {1} != {2}")]
    HeightMismatch(usize, usize, usize),
    #[error("subspace is not invariant under the generators")]
    NotInvariant,
    #[error("vector has length {0}, module has dimension {1}")]
    VectorLength(usize, usize),
}

/// Where a module came from when it was built as a convolution product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvOrigin {
    pub left_beta: RootVector,
    pub right_beta: RootVector,
    pub left_dim: usize,
    pub right_dim: usize,
}

/// A finite-dimensional module over `R(β)` with coefficients in `R`,
/// stored in a word-adapted basis: basis vector `i` lies in `e(words[i])M`.
///
/// `x[k-1]` and `tau[k-1]` are the matrices of `x_k` and `τ_k`.
#[derive(Clone, PartialEq)]
pub struct Rep<R> {
    qfamily: Arc<QFamily>,
    beta: RootVector,
    words: Vec<Word>,
    x: Vec<Matrix<R>>,
    tau: Vec<Matrix<R>>,
    origin: Option<ConvOrigin>,
}

pub type KlrModule = Rep<Scalar>;
pub type PolyModule = Rep<Poly>;

impl<R: Ring> Rep<R> {
    /// Validates shapes and word support; the defining relations are
    /// checked separately by [`super::check_relations`].
    pub fn new(
        qfamily: Arc<QFamily>,
        beta: RootVector,
        words: Vec<Word>,
        x: Vec<Matrix<R>>,
        tau: Vec<Matrix<R>>,
    ) -> Result<Self, ModuleError> {
        let n = beta.height();
        let d = words.len();
        if x.len() != n {
            return Err(ModuleError::Shape(format!("expected {n} x-matrices, got {}", x.len())));
        }
        if tau.len() != n.saturating_sub(1) {
            return Err(ModuleError::Shape(format!("expected {} tau-matrices, got {}", n.saturating_sub(1), tau.len())));
        }
        for m in x.iter().chain(tau.iter()) {
            if m.rows() != d || m.cols() != d {
                return Err(ModuleError::Shape(format!("generator matrix is {}x{}, dimension is {d}", m.rows(), m.cols())));
            }
        }
        for w in &words {
            if RootVector::of_word(w) != beta {
                return Err(ModuleError::Shape(format!("word {w} is not in I^{beta}")));
            }
            if let Some(l) = w.letters().iter().find(|l| !qfamily.contains(**l)) {
                return Err(ModuleError::Shape(format!("letter {l} is not in the index set")));
            }
        }
        Ok(Rep { qfamily, beta, words, x, tau, origin: None })
    }

    pub(crate) fn from_parts_unchecked(
        qfamily: Arc<QFamily>,
        beta: RootVector,
        words: Vec<Word>,
        x: Vec<Matrix<R>>,
        tau: Vec<Matrix<R>>,
    ) -> Self {
        Rep { qfamily, beta, words, x, tau, origin: None }
    }

    /// The zero module over `R(β)`.
    pub fn zero(qfamily: Arc<QFamily>, beta: RootVector) -> Self {
        let n = beta.height();
        let x = vec![Matrix::zeros(0, 0); n];
        let tau = vec![Matrix::zeros(0, 0); n.saturating_sub(1)];
        Rep { qfamily, beta, words: Vec::new(), x, tau, origin: None }
    }

    /// The one-dimensional module over `R(0) = k`.
    pub fn trivial(qfamily: Arc<QFamily>) -> Self {
        Rep { qfamily, beta: RootVector::zero(), words: vec![Word::empty()], x: Vec::new(), tau: Vec::new(), origin: None }
    }

    /// The one-dimensional module `L(i)` over `R(α_i)`, with `x_1 = 0`.
    pub fn letter(qfamily: Arc<QFamily>, i: Letter) -> Self {
        Rep {
            qfamily,
            beta: RootVector::simple(i),
            words: vec![Word::new(vec![i])],
            x: vec![Matrix::zeros(1, 1)],
            tau: Vec::new(),
            origin: None,
        }
    }

    /// The one-dimensional module on `word` with every generator acting by zero.
    /// It satisfies the relations iff `Q_{ν_k,ν_{k+1}}(0,0) = 0` for every `k`.
    pub fn one_dimensional(qfamily: Arc<QFamily>, word: Word) -> Result<Self, ModuleError> {
        let n = word.len();
        Rep::new(
            qfamily,
            RootVector::of_word(&word),
            vec![word],
            vec![Matrix::zeros(1, 1); n],
            vec![Matrix::zeros(1, 1); n.saturating_sub(1)],
        )
    }

    pub fn with_origin(mut self, origin: ConvOrigin) -> Self {
        self.origin = Some(origin);
        self
    }

    pub fn origin(&self) -> Option<&ConvOrigin> {
        self.origin.as_ref()
    }

    pub fn qfamily(&self) -> &Arc<QFamily> {
        &self.qfamily
    }

    pub fn beta(&self) -> &RootVector {
        &self.beta
    }

    pub fn height(&self) -> usize {
        self.beta.height()
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    /// `x_k`, 1-based.
    pub fn x(&self, k: usize) -> &Matrix<R> {
        &self.x[k - 1]
    }

    /// `τ_k`, 1-based.
    pub fn tau(&self, k: usize) -> &Matrix<R> {
        &self.tau[k - 1]
    }

    pub fn xs(&self) -> &[Matrix<R>] {
        &self.x
    }

    pub fn taus(&self) -> &[Matrix<R>] {
        &self.tau
    }

    /// All `x_k` then all `τ_k`.
    pub fn generators(&self) -> impl Iterator<Item = &Matrix<R>> {
        self.x.iter().chain(self.tau.iter())
    }

    /// Basis indices grouped by word, words in lexicographic order.
    pub fn word_blocks(&self) -> BTreeMap<Word, Vec<usize>> {
        let mut out: BTreeMap<Word, Vec<usize>> = BTreeMap::new();
        for (i, w) in self.words.iter().enumerate() {
            out.entry(w.clone()).or_default().push(i);
        }
        out
    }

    /// `dim e(ν)M` for each word with nonzero component.
    pub fn word_character(&self) -> BTreeMap<Word, usize> {
        self.word_blocks().into_iter().map(|(w, v)| (w, v.len())).collect()
    }

    /// The coordinate projection `e(ν)`.
    pub fn projection(&self, nu: &Word) -> Matrix<R> {
        let d = self.dim();
        let mut p = Matrix::zeros(d, d);
        for (i, w) in self.words.iter().enumerate() {
            if w == nu {
                p.set(i, i, R::one());
            }
        }
        p
    }

    pub fn same_algebra(&self, o: &Rep<impl Ring>) -> Result<(), ModuleError> {
        if self.qfamily != o.qfamily {
            return Err(ModuleError::QFamilyMismatch);
        }
        if self.beta != o.beta {
            return Err(ModuleError::BetaMismatch(self.beta.clone(), o.beta.clone()));
        }
        Ok(())
    }

    pub fn map_coefficients<S: Ring>(&self, f: impl Fn(&R) -> S) -> Rep<S> {
        Rep {
            qfamily: self.qfamily.clone(),
            beta: self.beta.clone(),
            words: self.words.clone(),
            x: self.x.iter().map(|m| m.map(&f)).collect(),
            tau: self.tau.iter().map(|m| m.map(&f)).collect(),
            origin: self.origin.clone(),
        }
    }

    pub fn same_family(&self, o: &Rep<impl Ring>) -> Result<(), ModuleError> {
        if self.qfamily != o.qfamily {
            return Err(ModuleError::QFamilyMismatch);
        }
        Ok(())
    }
}

impl KlrModule {
    pub fn to_poly(&self) -> PolyModule {
        self.map_coefficients(|c| Poly::constant(c.clone()))
    }

    /// Direct sum `self ⊕ o`, basis of `self` first.
    pub fn direct_sum(&self, o: &KlrModule) -> Result<KlrModule, ModuleError> {
        self.same_algebra(o)?;
        let (a, b) = (self.dim(), o.dim());
        let block = |p: &QMatrix, q: &QMatrix| {
            let mut m = QMatrix::zeros(a + b, a + b);
            for (i, j, v) in p.entries() {
                m.set(i, j, v.clone());
            }
            for (i, j, v) in q.entries() {
                m.set(a + i, a + j, v.clone());
            }
            m
        };
        let x = self.x.iter().zip(&o.x).map(|(p, q)| block(p, q)).collect();
        let tau = self.tau.iter().zip(&o.tau).map(|(p, q)| block(p, q)).collect();
        let mut words = self.words.clone();
        words.extend(o.words.iter().cloned());
        Ok(Rep::from_parts_unchecked(self.qfamily.clone(), self.beta.clone(), words, x, tau))
    }
}

impl PolyModule {
    /// Substitute `var = value` and require the result to be rational.
    pub fn specialize(&self, var: Var, value: &Scalar) -> KlrModule {
        self.map_coefficients(|p| p.eval_var(var, value).as_constant().expect("entries must only involve the specialized variable"))
    }
}

impl<R: Ring + fmt::Display> fmt::Debug for Rep<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Rep over {} (dim {})", self.beta, self.dim())?;
        let ws: Vec<String> = self.words.iter().map(|w| w.to_string()).collect();
        writeln!(f, "  words: {}", ws.join(" "))?;
        for (k, m) in self.x.iter().enumerate() {
            writeln!(f, "  x{}: {:?}", k + 1, m)?;
        }
        for (k, m) in self.tau.iter().enumerate() {
            writeln!(f, "  t{}: {:?}", k + 1, m)?;
        }
        Ok(())
    }
}
