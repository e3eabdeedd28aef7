//! JSON corpus files: a Q-family, named modules, and the pairs and triples to test.
//!
//! ```json
//! {"field": "Q", "index_set": [1, 2], "q_polys": {"1,2": [["1", [1, 0]], ["-1", [0, 1]]]},
//!  "modules": [{"name": "L1", "beta": {"1": 1}, "dim": 1, "words": [[1]], "x": [[]], "tau": []},
//!              {"name": "L1L2", "conv_of": ["L1", "L2"]}],
//!  "pairs": [["L1", "L2"]], "triples": []}
//! ```
//!
//! Matrices are lists of sparse `[row, col, "p/q"]` triplets, one list per generator.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::base::{Letter, QFamily, QFamilyError, RootVector, Word};
use crate::convolution::convolve;
use crate::linalg::{Poly, QMatrix, Scalar, Var};
use crate::module::{check_relations, KlrModule, ModuleError, Rep, Violation};

pub type Triplet = (usize, usize, Scalar);

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conv_of: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<RootVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub words: Option<Vec<Word>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<Vec<Triplet>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Vec<Vec<Triplet>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusFile {
    pub field: String,
    pub index_set: Vec<Letter>,
    /// `"i,j"` to the terms `[coefficient, [deg_u, deg_v]]` of `Q_ij(u,v)`.
    #[serde(default)]
    pub q_polys: BTreeMap<String, Vec<(Scalar, [u16; 2])>>,
    #[serde(default)]
    pub modules: Vec<ModuleEntry>,
    #[serde(default)]
    pub pairs: Vec<[String; 2]>,
    #[serde(default)]
    pub triples: Vec<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("unsupported field {0:?} (only \"Q\")")]
    Field(String),
    #[error("bad q_polys key {0:?}, expected \"i,j\"")]
    PairKey(String),
    #[error(transparent)]
    QFamily(#[from] QFamilyError),
    #[error("duplicate module name {0:?}")]
    Duplicate(String),
    #[error("unknown module {0:?}")]
    Unknown(String),
    #[error("module {0:?}: {1}")]
    Incomplete(String, &'static str),
    #[error("module {0:?}: {1}")]
    Module(String, ModuleError),
    #[error("module {name:?} violates {}", violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "))]
    Relations { name: String, violations: Vec<Violation> },
}

/// A loaded corpus; modules keep file order.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub qfamily: Arc<QFamily>,
    pub modules: Vec<(String, KlrModule)>,
    pub conv_of: BTreeMap<String, [String; 2]>,
    pub pairs: Vec<[String; 2]>,
    pub triples: Vec<[String; 3]>,
}

impl Corpus {
    pub fn get(&self, name: &str) -> Result<&KlrModule, CorpusError> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m).ok_or_else(|| CorpusError::Unknown(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.modules.iter().map(|(n, _)| n.as_str())
    }

    /// Relation check of every module, keyed by name.
    pub fn check(&self) -> Vec<(String, Vec<Violation>)> {
        self.modules.iter().map(|(n, m)| (n.clone(), check_relations(m).violations)).collect()
    }
}

fn triplets_to_matrix(d: usize, t: &[Triplet]) -> Option<QMatrix> {
    let mut m = QMatrix::zeros(d, d);
    for (i, j, x) in t {
        if *i >= d || *j >= d {
            return None;
        }
        m.set(*i, *j, x.clone());
    }
    Some(m)
}

pub fn matrix_to_triplets(m: &QMatrix) -> Vec<Triplet> {
    m.entries().map(|(i, j, x)| (i, j, x.clone())).collect()
}

fn parse_pair_key(k: &str) -> Option<(Letter, Letter)> {
    let (a, b) = k.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

pub fn qfamily_from_file(f: &CorpusFile) -> Result<QFamily, CorpusError> {
    if f.field != "Q" {
        return Err(CorpusError::Field(f.field.clone()));
    }
    let mut pairs = Vec::new();
    for (k, terms) in &f.q_polys {
        let ij = parse_pair_key(k).ok_or_else(|| CorpusError::PairKey(k.clone()))?;
        let mut p = Poly::zero();
        for (c, [a, b]) in terms {
            let mut mono = [0u16; crate::linalg::poly::NVARS];
            mono[Var::U as usize] = *a;
            mono[Var::V as usize] = *b;
            p.add_term(mono, c.clone());
        }
        pairs.push((ij, p));
    }
    Ok(QFamily::new(f.index_set.clone(), pairs)?)
}

fn explicit_module(q: &Arc<QFamily>, e: &ModuleEntry) -> Result<KlrModule, CorpusError> {
    let missing = |what| CorpusError::Incomplete(e.name.clone(), what);
    let beta = e.beta.clone().ok_or_else(|| missing("missing beta"))?;
    let words = e.words.clone().ok_or_else(|| missing("missing words"))?;
    let d = e.dim.unwrap_or(words.len());
    if d != words.len() {
        return Err(missing("dim differs from the number of words"));
    }
    let mats = |ts: &Option<Vec<Vec<Triplet>>>, count: usize| -> Result<Vec<QMatrix>, CorpusError> {
        let ts = match ts {
            Some(ts) => ts.clone(),
            None if count == 0 => Vec::new(),
            None => return Err(missing("missing generator matrices")),
        };
        ts.iter().map(|t| triplets_to_matrix(d, t).ok_or_else(|| missing("triplet index out of range"))).collect()
    };
    let n = beta.height();
    let x = mats(&e.x, n)?;
    let tau = mats(&e.tau, n.saturating_sub(1))?;
    Rep::new(q.clone(), beta, words, x, tau).map_err(|err| CorpusError::Module(e.name.clone(), err))
}

/// Parse a corpus without checking relations.
pub fn parse_corpus(text: &str) -> Result<Corpus, CorpusError> {
    let file: CorpusFile = serde_json::from_str(text)
        .map_err(|e| CorpusError::Parse { line: e.line(), column: e.column(), msg: e.to_string() })?;
    build_corpus(&file)
}

pub fn build_corpus(file: &CorpusFile) -> Result<Corpus, CorpusError> {
    let q = Arc::new(qfamily_from_file(file)?);
    let mut modules: Vec<(String, KlrModule)> = Vec::new();
    let mut conv_of = BTreeMap::new();
    for e in &file.modules {
        if modules.iter().any(|(n, _)| *n == e.name) {
            return Err(CorpusError::Duplicate(e.name.clone()));
        }
        let m = match (&e.conv_of, &e.words) {
            (Some([a, b]), None) => {
                let find = |n: &str| {
                    modules.iter().find(|(k, _)| k == n).map(|(_, m)| m).ok_or_else(|| CorpusError::Unknown(n.to_string()))
                };
                convolve(find(a)?, find(b)?).map_err(|err| CorpusError::Module(e.name.clone(), err))?
            }
            _ => explicit_module(&q, e)?,
        };
        if let Some(c) = &e.conv_of {
            conv_of.insert(e.name.clone(), c.clone());
        }
        modules.push((e.name.clone(), m));
    }
    let corpus = Corpus { qfamily: q, modules, conv_of, pairs: file.pairs.clone(), triples: file.triples.clone() };
    for name in corpus.pairs.iter().flatten().chain(corpus.triples.iter().flatten()) {
        corpus.get(name)?;
    }
    Ok(corpus)
}

/// Parse a corpus and reject it if any module violates a relation.
pub fn load_corpus(text: &str) -> Result<Corpus, CorpusError> {
    let c = parse_corpus(text)?;
    for (name, violations) in c.check() {
        if !violations.is_empty() {
            return Err(CorpusError::Relations { name, violations });
        }
    }
    Ok(c)
}

/// The explicit file form of a module.
pub fn module_entry(name: &str, m: &KlrModule, conv_of: Option<[String; 2]>) -> ModuleEntry {
    ModuleEntry {
        name: name.to_string(),
        conv_of,
        beta: Some(m.beta().clone()),
        dim: Some(m.dim()),
        words: Some(m.words().to_vec()),
        x: Some(m.xs().iter().map(matrix_to_triplets).collect()),
        tau: Some(m.taus().iter().map(matrix_to_triplets).collect()),
    }
}

/// The file header for a family.
pub fn corpus_file_for(q: &QFamily) -> CorpusFile {
    let mut q_polys = BTreeMap::new();
    for ((i, j), p) in q.pairs() {
        let terms = p.terms().map(|(mono, c)| (c.clone(), [mono[Var::U as usize], mono[Var::V as usize]])).collect();
        q_polys.insert(format!("{i},{j}"), terms);
    }
    CorpusFile { field: "Q".into(), index_set: q.index_set().to_vec(), q_polys, ..Default::default() }
}

#[cfg(test)]
mod tests {
    use super::*;

    const C2: &str = r#"{"field":"Q","index_set":[1,2],"q_polys":{"1,2":[["1",[1,0]],["-1",[0,1]]]},
        "modules":[{"name":"L1","beta":{"1":1},"dim":1,"words":[[1]],"x":[[]],"tau":[]},
                   {"name":"L2","beta":{"2":1},"dim":1,"words":[[2]],"x":[[]],"tau":[]},
                   {"name":"L1L2","conv_of":["L1","L2"]}],
        "pairs":[["L1","L2"]]}"#;

    #[test]
    fn loads_and_round_trips() {
        let c = load_corpus(C2).unwrap();
        assert_eq!(*c.qfamily, *crate::corpus::c2());
        assert_eq!(c.get("L1L2").unwrap().dim(), 2);
        let mut f = corpus_file_for(&c.qfamily);
        f.modules = c.modules.iter().map(|(n, m)| module_entry(n, m, None)).collect();
        let text = serde_json::to_string(&f).unwrap();
        let back = load_corpus(&text).unwrap();
        for ((_, a), (_, b)) in c.modules.iter().zip(&back.modules) {
            assert_eq!(a.xs(), b.xs());
            assert_eq!(a.taus(), b.taus());
            assert_eq!(a.words(), b.words());
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_corpus("{\n\"field\": }"), Err(CorpusError::Parse { line: 2, .. })));
        assert!(matches!(parse_corpus(r#"{"field":"F2","index_set":[1]}"#), Err(CorpusError::Field(_))));
        let unknown = C2.replace(r#"["L1","L2"]}"#, r#"["L1","L9"]}"#);
        assert!(matches!(parse_corpus(&unknown), Err(CorpusError::Unknown(n)) if n == "L9"));
        let bad = r#"{"field":"Q","index_set":[1],"modules":[{"name":"B","beta":{"1":1},"words":[[1]],"x":[[[0,0,"1"]]]}]}"#;
        assert!(parse_corpus(bad).is_ok());
        assert!(matches!(load_corpus(bad), Err(CorpusError::Relations { .. })));
        let empty = r#"{"field":"Q","index_set":[1]}"#;
        assert!(load_corpus(empty).unwrap().modules.is_empty());
    }
}
