use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use klr_core::convolution::{check_tilde_relations, convolve};
use klr_core::io::{load_corpus, module_entry, parse_corpus, Corpus};
use klr_core::linalg::{QMatrix, Subspace};
use klr_core::module::{check_relations, KlrModule};
use klr_core::rmatrix::{check_hexagons, check_intertwiner_laws, check_z1z2_dependence, renormalized_r, renormalized_r_rev, RMatrixError};
use klr_core::structure::{verify_main_theorem, TheoremError};

use crate::{cache, Cli, Command};

pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

struct Loaded {
    path: PathBuf,
    corpus: Corpus,
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn corpus_hash(texts: &[String]) -> String {
    let mut h = Sha256::new();
    for t in texts {
        h.update((t.len() as u64).to_le_bytes());
        h.update(t.as_bytes());
    }
    format!("{:x}", h.finalize())
}

fn load_all(paths: &[PathBuf], strict: bool) -> Result<(Vec<Loaded>, String), String> {
    if paths.is_empty() {
        return Err("no --corpus given".into());
    }
    let mut texts = Vec::new();
    let mut out = Vec::new();
    for p in paths {
        let text = read(p)?;
        let corpus = if strict { load_corpus(&text) } else { parse_corpus(&text) }.map_err(|e| format!("{}: {e}", p.display()))?;
        cache::load(&corpus.qfamily);
        out.push(Loaded { path: p.clone(), corpus });
        texts.push(text);
    }
    Ok((out, corpus_hash(&texts)))
}

fn store_caches(loaded: &[Loaded]) {
    for l in loaded {
        cache::store(&l.corpus.qfamily);
    }
}

fn render(command: &str, hash: &str, mut body: serde_json::Map<String, Value>, passed: bool) -> String {
    body.insert("command".into(), json!(command));
    body.insert("corpus_hash".into(), json!(hash));
    body.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    body.insert("passed".into(), json!(passed));
    serde_json::to_string_pretty(&Value::Object(body)).expect("json values serialize")
}

fn find_pair<'a>(loaded: &'a [Loaded], a: &str, b: &str) -> Result<(&'a Loaded, &'a KlrModule, &'a KlrModule), String> {
    for l in loaded {
        if let (Ok(x), Ok(y)) = (l.corpus.get(a), l.corpus.get(b)) {
            return Ok((l, x, y));
        }
    }
    Err(format!("no corpus defines both {a:?} and {b:?}"))
}

fn dense(m: &QMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|x| json!(x.to_string())).collect())).collect())
}

fn image_words(target: &KlrModule, r: &QMatrix) -> Vec<Value> {
    let im = Subspace::image(r);
    let mut words: Vec<_> = target
        .word_blocks()
        .into_iter()
        .filter(|(_, idx)| im.basis().iter().any(|v| idx.iter().any(|&i| !v[i].is_zero())))
        .map(|(w, _)| w)
        .collect();
    words.sort();
    words.into_iter().map(|w| json!(w)).collect()
}

/// The inner `Err` is a mathematical failure; the outer one a precondition problem.
fn rmatrix_body(a: &KlrModule, b: &KlrModule) -> Result<Result<Value, String>, RMatrixError> {
    let r = match renormalized_r(a, b) {
        Ok(r) => r,
        Err(e @ (RMatrixError::Inconsistent | RMatrixError::ZeroMap)) => return Ok(Err(e.to_string())),
        Err(e) => return Err(e),
    };
    let t = match renormalized_r_rev(b, a) {
        Ok(r) => r.order,
        Err(e @ (RMatrixError::Inconsistent | RMatrixError::ZeroMap)) => return Ok(Err(e.to_string())),
        Err(e) => return Err(e),
    };
    let ba = convolve(b, a)?;
    Ok(Ok(json!({
        "s": r.order,
        "t": t,
        "r_matrix": dense(&r.matrix),
        "rank": Subspace::image(&r.matrix).dim(),
        "image_words": image_words(&ba, &r.matrix),
    })))
}

fn verify_pair(m: &KlrModule, n: &KlrModule) -> (Value, bool) {
    let q = m.qfamily();
    if !q.is_symmetric(&m.beta().add(n.beta())) {
        return (json!({"status": "skipped: not symmetric"}), true);
    }
    match verify_main_theorem(m, n) {
        Ok(rep) => {
            let ok = rep.passed();
            (json!({"status": if ok { "pass" } else { "fail" }, "report": rep}), ok)
        }
        Err(TheoremError::NotSymmetric) => (json!({"status": "skipped: not symmetric"}), true),
        Err(TheoremError::MNotSimple) => (json!({"status": "precondition: m not simple"}), true),
        Err(TheoremError::RNotScalar) => (json!({"status": "precondition: not real"}), true),
        Err(TheoremError::NNotSimple) => (json!({"status": "precondition: n not simple"}), true),
        Err(e) => (json!({"status": "error", "detail": e.to_string()}), false),
    }
}

fn pair_key(corpus: &Path, a: &str, b: &str) -> (String, String, String) {
    (corpus.display().to_string(), a.to_string(), b.to_string())
}

pub fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Check => {
            let (loaded, hash) = load_all(&cli.corpus, false)?;
            let mut passed = true;
            let mut rows = Vec::new();
            for l in &loaded {
                for (name, violations) in l.corpus.check() {
                    passed &= violations.is_empty();
                    rows.push(json!({
                        "corpus": l.path.display().to_string(),
                        "name": name,
                        "dim": l.corpus.get(&name).map(|m| m.dim()).unwrap_or(0),
                        "passed": violations.is_empty(),
                        "violations": violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    }));
                }
            }
            let mut body = serde_json::Map::new();
            body.insert("modules".into(), Value::Array(rows));
            Ok(Outcome { output: render("check", &hash, body, passed), passed })
        }
        Command::Conv { a, b, out } => {
            let (loaded, _) = load_all(&cli.corpus, true)?;
            let (_, x, y) = find_pair(&loaded, a, b)?;
            let c = convolve(x, y).map_err(|e| e.to_string())?;
            let entry = module_entry(&format!("{a}_{b}"), &c, Some([a.clone(), b.clone()]));
            let text = serde_json::to_string_pretty(&serde_json::to_value(&entry).expect("entry serializes")).expect("json");
            store_caches(&loaded);
            match out {
                Some(p) => {
                    fs::write(p, text + "\n").map_err(|e| format!("{}: {e}", p.display()))?;
                    Ok(Outcome { output: String::new(), passed: true })
                }
                None => Ok(Outcome { output: text, passed: true }),
            }
        }
        Command::Rmatrix { a, b } => {
            let (loaded, hash) = load_all(&cli.corpus, true)?;
            let (_, x, y) = find_pair(&loaded, a, b)?;
            let res = rmatrix_body(x, y).map_err(|e| format!("({a}, {b}): {e}"))?;
            store_caches(&loaded);
            let mut body = serde_json::Map::new();
            body.insert("pair".into(), json!([a, b]));
            let passed = res.is_ok();
            match res {
                Ok(Value::Object(m)) => body.extend(m),
                Ok(_) => unreachable!("rmatrix body is an object"),
                Err(e) => {
                    body.insert("error".into(), json!(e));
                }
            }
            Ok(Outcome { output: render("rmatrix", &hash, body, passed), passed })
        }
        Command::Verify { m, n, all_pairs } => {
            let (loaded, hash) = load_all(&cli.corpus, true)?;
            let mut jobs = Vec::new();
            if *all_pairs {
                for l in &loaded {
                    for [a, b] in &l.corpus.pairs {
                        jobs.push((l, a.clone(), b.clone()));
                    }
                }
            } else {
                let (Some(a), Some(b)) = (m, n) else {
                    return Err("verify needs two module names or --all-pairs".into());
                };
                let (l, _, _) = find_pair(&loaded, a, b)?;
                jobs.push((l, a.clone(), b.clone()));
            }
            jobs.sort_by_key(|(l, a, b)| pair_key(&l.path, a, b));
            let mut passed = true;
            let mut rows = Vec::new();
            for (l, a, b) in jobs {
                let (mut v, ok) = verify_pair(l.corpus.get(&a).expect("checked"), l.corpus.get(&b).expect("checked"));
                passed &= ok;
                v["pair"] = json!([a, b]);
                v["corpus"] = json!(l.path.display().to_string());
                rows.push(v);
            }
            store_caches(&loaded);
            let mut body = serde_json::Map::new();
            body.insert("results".into(), Value::Array(rows));
            Ok(Outcome { output: render("verify", &hash, body, passed), passed })
        }
        Command::Report => {
            let (loaded, hash) = load_all(&cli.corpus, true)?;
            let mut passed = true;
            let mut sections = Vec::new();
            for l in &loaded {
                let (v, ok) = report_corpus(l);
                passed &= ok;
                sections.push(v);
            }
            store_caches(&loaded);
            let mut body = serde_json::Map::new();
            body.insert("corpora".into(), Value::Array(sections));
            Ok(Outcome { output: render("report", &hash, body, passed), passed })
        }
    }
}

fn report_corpus(l: &Loaded) -> (Value, bool) {
    let c = &l.corpus;
    let mut passed = true;
    let relations: Vec<Value> = c
        .check()
        .into_iter()
        .map(|(name, v)| {
            passed &= v.is_empty();
            json!({"name": name, "passed": v.is_empty()})
        })
        .collect();

    let mut pairs = c.pairs.clone();
    pairs.sort();
    let mut pair_rows = Vec::new();
    for [a, b] in &pairs {
        let (x, y) = (c.get(a).expect("checked"), c.get(b).expect("checked"));
        let mut row = serde_json::Map::new();
        row.insert("pair".into(), json!([a, b]));
        let conv = convolve(x, y).expect("same family");
        let laws = check_intertwiner_laws(&conv).passed() && check_relations(&conv).passed();
        passed &= laws;
        row.insert("intertwiner_laws".into(), json!(laws));
        if c.qfamily.is_symmetric(&x.beta().add(y.beta())) {
            match rmatrix_body(x, y) {
                Ok(Ok(v)) => {
                    row.insert("rmatrix".into(), json!({"s": v["s"], "t": v["t"], "rank": v["rank"]}));
                }
                Ok(Err(e)) => {
                    passed = false;
                    row.insert("rmatrix".into(), json!({"error": e}));
                }
                Err(e) => {
                    passed = false;
                    row.insert("rmatrix".into(), json!({"error": e.to_string()}));
                }
            }
            let tilde = check_tilde_relations(&conv).map(|r| r.passed()).unwrap_or(false);
            let z1z2 = check_z1z2_dependence(x, y).unwrap_or(false);
            passed &= tilde && z1z2;
            row.insert("tilde_relations".into(), json!(tilde));
            row.insert("z1z2".into(), json!(z1z2));
        }
        let (v, ok) = verify_pair(x, y);
        passed &= ok;
        row.insert("verify".into(), v);
        pair_rows.push(Value::Object(row));
    }

    let mut triples = c.triples.clone();
    triples.sort();
    let mut triple_rows = Vec::new();
    for [a, b, d] in &triples {
        let h = check_hexagons(c.get(a).expect("checked"), c.get(b).expect("checked"), c.get(d).expect("checked"));
        let v = match h {
            Ok(h) => {
                passed &= h.passed();
                json!({"triple": [a, b, d], "left": h.left, "right": h.right})
            }
            Err(e) => {
                passed = false;
                json!({"triple": [a, b, d], "error": e.to_string()})
            }
        };
        triple_rows.push(v);
    }
    let v = json!({
        "corpus": l.path.display().to_string(),
        "relations": relations,
        "pairs": pair_rows,
        "hexagons": triple_rows,
        "passed": passed,
    });
    (v, passed)
}
