//! Optional persistence of the rewriting memo tables under `KLR_CACHE_DIR`.

use std::fs;
use std::path::PathBuf;

use klr_core::base::QFamily;
use klr_core::convolution::{export_engines, import_engines, EngineDump};
use sha2::{Digest, Sha256};

fn path_for(q: &QFamily) -> Option<PathBuf> {
    let dir = std::env::var_os("KLR_CACHE_DIR")?;
    let digest = Sha256::digest(q.fingerprint().as_bytes());
    let tag: String = format!("{digest:x}").chars().take(16).collect();
    Some(PathBuf::from(dir).join(format!("pbw-{tag}.json")))
}

/// Preload memo tables for `q`; unreadable or stale files are ignored.
pub fn load(q: &std::sync::Arc<QFamily>) {
    let Some(path) = path_for(q) else { return };
    let Ok(text) = fs::read_to_string(&path) else { return };
    if let Ok(dumps) = serde_json::from_str::<Vec<EngineDump>>(&text) {
        import_engines(q, dumps);
    }
}

/// Write back the memo tables for `q`. Failures only lose the cache.
pub fn store(q: &QFamily) {
    let Some(path) = path_for(q) else { return };
    let fp = q.fingerprint();
    let dumps: Vec<EngineDump> = export_engines().into_iter().filter(|d| d.fingerprint == fp).collect();
    if dumps.is_empty() {
        return;
    }
    let Some(dir) = path.parent() else { return };
    if fs::create_dir_all(dir).is_err() {
        return;
    }
    let tmp = path.with_extension("json.tmp");
    if let Ok(text) = serde_json::to_string(&dumps) {
        if fs::write(&tmp, text).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }
}
