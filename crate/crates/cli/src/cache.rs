//! Content-addressed result cache: one file per computed artifact, keyed by
//! a hash of (version, command, arguments), written atomically via
//! write-then-rename.

use std::fs;
use std::path::PathBuf;

use sha2::{Digest, Sha256};

pub const ENV_CACHE_DIR: &str = "GLNCHAR_CACHE_DIR";

pub struct CacheDir {
    dir: Option<PathBuf>,
}

impl CacheDir {
    /// Flag wins over the environment variable; neither disables caching.
    pub fn resolve(flag: Option<PathBuf>) -> CacheDir {
        let dir = flag.or_else(|| std::env::var_os(ENV_CACHE_DIR).map(PathBuf::from));
        CacheDir { dir }
    }

    fn path_for(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    pub fn lookup(&self, key: &str) -> Option<String> {
        fs::read_to_string(self.path_for(key)?).ok()
    }

    /// Best-effort store; cache failures never fail the computation.
    pub fn store(&self, key: &str, contents: &str) {
        let Some(path) = self.path_for(key) else {
            return;
        };
        let Some(parent) = path.parent() else { return };
        if fs::create_dir_all(parent).is_err() {
            return;
        }
        let tmp = parent.join(format!(".{key}.tmp.{}", std::process::id()));
        if fs::write(&tmp, contents).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }
}

/// Hash of version + command descriptor parts.
pub fn key(parts: &[&str]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(env!("CARGO_PKG_VERSION").as_bytes());
    for p in parts {
        hasher.update([0u8]);
        hasher.update(p.as_bytes());
    }
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
