//! Content-addressed report cache: `sha256(module, canonical input, version)` names a
//! file holding the rendered report.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Bumped whenever report contents change for a fixed input.
pub const CODE_VERSION: &str = concat!("eisterms-", env!("CARGO_PKG_VERSION"), "-r1");

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn key(module: &str, input: &str) -> String {
        let mut h = Sha256::new();
        for part in [module, input, CODE_VERSION] {
            h.update((part.len() as u64).to_le_bytes());
            h.update(part.as_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(dir: &Path, key: &str) -> PathBuf {
        dir.join(&key[..2]).join(format!("{key}.json"))
    }

    /// The cached report, or `compute()` stored under the key.
    pub fn get_or_insert(
        &self,
        module: &str,
        input: &str,
        compute: impl FnOnce() -> Result<String, CliError>,
    ) -> Result<String, CliError> {
        let Some(dir) = &self.dir else { return compute() };
        let key = Self::key(module, input);
        let path = Self::path(dir, &key);
        if let Ok(s) = fs::read_to_string(&path) {
            return Ok(s);
        }
        let s = compute()?;
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        // Write then rename so readers never observe a partial file.
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, &s)?;
        fs::rename(&tmp, &path)?;
        Ok(s)
    }
}
