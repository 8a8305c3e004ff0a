//! On-disk cache of normal forms, keyed by a hash of the Coxeter matrix.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use coxeter_hecke::{CoxeterMatrix, CoxeterSystem};
use log::{debug, warn};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const FORMAT: &str = "coxhecke-nf-cache/1";

type Entries = Vec<(Vec<u8>, Vec<u8>)>;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: String,
    matrix_hash: String,
    rank: usize,
    entries: Entries,
    checksum: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn matrix_hash(m: &CoxeterMatrix) -> String {
    sha256_hex(serde_json::to_string(&m.rows()).expect("rows serialize").as_bytes())
}

fn entries_checksum(entries: &Entries) -> String {
    sha256_hex(&serde_json::to_vec(entries).expect("entries serialize"))
}

pub struct NormalFormCache {
    path: PathBuf,
    hash: String,
}

impl NormalFormCache {
    pub fn new(dir: &Path, m: &CoxeterMatrix) -> Self {
        let hash = matrix_hash(m);
        NormalFormCache { path: dir.join(format!("nf-{hash}.json")), hash }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Seeds `sys` from disk. A missing file is silent; an unusable one is
    /// deleted with a warning.
    pub fn load(&self, sys: &CoxeterSystem) -> usize {
        let text = match fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) => {
                debug!("no cache at {}: {e}", self.path.display());
                return 0;
            }
        };
        match self.parse(&text, sys.rank()) {
            Ok(entries) => {
                let n = entries.len();
                sys.seed_memo(entries);
                debug!("loaded {n} cached normal forms from {}", self.path.display());
                n
            }
            Err(reason) => {
                warn!("discarding cache {}: {reason}", self.path.display());
                if let Err(e) = fs::remove_file(&self.path) {
                    warn!("could not remove {}: {e}", self.path.display());
                }
                0
            }
        }
    }

    fn parse(&self, text: &str, rank: usize) -> Result<Entries, String> {
        let file: CacheFile = serde_json::from_str(text).map_err(|e| format!("unreadable ({e})"))?;
        if file.format != FORMAT {
            return Err(format!("unknown format {:?}", file.format));
        }
        if file.matrix_hash != self.hash || file.rank != rank {
            return Err("written for a different Coxeter matrix".into());
        }
        if entries_checksum(&file.entries) != file.checksum {
            return Err("checksum mismatch".into());
        }
        let plausible = |(k, v): &(Vec<u8>, Vec<u8>)| {
            k.iter().chain(v).all(|&s| usize::from(s) < rank)
                && v.len() <= k.len()
                && (k.len() - v.len()) % 2 == 0
                && v.windows(2).all(|p| p[0] != p[1])
        };
        if !file.entries.iter().all(plausible) {
            return Err("entry is not a plausible normal form".into());
        }
        Ok(file.entries)
    }

    /// Writes the memo of `sys` atomically. Failures are logged, not fatal.
    pub fn store(&self, sys: &CoxeterSystem) {
        if let Err(e) = self.try_store(sys) {
            warn!("could not write cache {}: {e}", self.path.display());
        }
    }

    fn try_store(&self, sys: &CoxeterSystem) -> std::io::Result<()> {
        let dir = self.path.parent().unwrap_or(Path::new("."));
        fs::create_dir_all(dir)?;
        let entries = sys.memo_entries();
        let file = CacheFile {
            format: FORMAT.into(),
            matrix_hash: self.hash.clone(),
            rank: sys.rank(),
            checksum: entries_checksum(&entries),
            entries,
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        serde_json::to_writer(&mut tmp, &file)?;
        tmp.flush()?;
        tmp.persist(&self.path).map_err(|e| e.error)?;
        Ok(())
    }
}
