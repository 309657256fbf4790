//! Append-only JSONL store of verification results, keyed by canonical graph
//! hash plus tool version and convention switches so stale entries are never
//! reused across versions or conventions.

use crate::families::LadderConvention;
use crate::verifier::{Mode, ReflexivityReport};
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const STORE_ENV: &str = "REFLEX_STORE";
pub const DEFAULT_STORE: &str = "./reflex-store.jsonl";

#[derive(Debug, Error)]
pub enum StoreError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("store line {0} is not valid JSON: {1}")]
    Corrupt(usize, serde_json::Error),
}

/// One stored verdict. Exactly one JSON line per record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub graph_hash: String,
    /// Family descriptor as given on the command line, when known.
    pub family: Option<String>,
    pub report: ReflexivityReport,
    /// Seconds since the Unix epoch at write time.
    pub timestamp: u64,
    pub tool_version: String,
    pub ladder_convention: LadderConvention,
    pub mode: Mode,
}

pub struct Store {
    path: PathBuf,
}

impl Store {
    /// Opens the store at `path`, or at `$REFLEX_STORE` (default
    /// `./reflex-store.jsonl`) when absent. The file is created lazily.
    pub fn open(path: Option<&Path>) -> Store {
        let path = path.map(Path::to_path_buf).unwrap_or_else(|| {
            std::env::var_os(STORE_ENV)
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from(DEFAULT_STORE))
        });
        Store { path }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Appends one record as a single write of one full line, so concurrent
    /// appends never interleave partial lines.
    pub fn append(&self, record: &RunRecord) -> Result<(), StoreError> {
        let mut line = serde_json::to_string(record).expect("record serializes");
        line.push('\n');
        let mut file = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        file.write_all(line.as_bytes())?;
        Ok(())
    }

    /// All records, in file order.
    pub fn records(&self) -> Result<Vec<RunRecord>, StoreError> {
        let text = match std::fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        text.lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| serde_json::from_str(l).map_err(|e| StoreError::Corrupt(i + 1, e)))
            .collect()
    }

    /// The latest verdict for this key (last writer wins), only when version,
    /// convention, and mode all match.
    pub fn lookup(
        &self,
        graph_hash: &str,
        tool_version: &str,
        convention: LadderConvention,
        mode: Mode,
    ) -> Result<Option<RunRecord>, StoreError> {
        Ok(self
            .records()?
            .into_iter()
            .rev()
            .find(|r| {
                r.graph_hash == graph_hash
                    && r.tool_version == tool_version
                    && r.ladder_convention == convention
                    && r.mode == mode
            }))
    }
}

pub fn now_unix() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

pub fn tool_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}
