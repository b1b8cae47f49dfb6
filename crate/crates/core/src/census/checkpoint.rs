use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::counters::Counters;
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// Write through a temporary file in the same directory and rename it
/// into place, so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub format_version: u32,
    pub config_hash: String,
    pub completed_shard_ids: Vec<usize>,
    pub partial_counters: Counters,
    pub shard_digests: BTreeMap<usize, String>,
}

impl Checkpoint {
    pub fn new(config_hash: String) -> Self {
        Checkpoint {
            format_version: FORMAT_VERSION,
            config_hash,
            completed_shard_ids: Vec::new(),
            partial_counters: Counters::default(),
            shard_digests: BTreeMap::new(),
        }
    }

    pub fn record(&mut self, shard: usize, counters: &Counters) {
        self.partial_counters.merge(counters);
        self.shard_digests.insert(shard, counters.digest());
        self.completed_shard_ids.push(shard);
        self.completed_shard_ids.sort_unstable();
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("checkpoint serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cp: Checkpoint =
            serde_json::from_str(text).map_err(|e| Error::Checkpoint(format!("corrupt checkpoint: {e}")))?;
        if cp.format_version != FORMAT_VERSION {
            return Err(Error::Checkpoint(format!(
                "format version {} is not the supported version {FORMAT_VERSION}",
                cp.format_version
            )));
        }
        let mut ids = cp.completed_shard_ids.clone();
        ids.dedup();
        if ids.len() != cp.completed_shard_ids.len() || ids.len() != cp.shard_digests.len() {
            return Err(Error::Checkpoint("completed shard list is inconsistent".into()));
        }
        Ok(cp)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_json().as_bytes())
    }

    /// Load and check that the checkpoint belongs to the given configuration.
    pub fn load(path: &Path, expected_hash: &str) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let cp = Self::from_json(&text)?;
        if cp.config_hash != expected_hash {
            return Err(Error::Checkpoint(format!(
                "{} was written for config {}, this run is config {expected_hash}",
                path.display(),
                cp.config_hash
            )));
        }
        Ok(cp)
    }
}
