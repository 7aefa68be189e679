//! On-disk cache of computed profiles.
//!
//! Layout: `<root>/<fingerprint>/<kind>-<params>.json`. Entries carry the
//! schema version; an entry written under another schema is treated as
//! absent. An entry whose recorded fingerprint, kind or params disagree with
//! its path is corrupt.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{GroupError, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone)]
pub struct ProfileStore {
    root: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    schema: u32,
    fingerprint: String,
    kind: String,
    params: String,
    payload: Value,
}

fn sanitize(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.') { c } else { '_' })
        .collect()
}

impl ProfileStore {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path_for(&self, fingerprint: &str, kind: &str, params: &str) -> PathBuf {
        self.root
            .join(sanitize(fingerprint))
            .join(format!("{}-{}.json", sanitize(kind), sanitize(params)))
    }

    /// Writes through a temporary file and a rename, so readers never see a
    /// partial entry.
    pub fn store<T: Serialize>(&self, fingerprint: &str, kind: &str, params: &str, value: &T) -> Result<PathBuf> {
        let path = self.path_for(fingerprint, kind, params);
        let dir = path.parent().expect("entry has a parent");
        std::fs::create_dir_all(dir)?;
        let envelope = Envelope {
            schema: SCHEMA_VERSION,
            fingerprint: fingerprint.to_string(),
            kind: kind.to_string(),
            params: params.to_string(),
            payload: serde_json::to_value(value)?,
        };
        let text = serde_json::to_string_pretty(&envelope)?;
        let tmp = dir.join(format!(
            ".{}.{}.tmp",
            path.file_name().and_then(|n| n.to_str()).unwrap_or("entry"),
            std::process::id()
        ));
        std::fs::write(&tmp, text)?;
        std::fs::rename(&tmp, &path)?;
        Ok(path)
    }

    pub fn load<T: DeserializeOwned>(&self, fingerprint: &str, kind: &str, params: &str) -> Result<Option<T>> {
        let path = self.path_for(fingerprint, kind, params);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let corrupt = |reason: String| GroupError::CorruptCache {
            path: path.display().to_string(),
            reason,
        };
        let envelope: Envelope = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
        if envelope.schema != SCHEMA_VERSION {
            return Ok(None);
        }
        if envelope.fingerprint != fingerprint || envelope.kind != kind || envelope.params != params {
            return Err(corrupt(format!(
                "entry records {}/{}/{}",
                envelope.fingerprint, envelope.kind, envelope.params
            )));
        }
        serde_json::from_value(envelope.payload).map(Some).map_err(|e| corrupt(e.to_string()))
    }

    /// Loads the entry, or computes and stores it.
    pub fn get_or_compute<T, F>(&self, fingerprint: &str, kind: &str, params: &str, compute: F) -> Result<T>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        if let Some(v) = self.load(fingerprint, kind, params)? {
            return Ok(v);
        }
        let v = compute()?;
        self.store(fingerprint, kind, params, &v)?;
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_entry_is_none() {
        let dir = tempfile::tempdir().unwrap();
        let store = ProfileStore::new(dir.path());
        assert!(store.load::<u32>("abc", "k", "p").unwrap().is_none());
    }

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let store = ProfileStore::new(dir.path());
        let path = store.store("abc", "nil", "x-3", &vec![1, 2, 3]).unwrap();
        assert_eq!(store.load::<Vec<u32>>("abc", "nil", "x-3").unwrap(), Some(vec![1, 2, 3]));

        let text = std::fs::read_to_string(&path).unwrap().replace("\"abc\"", "\"abd\"");
        std::fs::write(&path, text).unwrap();
        assert!(matches!(
            store.load::<Vec<u32>>("abc", "nil", "x-3"),
            Err(GroupError::CorruptCache { .. })
        ));
    }

    #[test]
    fn other_schema_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let store = ProfileStore::new(dir.path());
        let path = store.store("abc", "k", "p", &5u32).unwrap();
        let text = std::fs::read_to_string(&path)
            .unwrap()
            .replace(&format!("\"schema\": {SCHEMA_VERSION}"), "\"schema\": 999");
        std::fs::write(&path, text).unwrap();
        assert_eq!(store.load::<u32>("abc", "k", "p").unwrap(), None);
    }
}
