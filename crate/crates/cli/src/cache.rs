//! Persistent result cache for exact completion numbers.
//!
//! The cache is a plain text file, one record per line, tab-separated:
//! canonical graph6, value (`inf` or a number), engine version.  Records
//! are keyed by canonical form only, so isomorphic queries share entries.
//! The file is append-only and tolerant: unreadable lines are skipped with
//! a warning, records from other engine versions are silently ignored, and
//! a later record for the same key wins (there is no compaction).

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use marcello_core::{CanonicalForm, Value};

/// Version tag stamped on every record; records carrying any other tag are
/// treated as absent.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub struct Cache {
    path: PathBuf,
    entries: BTreeMap<String, Value>,
}

impl Cache {
    /// Loads the cache at `path`; a missing file is an empty cache.
    pub fn open(path: &Path) -> Cache {
        let mut entries = BTreeMap::new();
        if let Ok(text) = std::fs::read_to_string(path) {
            for (number, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                match parse_record(line) {
                    Some((key, value, version)) => {
                        if version == VERSION {
                            entries.insert(key, value);
                        }
                    }
                    None => eprintln!(
                        "warning: {}:{}: skipping unreadable cache line",
                        path.display(),
                        number + 1
                    ),
                }
            }
        }
        Cache { path: path.to_path_buf(), entries }
    }

    pub fn get(&self, form: &CanonicalForm) -> Option<Value> {
        self.entries.get(form.as_str()).copied()
    }

    /// Records a value, appending one line to the file immediately.  Write
    /// failures degrade to a warning: the cache is an accelerator, not a
    /// store of record.
    pub fn put(&mut self, form: &CanonicalForm, value: Value) {
        if self.entries.insert(String::from(form.as_str()), value) == Some(value) {
            return;
        }
        let line = format!("{}\t{}\t{}\n", form.as_str(), value, VERSION);
        let appended = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .and_then(|mut file| file.write_all(line.as_bytes()).and_then(|()| file.flush()));
        if let Err(e) = appended {
            eprintln!("warning: could not append to cache {}: {e}", self.path.display());
        }
    }
}

fn parse_record(line: &str) -> Option<(String, Value, String)> {
    let mut fields = line.split('\t');
    let key = fields.next()?.to_string();
    let value = parse_value(fields.next()?)?;
    let version = fields.next()?.to_string();
    if key.is_empty() {
        return None;
    }
    Some((key, value, version))
}

fn parse_value(text: &str) -> Option<Value> {
    if text == "inf" {
        return Some(Value::Infinite);
    }
    text.parse().ok().map(Value::Finite)
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use marcello_core::{canonical_form, generate, Family};

    #[test]
    fn round_trips_through_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("values.tsv");
        let form = canonical_form(&generate(&Family::Path(4)).unwrap());
        let null = canonical_form(&generate(&Family::Null(3)).unwrap());

        let mut cache = Cache::open(&path);
        assert_eq!(cache.get(&form), None);
        cache.put(&form, Value::Finite(1));
        cache.put(&null, Value::Infinite);

        let reloaded = Cache::open(&path);
        assert_eq!(reloaded.get(&form), Some(Value::Finite(1)));
        assert_eq!(reloaded.get(&null), Some(Value::Infinite));
    }

    #[test]
    fn skips_corrupt_and_foreign_version_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("values.tsv");
        let form = canonical_form(&generate(&Family::Cycle(4)).unwrap());
        std::fs::write(
            &path,
            format!(
                "not a record\n{}\t1\t{}\n{}\t7\t0.0.0-ancient\n",
                form.as_str(),
                VERSION,
                form.as_str()
            ),
        )
        .unwrap();
        let cache = Cache::open(&path);
        // The well-formed current record survives; the stale one does not
        // override it (it is ignored, not an error).
        assert_eq!(cache.get(&form), Some(Value::Finite(1)));
    }

    #[test]
    fn repeated_identical_puts_append_once() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("values.tsv");
        let form = canonical_form(&generate(&Family::Path(5)).unwrap());
        let mut cache = Cache::open(&path);
        cache.put(&form, Value::Finite(1));
        cache.put(&form, Value::Finite(1));
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 1);
    }
}
