//! Line-based text persistence for count tables.
//!
//! ```text
//! #gluecount-cache v1
//! g=0;ns=1,1;count=1
//! g=0;ns=2,1;count=2
//! ```
//!
//! Records are sorted by `(g, ns)` so identical tables serialize to
//! identical bytes.

use std::collections::btree_map::{self, BTreeMap};
use std::fs;
use std::io::ErrorKind;
use std::path::Path;

use super::{count_recursive, MemoKey};
use crate::{BigCount, Error, Result};

pub const CACHE_HEADER: &str = "#gluecount-cache v1";
const HEADER_PREFIX: &str = "#gluecount-cache ";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountTable {
    entries: BTreeMap<MemoKey, BigCount>,
}

impl CountTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &MemoKey) -> Option<&BigCount> {
        self.entries.get(key)
    }

    pub fn insert(&mut self, key: MemoKey, value: BigCount) -> Option<BigCount> {
        self.entries.insert(key, value)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, MemoKey, BigCount> {
        self.entries.iter()
    }

    /// Reads a table; a missing file is an empty table.
    pub fn load(path: &Path) -> Result<Self> {
        let text = match fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(Self::new()),
            Err(e) => return Err(e.into()),
        };
        Self::parse(&text, path)
    }

    /// Like [`CountTable::load`], then recomputes every entry from an empty
    /// memo and rejects the file on the first disagreement.
    pub fn load_verified(path: &Path) -> Result<Self> {
        let table = Self::load(path)?;
        let mut fresh = CountTable::new();
        for (key, stored) in table.iter() {
            let expected = count_recursive(&key.signature()?, &mut fresh)?;
            if *stored != expected {
                return Err(Error::CacheMismatch {
                    path: path.to_owned(),
                    key: key.to_string(),
                    stored: stored.to_string(),
                    expected: expected.to_string(),
                });
            }
        }
        Ok(table)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(32 * (self.len() + 1));
        out.push_str(CACHE_HEADER);
        out.push('\n');
        for (key, count) in &self.entries {
            out.push_str(&format!("{key};count={count}\n"));
        }
        out
    }

    fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut table = CountTable::new();
        let mut lines = text.lines().enumerate();
        let Some((_, header)) = lines.next() else {
            return Ok(table);
        };
        if header != CACHE_HEADER {
            return Err(match header.strip_prefix(HEADER_PREFIX) {
                Some(_) => Error::CacheVersion {
                    path: path.to_owned(),
                    found: header.to_owned(),
                },
                None => Error::CacheParse {
                    path: path.to_owned(),
                    line: 1,
                    msg: format!("expected header {CACHE_HEADER:?}"),
                },
            });
        }
        for (idx, line) in lines {
            if line.is_empty() {
                continue;
            }
            let (key, count) = parse_record(line).map_err(|msg| Error::CacheParse {
                path: path.to_owned(),
                line: idx + 1,
                msg,
            })?;
            table.insert(key, count);
        }
        Ok(table)
    }
}

fn parse_record(line: &str) -> std::result::Result<(MemoKey, BigCount), String> {
    let mut fields = line.split(';');
    let mut field = |name: &str| -> std::result::Result<&str, String> {
        fields
            .next()
            .and_then(|f| f.strip_prefix(name))
            .and_then(|f| f.strip_prefix('='))
            .ok_or_else(|| format!("expected field `{name}=` in {line:?}"))
    };
    let genus: usize = field("g")?.parse().map_err(|e| format!("bad genus: {e}"))?;
    let sizes = field("ns")?
        .split(',')
        .map(|n| {
            n.parse::<usize>()
                .map_err(|e| format!("bad boundary size {n:?}: {e}"))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let count: BigCount = field("count")?
        .parse()
        .map_err(|e| format!("bad count: {e}"))?;
    if fields.next().is_some() {
        return Err(format!("trailing fields in {line:?}"));
    }
    if sizes.windows(2).any(|w| w[0] < w[1]) {
        return Err("boundary sizes must be non-increasing".into());
    }
    if sizes.iter().all(|&n| n == 0) {
        return Err("signature needs at least one boundary edge".into());
    }
    Ok((MemoKey::new(genus, sizes), count))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &tempfile::TempDir, body: &str) -> std::path::PathBuf {
        let path = dir.path().join("cache.txt");
        fs::write(&path, body).unwrap();
        path
    }

    #[test]
    fn missing_and_empty_files() {
        let dir = tempfile::tempdir().unwrap();
        assert!(CountTable::load(&dir.path().join("nope"))
            .unwrap()
            .is_empty());
        let path = write(&dir, "");
        assert!(CountTable::load(&path).unwrap().is_empty());
    }

    #[test]
    fn one_record() {
        let dir = tempfile::tempdir().unwrap();
        let path = write(&dir, "#gluecount-cache v1\ng=0;ns=1,1;count=1\n");
        let table = CountTable::load(&path).unwrap();
        assert_eq!(table.len(), 1);
        assert_eq!(table.get(&MemoKey::new(0, vec![1, 1])).unwrap(), &1);
    }

    #[test]
    fn verify_mode_catches_wrong_count() {
        let dir = tempfile::tempdir().unwrap();
        let path = write(&dir, "#gluecount-cache v1\ng=0;ns=1,1;count=2\n");
        assert!(CountTable::load(&path).is_ok());
        assert!(matches!(
            CountTable::load_verified(&path),
            Err(Error::CacheMismatch { .. })
        ));
    }

    #[test]
    fn rejects_other_versions_and_garbage() {
        let dir = tempfile::tempdir().unwrap();
        let path = write(&dir, "#gluecount-cache v2\n");
        assert!(matches!(
            CountTable::load(&path),
            Err(Error::CacheVersion { .. })
        ));

        let path = write(
            &dir,
            "#gluecount-cache v1\ng=0;ns=1,1;count=1\ng=x;ns=1;count=1\n",
        );
        match CountTable::load(&path) {
            Err(Error::CacheParse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }

        let path = write(&dir, "#gluecount-cache v1\ng=0;ns=1,2;count=2\n");
        assert!(matches!(
            CountTable::load(&path),
            Err(Error::CacheParse { line: 2, .. })
        ));

        let path = write(&dir, "g=0;ns=1;count=1\n");
        assert!(matches!(
            CountTable::load(&path),
            Err(Error::CacheParse { line: 1, .. })
        ));
    }

    #[test]
    fn save_formats() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.txt");
        let mut table = CountTable::new();
        table.save(&path).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "#gluecount-cache v1\n");

        table.insert(MemoKey::new(1, vec![1, 2]), BigCount::from(7));
        table.save(&path).unwrap();
        assert_eq!(
            fs::read_to_string(&path).unwrap(),
            "#gluecount-cache v1\ng=1;ns=2,1;count=7\n"
        );
    }

    #[test]
    fn hundred_entry_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.txt");
        let mut table = CountTable::new();
        for g in 0..4 {
            for a in 1..6 {
                for b in 0..5 {
                    table.insert(
                        MemoKey::new(g, vec![a + 5, b]),
                        BigCount::from((g * 1000 + a * 10 + b) as u64 * 1_000_000_007),
                    );
                }
            }
        }
        assert_eq!(table.len(), 100);
        table.save(&path).unwrap();
        let first = fs::read(&path).unwrap();
        let back = CountTable::load(&path).unwrap();
        assert_eq!(back, table);
        back.save(&path).unwrap();
        assert_eq!(fs::read(&path).unwrap(), first);
    }
}
