use std::io::Write;
use std::path::{Path, PathBuf};

use super::CliError;
use crate::catdata::{CategoryTable, TableDump, TABLE_FORMAT};
use crate::roots::CatSpec;

/// On-disk store of exact table dumps, one JSON file per
/// `(family, n, k, format version)`. Disabled when no directory is given.
#[derive(Clone, Debug)]
pub struct TableCache {
    dir: Option<PathBuf>,
}

const PREFIX: &str = "table-";

impl TableCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        TableCache { dir }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path_for(&self, spec: &CatSpec) -> Option<PathBuf> {
        let name = format!("{PREFIX}{}-{}-{}-v{TABLE_FORMAT}.json", spec.family(), spec.n(), spec.k());
        self.dir.as_ref().map(|d| d.join(name))
    }

    /// Cached table if present and valid, otherwise a fresh build that is then stored.
    pub fn load_or_build(&self, spec: CatSpec) -> Result<CategoryTable, CliError> {
        let Some(path) = self.path_for(&spec) else {
            return Ok(CategoryTable::build(spec)?);
        };
        if let Some(table) = Self::read(&path, &spec) {
            return Ok(table);
        }
        let table = CategoryTable::build(spec)?;
        self.store(&path, &table)?;
        Ok(table)
    }

    /// Unreadable or stale entries count as misses.
    fn read(path: &Path, spec: &CatSpec) -> Option<CategoryTable> {
        let text = std::fs::read_to_string(path).ok()?;
        let dump: TableDump = serde_json::from_str(&text).ok()?;
        if dump.spec != *spec {
            return None;
        }
        CategoryTable::from_dump(dump).ok()
    }

    fn store(&self, path: &Path, table: &CategoryTable) -> Result<(), CliError> {
        let dir = path.parent().expect("cache paths live in the cache directory");
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let text = serde_json::to_string(&table.to_dump()).map_err(|e| CliError::Usage(e.to_string()))?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
        tmp.write_all(text.as_bytes()).map_err(|e| CliError::io(tmp.path(), e))?;
        tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
        Ok(())
    }

    /// Deletes every cached table; returns how many were removed.
    pub fn clear(&self) -> Result<usize, CliError> {
        let Some(dir) = &self.dir else {
            return Err(CliError::Usage("no cache directory (use --cache-dir or OC_CACHE_DIR)".into()));
        };
        let entries = match std::fs::read_dir(dir) {
            Ok(entries) => entries,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(CliError::io(dir, e)),
        };
        let mut removed = 0;
        for entry in entries {
            let entry = entry.map_err(|e| CliError::io(dir, e))?;
            let name = entry.file_name();
            let name = name.to_string_lossy();
            if name.starts_with(PREFIX) && name.ends_with(".json") {
                std::fs::remove_file(entry.path()).map_err(|e| CliError::io(&entry.path(), e))?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_clear() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(Some(dir.path().to_path_buf()));
        let spec = CatSpec::b(1, 1).unwrap();
        let fresh = cache.load_or_build(spec).unwrap();
        let path = cache.path_for(&spec).unwrap();
        assert!(path.exists());
        let cached = cache.load_or_build(spec).unwrap();
        assert_eq!(cached.to_dump(), fresh.to_dump());
        std::fs::write(&path, "{ not json").unwrap();
        assert_eq!(cache.load_or_build(spec).unwrap().to_dump(), fresh.to_dump());
        assert_eq!(cache.clear().unwrap(), 1);
        assert!(!path.exists());
    }

    #[test]
    fn disabled_cache() {
        let cache = TableCache::new(None);
        assert!(cache.path_for(&CatSpec::b(1, 1).unwrap()).is_none());
        assert!(cache.clear().is_err());
    }
}
