//! Run records, CSV side files, and golden-value tables.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: &str = "v1";

/// Tabular payload written next to the JSON record as CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema: String,
    pub tool_version: String,
    pub command: String,
    pub config: Value,
    pub seed: u64,
    /// RFC 3339 timestamps.
    pub started: String,
    pub finished: String,
    pub payload: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl RunRecord {
    /// A record stamped with the current time as its start.
    pub fn begin(command: &str, config: Value, seed: u64) -> Self {
        let now = now();
        RunRecord {
            schema: SCHEMA_VERSION.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config,
            seed,
            started: now.clone(),
            finished: now,
            payload: Value::Null,
            table: None,
            warnings: Vec::new(),
        }
    }

    pub fn finish(mut self, payload: Value) -> Self {
        self.payload = payload;
        self.finished = now();
        self
    }
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

/// Path of the CSV side file for a record at `path`.
pub fn table_path(path: &Path) -> PathBuf {
    path.with_extension("csv")
}

fn parent_dir(path: &Path) -> Result<PathBuf> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    if !dir.is_dir() {
        return Err(Error::io(
            &dir,
            std::io::Error::new(std::io::ErrorKind::NotFound, "output directory does not exist"),
        ));
    }
    Ok(dir)
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = parent_dir(path)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(|e| Error::io(&dir, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

pub fn table_to_csv(table: &Table) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.header).map_err(|e| Error::Parse(e.to_string()))?;
    for r in &table.rows {
        w.write_record(r).map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// JSON record at `path`; a table payload also goes to [`table_path`].
pub fn write_run(record: &RunRecord, path: &Path) -> Result<()> {
    let json = serde_json::to_vec_pretty(record).map_err(|e| Error::Json {
        path: path.to_path_buf(),
        source: e,
    })?;
    if let Some(t) = &record.table {
        write_atomic(&table_path(path), table_to_csv(t)?.as_bytes())?;
    }
    write_atomic(path, &json)
}

pub fn read_run(path: &Path) -> Result<RunRecord> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let record: RunRecord = serde_json::from_str(&text).map_err(|e| Error::Json {
        path: path.to_path_buf(),
        source: e,
    })?;
    if record.schema != SCHEMA_VERSION {
        return Err(Error::Schema {
            expected: SCHEMA_VERSION.into(),
            found: record.schema,
        });
    }
    Ok(record)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GoldenValue {
    Scalar(f64),
    Vector(Vec<f64>),
}

impl GoldenValue {
    pub fn as_scalar(&self) -> Option<f64> {
        match self {
            GoldenValue::Scalar(v) => Some(*v),
            GoldenValue::Vector(_) => None,
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        match self {
            GoldenValue::Scalar(v) => std::slice::from_ref(v),
            GoldenValue::Vector(v) => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoldenEntry {
    pub check: String,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
    pub value: GoldenValue,
    pub tolerance: f64,
    #[serde(default)]
    pub provenance: Option<String>,
}

#[derive(Deserialize)]
struct GoldenFile {
    schema: Option<String>,
    #[serde(default)]
    entries: Vec<GoldenEntry>,
}

/// Golden values keyed by `(check, canonical params JSON)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GoldenTable {
    pub entries: BTreeMap<(String, String), GoldenEntry>,
    pub warnings: Vec<String>,
}

fn params_key(params: &BTreeMap<String, Value>) -> String {
    serde_json::to_string(params).expect("maps of JSON values serialize")
}

impl GoldenTable {
    pub fn get(&self, check: &str, params: &[(&str, Value)]) -> Option<&GoldenEntry> {
        let map: BTreeMap<String, Value> = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        self.entries.get(&(check.to_string(), params_key(&map)))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn parse_golden(text: &str) -> Result<GoldenTable> {
    if text.trim().is_empty() {
        return Ok(GoldenTable {
            entries: BTreeMap::new(),
            warnings: vec!["golden file is empty".into()],
        });
    }
    let file: GoldenFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("golden file: {e}")))?;
    let found = file.schema.unwrap_or_default();
    if found != SCHEMA_VERSION {
        return Err(Error::Schema {
            expected: SCHEMA_VERSION.into(),
            found,
        });
    }
    let mut table = GoldenTable::default();
    for e in file.entries {
        if e.provenance.as_deref().is_none_or(|p| p.trim().is_empty()) {
            return Err(Error::Parse(format!("golden entry '{}' has no provenance", e.check)));
        }
        if !(e.tolerance >= 0.0) {
            return Err(Error::Parse(format!("golden entry '{}' has a negative tolerance", e.check)));
        }
        let key = (e.check.clone(), params_key(&e.params));
        if table.entries.insert(key, e.clone()).is_some() {
            return Err(Error::Parse(format!("duplicate golden entry '{}' {:?}", e.check, e.params)));
        }
    }
    if table.entries.is_empty() {
        table.warnings.push("golden file has no entries".into());
    }
    Ok(table)
}

pub fn read_golden(path: &Path) -> Result<GoldenTable> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_golden(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}
