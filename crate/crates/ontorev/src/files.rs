//! On-disk formats: ontology files, vectors files, pairwise-similarity
//! fixtures and sentence maps.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use ontorev_core::{
    parse_axiom, parse_ontology, AxiomId, EmbeddingProvider, Metric, PairTable, ParseError, ParseOutcome, SentenceMap,
    Vector, VectorStore,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{path}: {message}")]
    Invalid { path: PathBuf, message: String },
}

fn read(path: &Path) -> Result<String, FileError> {
    fs::read_to_string(path).map_err(|source| FileError::Io { path: path.into(), source })
}

pub fn write(path: &Path, contents: &str) -> Result<(), FileError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| FileError::Io { path: dir.into(), source })?;
    }
    fs::write(path, contents).map_err(|source| FileError::Io { path: path.into(), source })
}

fn json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, FileError> {
    serde_json::from_str(&read(path)?).map_err(|source| FileError::Json { path: path.into(), source })
}

fn invalid(path: &Path, message: impl Into<String>) -> FileError {
    FileError::Invalid { path: path.into(), message: message.into() }
}

pub fn read_ontology(path: &Path) -> Result<ParseOutcome, FileError> {
    parse_ontology(&read(path)?).map_err(|source| FileError::Parse { path: path.into(), source })
}

/// Ids in fixture files may be written in any equivalent surface form; they
/// are normalized by parsing.
fn canonical_id(path: &Path, raw: &str) -> Result<AxiomId, FileError> {
    parse_axiom(raw).map(|a| a.id().clone()).map_err(|e| invalid(path, format!("bad axiom id {raw:?}: {e}")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorsFile {
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric_hint: Option<String>,
    pub vectors: BTreeMap<String, Vec<f64>>,
}

impl VectorsFile {
    pub fn from_store(store: &VectorStore, metric_hint: Option<Metric>) -> Self {
        VectorsFile {
            dimension: store.dimension(),
            metric_hint: metric_hint.map(|m| m.to_string()),
            vectors: store.iter().map(|(id, v)| (id.to_string(), v.as_slice().to_vec())).collect(),
        }
    }
}

pub fn read_vectors(path: &Path) -> Result<VectorStore, FileError> {
    let file: VectorsFile = json(path)?;
    if file.dimension == 0 {
        return Err(invalid(path, "dimension must be positive"));
    }
    let mut store = VectorStore::new(file.dimension);
    for (raw, v) in file.vectors {
        let id = canonical_id(path, &raw)?;
        store.insert(id, Vector::new(v)).map_err(|e| invalid(path, e.to_string()))?;
    }
    Ok(store)
}

pub fn write_vectors(path: &Path, store: &VectorStore, metric_hint: Option<Metric>) -> Result<(), FileError> {
    let text = serde_json::to_string_pretty(&VectorsFile::from_store(store, metric_hint)).expect("vectors serialize");
    write(path, &(text + "\n"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairsFile {
    pub pairs: BTreeMap<String, f64>,
}

/// Reads `{"pairs": {"<idA>|<idB>": s}}`.
pub fn read_pairs(path: &Path, metric: Option<Metric>) -> Result<PairTable, FileError> {
    let file: PairsFile = json(path)?;
    let mut table = PairTable::new(metric);
    for (key, s) in file.pairs {
        let (a, b) = key.split_once('|').ok_or_else(|| invalid(path, format!("pair key {key:?} lacks '|'")))?;
        if !(0.0..=1.0).contains(&s) {
            return Err(invalid(path, format!("similarity {s} for {key:?} is outside [0, 1]")));
        }
        table.insert(canonical_id(path, a.trim())?, canonical_id(path, b.trim())?, s);
    }
    Ok(table)
}

pub fn read_sentences(path: &Path) -> Result<SentenceMap, FileError> {
    let raw: BTreeMap<String, String> = json(path)?;
    raw.into_iter().map(|(k, s)| Ok((canonical_id(path, &k)?, s))).collect()
}

pub fn sentences_json(map: &SentenceMap) -> String {
    let raw: BTreeMap<&str, &str> = map.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
    serde_json::to_string_pretty(&raw).expect("sentences serialize") + "\n"
}

pub fn write_sentences(path: &Path, map: &SentenceMap) -> Result<(), FileError> {
    write(path, &sentences_json(map))
}
