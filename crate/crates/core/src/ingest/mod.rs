//! Readers and writers for the project file formats, and project loading
//! with cross-file consistency checks.
//!
//! | file | format |
//! |------|--------|
//! | `source.txt`, `target.txt` | one tokenized sentence per line, tokens separated by single spaces |
//! | `corpus.aln` | one line per sentence of space-separated `src-tgt` 0-based index pairs |
//! | `annotations.jsonl` | one JSON record per aligned unit |
//! | `*.conllu` | standard 10-column CoNLL-U |
//! | `project.toml` | project manifest, see [`manifest`] |
//!
//! Parsers never drop input silently: anything skipped or repaired is
//! reported as a [`Warning`] carrying its 1-based line number.

use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

use crate::model::ValidationReport;

pub mod alignment;
pub mod annotations;
pub mod conllu;
pub mod manifest;
pub mod project;
pub mod resources;
pub mod tokenized;

pub use alignment::{parse_alignment, serialize_alignment, AlignmentEdgeList};
pub use annotations::{
    parse_annotations, serialize_annotation_set, serialize_annotations, AnnotationSet, UnitRecord,
};
pub use conllu::parse_conllu;
pub use manifest::{CorpusFiles, CorpusRole, GenreMap, ProjectManifest};
pub use project::{load_project, read_project, LoadedCorpus, Project, ProjectCheck};
pub use tokenized::{parse_tokenized, serialize_tokenized};

pub use crate::table::{export_table as export_tables, ExportFormat};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Warning {
    pub line: usize,
    pub message: String,
}

impl Warning {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        Warning {
            line,
            message: message.into(),
        }
    }
}

/// A parse result together with the warnings raised while producing it.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<Warning>,
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {line}: empty line")]
    EmptyLine { line: usize },
    #[error("empty file")]
    EmptyFile,
    #[error("line {line}, item {item}: malformed edge `{text}`")]
    MalformedEdge {
        line: usize,
        item: usize,
        text: String,
    },
    #[error("line {line}, item {item}: duplicate edge {src}-{tgt}")]
    DuplicateEdge {
        line: usize,
        item: usize,
        src: usize,
        tgt: usize,
    },
    #[error("line {line}: malformed record: {message}")]
    MalformedRecord { line: usize, message: String },
    #[error("line {line}: unknown relation `{relation}`")]
    UnknownRelation { line: usize, relation: String },
    #[error("line {line}: bad index in `{field}`: {message}")]
    BadIndex {
        line: usize,
        field: &'static str,
        message: String,
    },
    #[error("line {line}: sub-category `{sub}` does not belong to relation {relation}")]
    SubTagMismatch {
        line: usize,
        sub: String,
        relation: String,
    },
    #[error("line {line}: expected 10 columns, found {found}")]
    ColumnCount { line: usize, found: usize },
    #[error("line {line}: non-numeric head `{head}`")]
    NonnumericHead { line: usize, head: String },
    #[error("{what}: {detail}")]
    SentenceCountMismatch { what: String, detail: String },
    #[error("{corpus} sentence {id}: edge {src}-{tgt} out of bounds ({src_len}x{tgt_len})")]
    EdgeOutOfBounds {
        corpus: String,
        id: String,
        src: usize,
        tgt: usize,
        src_len: usize,
        tgt_len: usize,
    },
    #[error("{corpus}: annotation refers to unknown sentence `{id}`")]
    UnknownSentence { corpus: String, id: String },
    #[error("{corpus}: {} sentence(s) fail draft validation (first: {})", .reports.len(), .reports.first().map(|r| r.0.as_str()).unwrap_or(""))]
    InvalidAnnotation {
        corpus: String,
        reports: Vec<(String, ValidationReport)>,
    },
    #[error("reference and candidate sources differ at sentences {ids:?}")]
    SharedSourceViolation { ids: Vec<String> },
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<IngestError>,
    },
}

impl IngestError {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            IngestError::EmptyLine { .. } => "EMPTY_LINE",
            IngestError::EmptyFile => "EMPTY_FILE",
            IngestError::MalformedEdge { .. } => "MALFORMED_EDGE",
            IngestError::DuplicateEdge { .. } => "DUPLICATE_EDGE",
            IngestError::MalformedRecord { .. } => "MALFORMED_RECORD",
            IngestError::UnknownRelation { .. } => "UNKNOWN_RELATION",
            IngestError::BadIndex { .. } => "BAD_INDEX",
            IngestError::SubTagMismatch { .. } => "SUB_TAG_MISMATCH",
            IngestError::ColumnCount { .. } => "COLUMN_COUNT",
            IngestError::NonnumericHead { .. } => "NONNUMERIC_HEAD",
            IngestError::SentenceCountMismatch { .. } => "SENTENCE_COUNT_MISMATCH",
            IngestError::EdgeOutOfBounds { .. } => "EDGE_OUT_OF_BOUNDS",
            IngestError::UnknownSentence { .. } => "UNKNOWN_SENTENCE",
            IngestError::InvalidAnnotation { .. } => "INVALID_ANNOTATION",
            IngestError::SharedSourceViolation { .. } => "SHARED_SOURCE_VIOLATION",
            IngestError::Manifest(_) => "MANIFEST",
            IngestError::Io { .. } => "IO",
            IngestError::InFile { source, .. } => source.code(),
        }
    }

    /// Strips file context.
    pub fn root(&self) -> &IngestError {
        match self {
            IngestError::InFile { source, .. } => source.root(),
            other => other,
        }
    }

    pub(crate) fn in_file(self, path: impl Into<PathBuf>) -> Self {
        IngestError::InFile {
            path: path.into(),
            source: Box::new(self),
        }
    }
}

pub(crate) fn read_text(path: &std::path::Path) -> Result<String, IngestError> {
    std::fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })
}
