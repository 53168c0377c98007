//! The annotation record file: one JSON object per line, one line per
//! aligned unit.
//!
//! ```text
//! {"id":"s1","src":[12,13,14],"tgt":[13,14],"relation":"generalization","sub":"hyperonym"}
//! {"id":"s1","src":[],"tgt":[3],"relation":"unaligned_explicitation","provenance":"suggested"}
//! ```
//!
//! `sub` and `provenance` are optional; provenance defaults to `manual`.
//! Blank lines and lines starting with `#` are skipped with a warning.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{IngestError, Parsed, Warning};
use crate::model::{AlignedUnit, Corpus, Provenance, RelationLabel, SubCategory};

/// Wire form of one unit, shared by the annotation file and the HTTP API.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitRecord {
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub relation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub: Option<String>,
    #[serde(default, skip_serializing_if = "is_manual")]
    pub provenance: Provenance,
}

fn is_manual(p: &Provenance) -> bool {
    *p == Provenance::Manual
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnitRecordError {
    UnknownRelation(String),
    SubTagMismatch { sub: String, relation: String },
    DuplicateIndex(&'static str, usize),
}

impl std::fmt::Display for UnitRecordError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UnitRecordError::UnknownRelation(r) => write!(f, "unknown relation `{}`", r),
            UnitRecordError::SubTagMismatch { sub, relation } => {
                write!(f, "sub-category `{}` does not belong to {}", sub, relation)
            }
            UnitRecordError::DuplicateIndex(side, i) => write!(f, "duplicate {} index {}", side, i),
        }
    }
}

impl std::error::Error for UnitRecordError {}

impl From<&AlignedUnit> for UnitRecord {
    fn from(u: &AlignedUnit) -> Self {
        UnitRecord {
            src: u.src.iter().copied().collect(),
            tgt: u.tgt.iter().copied().collect(),
            relation: u.relation.as_str().to_string(),
            sub: u.sub.map(|s| s.as_str().to_string()),
            provenance: u.provenance,
        }
    }
}

impl UnitRecord {
    /// Converts to a unit. Relation and sub-category strings are trimmed.
    pub fn to_unit(&self) -> Result<AlignedUnit, UnitRecordError> {
        let rel_text = self.relation.trim();
        let relation: RelationLabel = rel_text
            .parse()
            .map_err(|_| UnitRecordError::UnknownRelation(self.relation.clone()))?;
        let sub = match &self.sub {
            None => None,
            Some(s) => Some(SubCategory::parse(relation, s.trim()).ok_or_else(|| {
                UnitRecordError::SubTagMismatch {
                    sub: s.clone(),
                    relation: relation.to_string(),
                }
            })?),
        };
        let mut unit =
            AlignedUnit::new(self.src.iter().copied(), self.tgt.iter().copied(), relation);
        if unit.src.len() != self.src.len() {
            return Err(UnitRecordError::DuplicateIndex(
                "src",
                first_duplicate(&self.src),
            ));
        }
        if unit.tgt.len() != self.tgt.len() {
            return Err(UnitRecordError::DuplicateIndex(
                "tgt",
                first_duplicate(&self.tgt),
            ));
        }
        unit.sub = sub;
        unit.provenance = self.provenance;
        Ok(unit)
    }
}

fn first_duplicate(v: &[usize]) -> usize {
    let mut seen = std::collections::HashSet::new();
    v.iter().copied().find(|i| !seen.insert(*i)).unwrap_or(0)
}

#[derive(Serialize)]
struct AnnotationRecordOut<'a> {
    id: &'a str,
    #[serde(flatten)]
    unit: UnitRecord,
}

/// Units grouped per sentence id, in order of first appearance.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AnnotationSet {
    pub sentences: Vec<(String, Vec<AlignedUnit>)>,
}

impl AnnotationSet {
    pub fn from_corpus(corpus: &Corpus) -> Self {
        AnnotationSet {
            sentences: corpus
                .sentences
                .iter()
                .filter(|s| !s.units.is_empty())
                .map(|s| (s.id.clone(), s.units.clone()))
                .collect(),
        }
    }

    pub fn units_for(&self, id: &str) -> Option<&[AlignedUnit]> {
        self.sentences
            .iter()
            .find(|(i, _)| i == id)
            .map(|(_, u)| u.as_slice())
    }

    pub fn unit_count(&self) -> usize {
        self.sentences.iter().map(|(_, u)| u.len()).sum()
    }
}

fn index_list(
    obj: &serde_json::Map<String, Value>,
    field: &'static str,
    line: usize,
) -> Result<Vec<usize>, IngestError> {
    let bad = |message: String| IngestError::BadIndex {
        line,
        field,
        message,
    };
    let arr = obj
        .get(field)
        .ok_or_else(|| IngestError::MalformedRecord {
            line,
            message: format!("missing field `{}`", field),
        })?
        .as_array()
        .ok_or_else(|| bad("expected an array".into()))?;
    arr.iter()
        .map(|v| {
            v.as_u64()
                .map(|n| n as usize)
                .ok_or_else(|| bad(format!("`{}` is not a non-negative integer", v)))
        })
        .collect()
}

fn string_field(
    obj: &serde_json::Map<String, Value>,
    field: &str,
    line: usize,
) -> Result<Option<String>, IngestError> {
    match obj.get(field) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(other) => Err(IngestError::MalformedRecord {
            line,
            message: format!("`{}` must be a string, found {}", field, other),
        }),
    }
}

fn parse_record(text: &str, line: usize) -> Result<(String, AlignedUnit), IngestError> {
    let value: Value = serde_json::from_str(text).map_err(|e| IngestError::MalformedRecord {
        line,
        message: e.to_string(),
    })?;
    let obj = value
        .as_object()
        .ok_or_else(|| IngestError::MalformedRecord {
            line,
            message: "expected a JSON object".into(),
        })?;
    let id = string_field(obj, "id", line)?.ok_or_else(|| IngestError::MalformedRecord {
        line,
        message: "missing field `id`".into(),
    })?;
    let relation =
        string_field(obj, "relation", line)?.ok_or_else(|| IngestError::MalformedRecord {
            line,
            message: "missing field `relation`".into(),
        })?;
    let provenance = match string_field(obj, "provenance", line)?
        .as_deref()
        .map(str::trim)
    {
        None | Some("manual") => Provenance::Manual,
        Some("suggested") => Provenance::Suggested,
        Some(other) => {
            return Err(IngestError::MalformedRecord {
                line,
                message: format!("unknown provenance `{}`", other),
            })
        }
    };
    let record = UnitRecord {
        src: index_list(obj, "src", line)?,
        tgt: index_list(obj, "tgt", line)?,
        relation,
        sub: string_field(obj, "sub", line)?,
        provenance,
    };
    let unit = record.to_unit().map_err(|e| match e {
        UnitRecordError::UnknownRelation(relation) => {
            IngestError::UnknownRelation { line, relation }
        }
        UnitRecordError::SubTagMismatch { sub, relation } => IngestError::SubTagMismatch {
            line,
            sub,
            relation,
        },
        UnitRecordError::DuplicateIndex(field, i) => IngestError::BadIndex {
            line,
            field,
            message: format!("duplicate index {}", i),
        },
    })?;
    Ok((id, unit))
}

pub fn parse_annotations(text: &str) -> Result<Parsed<AnnotationSet>, IngestError> {
    let mut warnings = Vec::new();
    let mut set = AnnotationSet::default();
    let mut slots: HashMap<String, usize> = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            warnings.push(Warning::new(line_no, "skipped blank line"));
            continue;
        }
        if trimmed.starts_with('#') {
            warnings.push(Warning::new(line_no, "skipped comment line"));
            continue;
        }
        let (id, unit) = parse_record(trimmed, line_no)?;
        let slot = *slots.entry(id.clone()).or_insert_with(|| {
            set.sentences.push((id.clone(), Vec::new()));
            set.sentences.len() - 1
        });
        if slot != set.sentences.len() - 1 {
            warnings.push(Warning::new(
                line_no,
                format!("records for sentence `{}` are not contiguous; merged", id),
            ));
        }
        set.sentences[slot].1.push(unit);
    }
    Ok(Parsed {
        value: set,
        warnings,
    })
}

pub fn serialize_annotation_set(set: &AnnotationSet) -> String {
    let mut out = String::new();
    for (id, units) in &set.sentences {
        for unit in units {
            let record = AnnotationRecordOut {
                id,
                unit: UnitRecord::from(unit),
            };
            out.push_str(&serde_json::to_string(&record).expect("records always serialize"));
            out.push('\n');
        }
    }
    out
}

/// Serializes every unit of the corpus in sentence order.
pub fn serialize_annotations(corpus: &Corpus) -> String {
    serialize_annotation_set(&AnnotationSet::from_corpus(corpus))
}
