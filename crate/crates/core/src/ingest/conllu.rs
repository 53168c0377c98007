//! Minimal CoNLL-U reader: keeps LEMMA, UPOS, FEATS, HEAD and DEPREL.

use std::collections::BTreeMap;

use super::{IngestError, Parsed, Warning};
use crate::model::{Head, LingToken};

fn parse_feats(field: &str) -> BTreeMap<String, String> {
    if field == "_" {
        return BTreeMap::new();
    }
    field
        .split('|')
        .filter_map(|kv| kv.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

/// Parses CoNLL-U text into one `LingToken` sequence per sentence. Heads are
/// converted to 0-based indices with `0` mapped to [`Head::Root`].
/// Multiword-token ranges (`3-4`) and empty nodes (`5.1`) are skipped with a
/// warning.
pub fn parse_conllu(text: &str) -> Result<Parsed<Vec<Vec<LingToken>>>, IngestError> {
    let mut warnings = Vec::new();
    let mut sentences = Vec::new();
    let mut current: Vec<LingToken> = Vec::new();

    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            if !current.is_empty() {
                sentences.push(std::mem::take(&mut current));
            }
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(IngestError::ColumnCount {
                line: line_no,
                found: cols.len(),
            });
        }
        let id = cols[0];
        if id.contains('-') {
            warnings.push(Warning::new(
                line_no,
                format!("skipped multiword token {}", id),
            ));
            continue;
        }
        if id.contains('.') {
            warnings.push(Warning::new(line_no, format!("skipped empty node {}", id)));
            continue;
        }
        let head = match cols[6].parse::<usize>() {
            Ok(0) => Head::Root,
            Ok(h) => Head::Index(h - 1),
            Err(_) => {
                return Err(IngestError::NonnumericHead {
                    line: line_no,
                    head: cols[6].to_string(),
                })
            }
        };
        let lemma = match cols[2] {
            "_" => None,
            l => Some(l.to_string()),
        };
        current.push(LingToken {
            lemma,
            upos: cols[3].to_string(),
            feats: parse_feats(cols[5]),
            head,
            deprel: cols[7].to_string(),
        });
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    Ok(Parsed {
        value: sentences,
        warnings,
    })
}
