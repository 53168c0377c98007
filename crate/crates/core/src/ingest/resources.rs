//! Optional lexical resources used by the sub-category classifiers.
//!
//! All are UTF-8 text, one entry per line; blank lines and `#` comments are
//! ignored.
//!
//! * named-entity spans: `s12\t3-5` (0-based inclusive source token span,
//!   a single index is allowed)
//! * fixed expressions: one expression per line, matched case-insensitively
//! * hyperonyms and glosses: `lemma\ttarget1\ttarget2 ...`

use std::path::Path;

use super::{read_text, IngestError};
use crate::subcat::{
    FixedExpressionLexicon, GlossTable, HypernymLexicon, NamedEntitySpans, Resources,
};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn malformed(line: usize, message: impl Into<String>) -> IngestError {
    IngestError::MalformedRecord {
        line,
        message: message.into(),
    }
}

pub fn parse_named_entities(text: &str) -> Result<NamedEntitySpans, IngestError> {
    let mut spans = NamedEntitySpans::default();
    for (line, l) in content_lines(text) {
        let (id, span) = l
            .split_once('\t')
            .ok_or_else(|| malformed(line, "expected `id<TAB>start-end`"))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| malformed(line, format!("bad span `{}`", span)))
        };
        let (a, b) = match span.split_once('-') {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let n = parse(span)?;
                (n, n)
            }
        };
        if a > b {
            return Err(malformed(line, format!("bad span `{}`", span)));
        }
        spans.add(id.trim(), a..=b);
    }
    Ok(spans)
}

pub fn parse_fixed_expressions(text: &str) -> FixedExpressionLexicon {
    content_lines(text).map(|(_, l)| l).collect()
}

pub fn parse_lemma_table(text: &str) -> Result<HypernymLexicon, IngestError> {
    let mut lex = HypernymLexicon::default();
    for (line, l) in content_lines(text) {
        let mut fields = l.split('\t').map(str::trim).filter(|f| !f.is_empty());
        let lemma = fields.next().unwrap_or_default();
        let targets: Vec<&str> = fields.collect();
        if targets.is_empty() {
            return Err(malformed(line, "expected `lemma<TAB>target ...`"));
        }
        for t in targets {
            lex.insert(lemma, t);
        }
    }
    Ok(lex)
}

/// Paths of the optional resource files.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ResourcePaths {
    pub named_entities: Option<std::path::PathBuf>,
    pub fixed_expressions: Option<std::path::PathBuf>,
    pub hypernyms: Option<std::path::PathBuf>,
    pub glosses: Option<std::path::PathBuf>,
}

fn load<T>(
    path: &Option<std::path::PathBuf>,
    parse: impl Fn(&str) -> Result<T, IngestError>,
) -> Result<Option<T>, IngestError> {
    path.as_deref()
        .map(|p: &Path| parse(&read_text(p)?).map_err(|e| e.in_file(p)))
        .transpose()
}

pub fn load_resources(paths: &ResourcePaths) -> Result<Resources, IngestError> {
    Ok(Resources {
        named_entities: load(&paths.named_entities, parse_named_entities)?,
        fixed_expressions: load(&paths.fixed_expressions, |t| Ok(parse_fixed_expressions(t)))?,
        hypernyms: load(&paths.hypernyms, parse_lemma_table)?,
        glosses: load::<GlossTable>(&paths.glosses, parse_lemma_table)?,
    })
}
