use std::collections::HashSet;

use super::{IngestError, Parsed, Warning};

/// Token-index alignment edges, one list per sentence, 0-based `(src, tgt)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlignmentEdgeList {
    pub sentences: Vec<Vec<(usize, usize)>>,
}

impl AlignmentEdgeList {
    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }
}

/// Parses one alignment line. `line` is 1-based and only used for error
/// reporting; item numbers in errors are 1-based as well.
pub fn parse_alignment_line(text: &str, line: usize) -> Result<Vec<(usize, usize)>, IngestError> {
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for (i, item) in text.split_whitespace().enumerate() {
        let malformed = || IngestError::MalformedEdge {
            line,
            item: i + 1,
            text: item.to_string(),
        };
        let (s, t) = item.split_once('-').ok_or_else(malformed)?;
        let src: usize = s.parse().map_err(|_| malformed())?;
        let tgt: usize = t.parse().map_err(|_| malformed())?;
        if !seen.insert((src, tgt)) {
            return Err(IngestError::DuplicateEdge {
                line,
                item: i + 1,
                src,
                tgt,
            });
        }
        edges.push((src, tgt));
    }
    Ok(edges)
}

/// Parses an alignment file. Each line is one sentence; an empty line is a
/// sentence without edges.
pub fn parse_alignment(text: &str) -> Result<Parsed<AlignmentEdgeList>, IngestError> {
    let mut warnings = Vec::new();
    let mut sentences = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let edges = parse_alignment_line(line, i + 1)?;
        let canonical = edges
            .iter()
            .map(|(s, t)| format!("{}-{}", s, t))
            .collect::<Vec<_>>()
            .join(" ");
        if canonical != line {
            warnings.push(Warning::new(
                i + 1,
                "collapsed irregular whitespace between edges",
            ));
        }
        sentences.push(edges);
    }
    Ok(Parsed {
        value: AlignmentEdgeList { sentences },
        warnings,
    })
}

pub fn serialize_alignment(edges: &AlignmentEdgeList) -> String {
    let mut out = String::new();
    for sentence in &edges.sentences {
        let items: Vec<String> = sentence
            .iter()
            .map(|(s, t)| format!("{}-{}", s, t))
            .collect();
        out.push_str(&items.join(" "));
        out.push('\n');
    }
    out
}
