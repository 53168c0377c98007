use super::{IngestError, Parsed, Warning};

/// Parses a tokenized text file: one sentence per line, tokens separated by
/// single spaces. Runs of whitespace are collapsed with a warning.
pub fn parse_tokenized(text: &str) -> Result<Parsed<Vec<Vec<String>>>, IngestError> {
    if text.is_empty() {
        return Err(IngestError::EmptyFile);
    }
    let mut warnings = Vec::new();
    let mut sentences = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let tokens: Vec<String> = line.split_whitespace().map(str::to_string).collect();
        if tokens.is_empty() {
            return Err(IngestError::EmptyLine { line: line_no });
        }
        if tokens.join(" ") != line {
            warnings.push(Warning::new(
                line_no,
                "collapsed irregular whitespace between tokens",
            ));
        }
        sentences.push(tokens);
    }
    Ok(Parsed {
        value: sentences,
        warnings,
    })
}

pub fn serialize_tokenized(sentences: &[Vec<String>]) -> String {
    let mut out = String::new();
    for s in sentences {
        out.push_str(&s.join(" "));
        out.push('\n');
    }
    out
}
