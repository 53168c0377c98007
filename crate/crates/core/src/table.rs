//! Labeled count/percentage tables and their text serializations.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const DEFAULT_DECIMALS: u8 = 3;

/// Rounds half away from zero to `decimals` places.
///
/// The scaled value is nudged by a few ulps first so that decimal inputs
/// such as `2.0005` round up even though their binary representation sits
/// just below the midpoint.
pub fn round_half_up(value: f64, decimals: u8) -> f64 {
    let p = 10f64.powi(decimals as i32);
    let scaled = value * p;
    let nudged = scaled * (1.0 + 4.0 * f64::EPSILON);
    nudged.round() / p
}

pub fn format_fixed(value: f64, decimals: u8) -> String {
    let r = round_half_up(value, decimals);
    // Avoid printing "-0.000".
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{:.*}", decimals as usize, r)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cell {
    Count(u64),
    Value(f64),
    Text(String),
    Empty,
}

impl Cell {
    pub fn render(&self, decimals: u8) -> String {
        match self {
            Cell::Count(n) => n.to_string(),
            Cell::Value(v) => format_fixed(*v, decimals),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    pub fn as_count(&self) -> Option<u64> {
        match self {
            Cell::Count(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_value(&self) -> Option<f64> {
        match self {
            Cell::Value(v) => Some(*v),
            Cell::Count(n) => Some(*n as f64),
            _ => None,
        }
    }

    fn to_json(&self, decimals: u8) -> serde_json::Value {
        match self {
            Cell::Count(n) => serde_json::Value::from(*n),
            // Go through the rendered string so JSON and CSV agree digit for digit.
            Cell::Value(v) => format_fixed(*v, decimals)
                .parse::<serde_json::Number>()
                .map(serde_json::Value::Number)
                .unwrap_or(serde_json::Value::Null),
            Cell::Text(s) => serde_json::Value::from(s.as_str()),
            Cell::Empty => serde_json::Value::Null,
        }
    }
}

/// A labeled table. The first column of every serialization is the row
/// label; `columns` names the remaining ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatTable {
    pub title: String,
    pub row_header: String,
    pub columns: Vec<String>,
    pub rows: Vec<(String, Vec<Cell>)>,
    pub decimals: u8,
    /// Which operation produced the table.
    pub provenance: String,
    pub notes: Vec<String>,
}

impl StatTable {
    pub fn new(
        title: impl Into<String>,
        row_header: impl Into<String>,
        columns: impl IntoIterator<Item = impl Into<String>>,
        provenance: impl Into<String>,
    ) -> Self {
        StatTable {
            title: title.into(),
            row_header: row_header.into(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            decimals: DEFAULT_DECIMALS,
            provenance: provenance.into(),
            notes: Vec::new(),
        }
    }

    pub fn push_row(&mut self, label: impl Into<String>, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push((label.into(), cells));
    }

    pub fn with_decimals(mut self, decimals: u8) -> Self {
        self.decimals = decimals;
        self
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn row(&self, label: &str) -> Option<&[Cell]> {
        self.rows
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, c)| c.as_slice())
    }

    pub fn cell(&self, row: &str, column: &str) -> Option<&Cell> {
        let c = self.column_index(column)?;
        self.row(row).and_then(|cells| cells.get(c))
    }

    pub fn header(&self) -> Vec<&str> {
        std::iter::once(self.row_header.as_str())
            .chain(self.columns.iter().map(String::as_str))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExportFormat {
    Csv,
    Tsv,
    JsonLines,
}

impl ExportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ExportFormat::Csv => "csv",
            ExportFormat::Tsv => "tsv",
            ExportFormat::JsonLines => "jsonl",
        }
    }
}

fn delimited(table: &StatTable, delimiter: u8) -> String {
    let mut writer = csv::WriterBuilder::new()
        .delimiter(delimiter)
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    // Writing to a Vec cannot fail.
    writer
        .write_record(table.header())
        .expect("in-memory write");
    for (label, cells) in &table.rows {
        let record =
            std::iter::once(label.clone()).chain(cells.iter().map(|c| c.render(table.decimals)));
        writer.write_record(record).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

/// Serializes a table. CSV follows RFC 4180 (CRLF line ends, quoting only
/// where needed); TSV uses the same rules with a tab delimiter; JSON-lines
/// emits one object per row keyed by the header.
pub fn export_table(table: &StatTable, format: ExportFormat) -> String {
    match format {
        ExportFormat::Csv => delimited(table, b','),
        ExportFormat::Tsv => delimited(table, b'\t'),
        ExportFormat::JsonLines => {
            let mut out = String::new();
            for (label, cells) in &table.rows {
                let mut obj = serde_json::Map::new();
                obj.insert(table.row_header.clone(), label.as_str().into());
                for (name, cell) in table.columns.iter().zip(cells) {
                    obj.insert(name.clone(), cell.to_json(table.decimals));
                }
                let _ = writeln!(out, "{}", serde_json::Value::Object(obj));
            }
            out
        }
    }
}
