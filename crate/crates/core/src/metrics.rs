//! Corpus statistics: relation distributions, literal splits, token-level
//! literal ratios, cross-corpus discrepancies and relation edit distance.
//!
//! Every function is a pure fold over sentences in corpus order, so the same
//! corpus always yields bit-identical tables. Percentages are stored
//! unrounded in [`Cell::Value`] and rounded half-up when rendered.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{genre_order, project_source_relations, Corpus, ProjectionError, RelationLabel};
use crate::table::{round_half_up, Cell, StatTable, DEFAULT_DECIMALS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("sequence lengths differ ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("genre `{genre}` is present in only one corpus")]
    GenreMismatch { genre: String },
    #[error("sentence {index}: ids differ ({reference} vs {candidate})")]
    SentenceMismatch {
        index: usize,
        reference: String,
        candidate: String,
    },
    #[error("corpora have {reference} and {candidate} sentences")]
    CorpusSizeMismatch { reference: usize, candidate: usize },
    #[error("sentence {id}: {source}")]
    Projection {
        id: String,
        #[source]
        source: ProjectionError,
    },
}

impl MetricsError {
    pub fn code(&self) -> &'static str {
        match self {
            MetricsError::ZeroDenominator => "ZERO_DENOMINATOR",
            MetricsError::LengthMismatch { .. } => "LENGTH_MISMATCH",
            MetricsError::GenreMismatch { .. } => "GENRE_MISMATCH",
            MetricsError::SentenceMismatch { .. } | MetricsError::CorpusSizeMismatch { .. } => {
                "SHARED_SOURCE_VIOLATION"
            }
            MetricsError::Projection { .. } => "INCOMPLETE_ANNOTATION",
        }
    }
}

fn pct(part: u64, total: u64) -> f64 {
    if total == 0 {
        0.0
    } else {
        part as f64 / total as f64 * 100.0
    }
}

pub fn relation_counts(corpus: &Corpus) -> BTreeMap<RelationLabel, u64> {
    let mut counts: BTreeMap<RelationLabel, u64> =
        RelationLabel::ALL.iter().map(|r| (*r, 0)).collect();
    for (_, unit) in corpus.units() {
        *counts.get_mut(&unit.relation).expect("all labels present") += 1;
    }
    counts
}

/// Distribution table from unit counts per relation. An all-zero input
/// gives a header-only table.
pub fn distribution_from_counts(name: &str, counts: &BTreeMap<RelationLabel, u64>) -> StatTable {
    let mut table = StatTable::new(
        format!("Relation distribution ({})", name),
        "relation",
        ["count", "percentage"],
        "metrics::relation_distribution",
    );
    let total: u64 = counts.values().sum();
    if total == 0 {
        return table;
    }
    for r in RelationLabel::ALL {
        let n = counts.get(&r).copied().unwrap_or(0);
        table.push_row(r.as_str(), vec![Cell::Count(n), Cell::Value(pct(n, total))]);
    }
    table.push_row("Total", vec![Cell::Count(total), Cell::Value(100.0)]);
    table
}

/// Units per relation with their share of all units.
pub fn relation_distribution(corpus: &Corpus) -> StatTable {
    distribution_from_counts(&corpus.name, &relation_counts(corpus))
}

/// Literal against all other relations, over units.
pub fn literal_split(corpus: &Corpus) -> StatTable {
    let counts = relation_counts(corpus);
    let total: u64 = counts.values().sum();
    let literal = counts[&RelationLabel::Literal];
    let mut table = StatTable::new(
        format!("Literal and non-literal units ({})", corpus.name),
        "translation",
        ["count", "percentage"],
        "metrics::literal_split",
    );
    if total == 0 {
        return table;
    }
    table.push_row(
        "literal",
        vec![Cell::Count(literal), Cell::Value(pct(literal, total))],
    );
    table.push_row(
        "non_literal",
        vec![
            Cell::Count(total - literal),
            Cell::Value(pct(total - literal, total)),
        ],
    );
    table.push_row("Total", vec![Cell::Count(total), Cell::Value(100.0)]);
    table
}

fn genres_of(corpus: &Corpus) -> Vec<String> {
    corpus.genres()
}

/// Literal and non-literal unit counts per genre plus a total row.
pub fn literal_split_by_genre(corpus: &Corpus) -> StatTable {
    let mut per_genre: BTreeMap<&str, (u64, u64)> = BTreeMap::new();
    for (pair, unit) in corpus.units() {
        let e = per_genre.entry(pair.genre.as_str()).or_default();
        if unit.relation.is_literal() {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
    }
    let mut table = StatTable::new(
        format!("Literal split by genre ({})", corpus.name),
        "genre",
        ["literal", "non_literal", "non_literal_percentage"],
        "metrics::literal_split_by_genre",
    );
    if per_genre.is_empty() {
        return table;
    }
    let row = |l: u64, n: u64| vec![Cell::Count(l), Cell::Count(n), Cell::Value(pct(n, l + n))];
    let (mut tl, mut tn) = (0, 0);
    for genre in genres_of(corpus) {
        if let Some(&(l, n)) = per_genre.get(genre.as_str()) {
            table.push_row(genre.clone(), row(l, n));
            tl += l;
            tn += n;
        }
    }
    table.push_row("Total", row(tl, tn));
    table
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscrepancyPolicy {
    /// Relative to the reference percentage.
    #[default]
    Reference,
    /// Relative to the candidate percentage.
    Candidate,
}

impl DiscrepancyPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            DiscrepancyPolicy::Reference => "reference",
            DiscrepancyPolicy::Candidate => "candidate",
        }
    }
}

impl std::str::FromStr for DiscrepancyPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reference" => Ok(DiscrepancyPolicy::Reference),
            "candidate" => Ok(DiscrepancyPolicy::Candidate),
            other => Err(format!("unknown denominator `{}`", other)),
        }
    }
}

/// Signed relative difference of two percentages, unrounded. Equal inputs
/// give zero even when both are zero.
pub fn discrepancy_raw(
    candidate: f64,
    reference: f64,
    policy: DiscrepancyPolicy,
) -> Result<f64, MetricsError> {
    if candidate == reference {
        return Ok(0.0);
    }
    let denom = match policy {
        DiscrepancyPolicy::Reference => reference,
        DiscrepancyPolicy::Candidate => candidate,
    };
    if denom == 0.0 {
        return Err(MetricsError::ZeroDenominator);
    }
    Ok((candidate - reference) / denom * 100.0)
}

/// [`discrepancy_raw`] rounded half-up to three decimals.
pub fn discrepancy(
    candidate: f64,
    reference: f64,
    policy: DiscrepancyPolicy,
) -> Result<f64, MetricsError> {
    discrepancy_raw(candidate, reference, policy).map(|d| round_half_up(d, DEFAULT_DECIMALS))
}

/// Per-relation percentages of both corpora and their discrepancy. The
/// discrepancy is computed from the percentages as rounded to `decimals`,
/// the same figures the table shows. Undefined discrepancies (zero
/// denominator) are left empty and listed in the notes.
pub fn discrepancy_table(
    reference: &Corpus,
    candidate: &Corpus,
    policy: DiscrepancyPolicy,
    decimals: u8,
) -> StatTable {
    let rc = relation_counts(reference);
    let cc = relation_counts(candidate);
    let (rt, ct): (u64, u64) = (rc.values().sum(), cc.values().sum());
    let mut table = StatTable::new(
        format!(
            "Discrepancy of {} against {}",
            candidate.name, reference.name
        ),
        "relation",
        [
            format!("{}_count", reference.name),
            format!("{}_percentage", reference.name),
            format!("{}_count", candidate.name),
            format!("{}_percentage", candidate.name),
            "discrepancy".to_string(),
        ],
        format!(
            "metrics::discrepancy_table(denominator={})",
            policy.as_str()
        ),
    )
    .with_decimals(decimals);
    if rt == 0 && ct == 0 {
        return table;
    }
    for r in RelationLabel::ALL {
        let rp = round_half_up(pct(rc[&r], rt), decimals);
        let cp = round_half_up(pct(cc[&r], ct), decimals);
        let d = match discrepancy_raw(cp, rp, policy) {
            Ok(d) => Cell::Value(d),
            Err(_) => {
                table
                    .notes
                    .push(format!("{}: discrepancy undefined (zero denominator)", r));
                Cell::Empty
            }
        };
        table.push_row(
            r.as_str(),
            vec![
                Cell::Count(rc[&r]),
                Cell::Value(rp),
                Cell::Count(cc[&r]),
                Cell::Value(cp),
                d,
            ],
        );
    }
    table
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SentenceLiteral {
    pub id: String,
    pub genre: String,
    pub literal_tokens: usize,
    pub tokens: usize,
    pub ratio: f64,
}

/// Source-token literal counts. `pooled_percentage` is total literal tokens
/// over total tokens; `mean_ratio` averages the per-sentence ratios. The
/// two differ whenever sentence lengths do.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TokenLiteralStats {
    pub sentences: Vec<SentenceLiteral>,
    pub literal_tokens: usize,
    pub tokens: usize,
    pub pooled_percentage: f64,
    pub mean_ratio: f64,
}

pub fn token_literal_stats(corpus: &Corpus) -> Result<TokenLiteralStats, MetricsError> {
    let mut sentences = Vec::with_capacity(corpus.sentences.len());
    for pair in &corpus.sentences {
        let labels = project_source_relations(pair).map_err(|source| MetricsError::Projection {
            id: pair.id.clone(),
            source,
        })?;
        let literal = labels.iter().filter(|r| r.is_literal()).count();
        let ratio = if labels.is_empty() {
            0.0
        } else {
            literal as f64 / labels.len() as f64
        };
        sentences.push(SentenceLiteral {
            id: pair.id.clone(),
            genre: pair.genre.clone(),
            literal_tokens: literal,
            tokens: labels.len(),
            ratio,
        });
    }
    let literal_tokens: usize = sentences.iter().map(|s| s.literal_tokens).sum();
    let tokens: usize = sentences.iter().map(|s| s.tokens).sum();
    let mean_ratio = if sentences.is_empty() {
        0.0
    } else {
        sentences.iter().map(|s| s.ratio).sum::<f64>() / sentences.len() as f64
    };
    Ok(TokenLiteralStats {
        pooled_percentage: pct(literal_tokens as u64, tokens as u64),
        literal_tokens,
        tokens,
        mean_ratio,
        sentences,
    })
}

impl TokenLiteralStats {
    /// Literal and non-literal source tokens with a pooled percentage.
    pub fn summary_table(&self, name: &str) -> StatTable {
        let mut table = StatTable::new(
            format!("Literal source tokens ({})", name),
            "tokens",
            ["count", "percentage"],
            "metrics::token_literal_stats",
        );
        if self.tokens == 0 {
            return table;
        }
        let (l, t) = (self.literal_tokens as u64, self.tokens as u64);
        table.push_row("literal", vec![Cell::Count(l), Cell::Value(pct(l, t))]);
        table.push_row(
            "non_literal",
            vec![Cell::Count(t - l), Cell::Value(pct(t - l, t))],
        );
        table.push_row("Total", vec![Cell::Count(t), Cell::Value(100.0)]);
        table.push_row(
            "mean_sentence_ratio",
            vec![Cell::Empty, Cell::Value(self.mean_ratio * 100.0)],
        );
        table
    }

    /// One row per sentence with its literal-token ratio.
    pub fn series_table(&self, name: &str) -> StatTable {
        let mut table = StatTable::new(
            format!("Per-sentence literal token ratio ({})", name),
            "sentence",
            ["genre", "literal_tokens", "tokens", "ratio"],
            "metrics::token_literal_stats",
        );
        for s in &self.sentences {
            table.push_row(
                s.id.clone(),
                vec![
                    Cell::Text(s.genre.clone()),
                    Cell::Count(s.literal_tokens as u64),
                    Cell::Count(s.tokens as u64),
                    Cell::Value(s.ratio),
                ],
            );
        }
        table
    }
}

/// Number of positions at which two equal-length label sequences differ.
pub fn relation_edit_distance(
    reference: &[RelationLabel],
    candidate: &[RelationLabel],
) -> Result<usize, MetricsError> {
    if reference.len() != candidate.len() {
        return Err(MetricsError::LengthMismatch {
            left: reference.len(),
            right: candidate.len(),
        });
    }
    Ok(reference
        .iter()
        .zip(candidate)
        .filter(|(a, b)| a != b)
        .count())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiveNumber {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

/// Quantile by linear interpolation between closest ranks.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

impl FiveNumber {
    pub fn of(values: &[usize]) -> Option<FiveNumber> {
        if values.is_empty() {
            return None;
        }
        let mut v: Vec<f64> = values.iter().map(|&x| x as f64).collect();
        v.sort_by(f64::total_cmp);
        Some(FiveNumber {
            min: v[0],
            q1: quantile(&v, 0.25),
            median: quantile(&v, 0.5),
            q3: quantile(&v, 0.75),
            max: v[v.len() - 1],
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenreDistances {
    pub genre: String,
    /// `(sentence id, distance)` in corpus order.
    pub distances: Vec<(String, usize)>,
    pub summary: FiveNumber,
}

/// Per-sentence relation edit distances grouped by genre (genre order as in
/// [`genre_order`]).
pub fn edit_distance_by_genre(
    reference: &Corpus,
    candidate: &Corpus,
) -> Result<Vec<GenreDistances>, MetricsError> {
    let (rg, cg) = (reference.genres(), candidate.genres());
    if let Some(g) = rg
        .iter()
        .find(|g| !cg.contains(g))
        .or_else(|| cg.iter().find(|g| !rg.contains(g)))
    {
        return Err(MetricsError::GenreMismatch { genre: g.clone() });
    }
    if reference.sentences.len() != candidate.sentences.len() {
        return Err(MetricsError::CorpusSizeMismatch {
            reference: reference.sentences.len(),
            candidate: candidate.sentences.len(),
        });
    }
    let mut by_genre: BTreeMap<String, Vec<(String, usize)>> = BTreeMap::new();
    for (index, (r, c)) in reference
        .sentences
        .iter()
        .zip(&candidate.sentences)
        .enumerate()
    {
        if r.id != c.id || r.genre != c.genre {
            return Err(MetricsError::SentenceMismatch {
                index,
                reference: r.id.clone(),
                candidate: c.id.clone(),
            });
        }
        let project = |p: &crate::model::SentencePair| {
            project_source_relations(p).map_err(|source| MetricsError::Projection {
                id: p.id.clone(),
                source,
            })
        };
        let d = relation_edit_distance(&project(r)?, &project(c)?)?;
        by_genre
            .entry(r.genre.clone())
            .or_default()
            .push((r.id.clone(), d));
    }
    let mut out: Vec<GenreDistances> = by_genre
        .into_iter()
        .map(|(genre, distances)| {
            let values: Vec<usize> = distances.iter().map(|(_, d)| *d).collect();
            GenreDistances {
                genre,
                summary: FiveNumber::of(&values).expect("genre groups are non-empty"),
                distances,
            }
        })
        .collect();
    out.sort_by(|a, b| genre_order(&a.genre, &b.genre));
    Ok(out)
}

/// Per-sentence distance series, one row per sentence.
pub fn edit_distance_series_table(groups: &[GenreDistances]) -> StatTable {
    let mut table = StatTable::new(
        "Relation edit distance per sentence",
        "sentence",
        ["genre", "distance"],
        "metrics::edit_distance_by_genre",
    );
    for g in groups {
        for (id, d) in &g.distances {
            table.push_row(
                id.clone(),
                vec![Cell::Text(g.genre.clone()), Cell::Count(*d as u64)],
            );
        }
    }
    table
}

/// Five-number summary per genre.
pub fn edit_distance_summary_table(groups: &[GenreDistances]) -> StatTable {
    let mut table = StatTable::new(
        "Relation edit distance by genre",
        "genre",
        ["sentences", "min", "q1", "median", "q3", "max"],
        "metrics::edit_distance_by_genre",
    );
    for g in groups {
        let s = g.summary;
        table.push_row(
            g.genre.clone(),
            vec![
                Cell::Count(g.distances.len() as u64),
                Cell::Value(s.min),
                Cell::Value(s.q1),
                Cell::Value(s.median),
                Cell::Value(s.q3),
                Cell::Value(s.max),
            ],
        );
    }
    table
}

/// Sentence and token totals per genre. An empty corpus gives a single
/// all-zero total row.
pub fn token_counts(corpus: &Corpus) -> StatTable {
    let mut table = StatTable::new(
        format!("Tokens per genre ({})", corpus.name),
        "genre",
        ["sentences", "source_tokens", "target_tokens"],
        "metrics::token_counts",
    );
    let mut totals = [0u64; 3];
    for genre in genres_of(corpus) {
        let mut row = [0u64; 3];
        for s in corpus.sentences.iter().filter(|s| s.genre == genre) {
            row[0] += 1;
            row[1] += s.src_tokens.len() as u64;
            row[2] += s.tgt_tokens.len() as u64;
        }
        for (t, r) in totals.iter_mut().zip(row) {
            *t += r;
        }
        table.push_row(genre, row.iter().map(|&n| Cell::Count(n)).collect());
    }
    table.push_row("Total", totals.iter().map(|&n| Cell::Count(n)).collect());
    table
}

/// Relation percentages within each genre: one column per genre, each
/// summing to 100. Genres without units are omitted with a note.
pub fn relation_distribution_by_genre(corpus: &Corpus) -> StatTable {
    let mut counts: BTreeMap<&str, BTreeMap<RelationLabel, u64>> = BTreeMap::new();
    for (pair, unit) in corpus.units() {
        *counts
            .entry(pair.genre.as_str())
            .or_default()
            .entry(unit.relation)
            .or_default() += 1;
    }
    let genres = genres_of(corpus);
    let present: Vec<&String> = genres
        .iter()
        .filter(|g| counts.contains_key(g.as_str()))
        .collect();
    let mut table = StatTable::new(
        format!("Relation percentages by genre ({})", corpus.name),
        "relation",
        present.iter().map(|g| g.as_str()),
        "metrics::relation_distribution_by_genre",
    );
    for g in genres.iter().filter(|g| !counts.contains_key(g.as_str())) {
        table
            .notes
            .push(format!("genre `{}` has no units; omitted", g));
    }
    if present.is_empty() {
        return table;
    }
    for r in RelationLabel::ALL {
        let cells = present
            .iter()
            .map(|g| {
                let c = &counts[g.as_str()];
                let total: u64 = c.values().sum();
                Cell::Value(pct(c.get(&r).copied().unwrap_or(0), total))
            })
            .collect();
        table.push_row(r.as_str(), cells);
    }
    table
}
