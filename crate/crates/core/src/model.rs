//! Domain types for relation-annotated sentence pairs, the partition
//! invariant over aligned units, and per-token relation projection.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The fourteen translation-relation categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationLabel {
    Literal,
    Equivalence,
    Generalization,
    Particularization,
    Modulation,
    Transposition,
    ModulationTransposition,
    Figurative,
    LexicalShift,
    TranslationError,
    Uncertain,
    NoType,
    UnalignedExplicitation,
    UnalignedReduction,
}

impl RelationLabel {
    pub const ALL: [RelationLabel; 14] = [
        RelationLabel::Literal,
        RelationLabel::Equivalence,
        RelationLabel::Generalization,
        RelationLabel::Particularization,
        RelationLabel::Modulation,
        RelationLabel::Transposition,
        RelationLabel::ModulationTransposition,
        RelationLabel::Figurative,
        RelationLabel::LexicalShift,
        RelationLabel::TranslationError,
        RelationLabel::Uncertain,
        RelationLabel::NoType,
        RelationLabel::UnalignedExplicitation,
        RelationLabel::UnalignedReduction,
    ];

    /// Labels offered in the annotator's drop list (everything that links
    /// tokens on both sides).
    pub const ANNOTATABLE: [RelationLabel; 11] = [
        RelationLabel::Literal,
        RelationLabel::Equivalence,
        RelationLabel::Transposition,
        RelationLabel::Modulation,
        RelationLabel::ModulationTransposition,
        RelationLabel::Generalization,
        RelationLabel::Particularization,
        RelationLabel::Figurative,
        RelationLabel::LexicalShift,
        RelationLabel::Uncertain,
        RelationLabel::TranslationError,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RelationLabel::Literal => "literal",
            RelationLabel::Equivalence => "equivalence",
            RelationLabel::Generalization => "generalization",
            RelationLabel::Particularization => "particularization",
            RelationLabel::Modulation => "modulation",
            RelationLabel::Transposition => "transposition",
            RelationLabel::ModulationTransposition => "modulation_transposition",
            RelationLabel::Figurative => "figurative",
            RelationLabel::LexicalShift => "lexical_shift",
            RelationLabel::TranslationError => "translation_error",
            RelationLabel::Uncertain => "uncertain",
            RelationLabel::NoType => "no_type",
            RelationLabel::UnalignedExplicitation => "unaligned_explicitation",
            RelationLabel::UnalignedReduction => "unaligned_reduction",
        }
    }

    pub fn is_literal(self) -> bool {
        self == RelationLabel::Literal
    }
}

impl fmt::Display for RelationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown relation label `{0}`")]
pub struct UnknownRelation(pub String);

impl FromStr for RelationLabel {
    type Err = UnknownRelation;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RelationLabel::ALL
            .iter()
            .copied()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| UnknownRelation(s.to_string()))
    }
}

/// Sub-category refinement of a unit. Each variant belongs to exactly one
/// relation; see [`SubCategory::relation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubCategory {
    SlightSemanticChange,
    NamedEntity,
    FixedExpression,
    Adjective,
    Refined,
    ShortName,
    Hyperonym,
    Plural,
    Tense,
    PassiveToActive,
    Irony,
    ModulationOther,
    Proposition,
    ModulationTranspositionOther,
}

impl SubCategory {
    pub fn relation(self) -> RelationLabel {
        use SubCategory::*;
        match self {
            SlightSemanticChange | NamedEntity | FixedExpression | Adjective | Refined => {
                RelationLabel::Equivalence
            }
            ShortName | Hyperonym => RelationLabel::Generalization,
            Plural | Tense => RelationLabel::LexicalShift,
            PassiveToActive | Irony | ModulationOther => RelationLabel::Modulation,
            Proposition | ModulationTranspositionOther => RelationLabel::ModulationTransposition,
        }
    }

    /// Sub-categories admissible for `relation`, in report order.
    pub fn for_relation(relation: RelationLabel) -> &'static [SubCategory] {
        use SubCategory::*;
        match relation {
            RelationLabel::Equivalence => &[
                SlightSemanticChange,
                NamedEntity,
                FixedExpression,
                Adjective,
                Refined,
            ],
            RelationLabel::Generalization => &[ShortName, Hyperonym],
            RelationLabel::LexicalShift => &[Plural, Tense],
            RelationLabel::Modulation => &[PassiveToActive, Irony, ModulationOther],
            RelationLabel::ModulationTransposition => &[Proposition, ModulationTranspositionOther],
            _ => &[],
        }
    }

    pub fn as_str(self) -> &'static str {
        use SubCategory::*;
        match self {
            SlightSemanticChange => "slight_semantic_change",
            NamedEntity => "named_entity",
            FixedExpression => "fixed_expression",
            Adjective => "adjective",
            Refined => "refined",
            ShortName => "short_name",
            Hyperonym => "hyperonym",
            Plural => "plural",
            Tense => "tense",
            PassiveToActive => "passive_to_active",
            Irony => "irony",
            ModulationOther | ModulationTranspositionOther => "other",
            Proposition => "proposition",
        }
    }

    /// Parses a sub-category string in the context of its unit's relation.
    /// The string `other` is shared between modulation and
    /// modulation_transposition, so the relation is needed to resolve it.
    pub fn parse(relation: RelationLabel, s: &str) -> Option<SubCategory> {
        SubCategory::for_relation(relation)
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
    }
}

impl fmt::Display for SubCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Who produced a unit: a human annotator or the rule-based pre-annotator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    #[default]
    Manual,
    Suggested,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Manual => "manual",
            Provenance::Suggested => "suggested",
        }
    }
}

/// Dependency head of a token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Head {
    Root,
    Index(usize),
}

/// Per-token linguistic annotation (one CoNLL-U row).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LingToken {
    pub lemma: Option<String>,
    pub upos: String,
    pub feats: BTreeMap<String, String>,
    pub head: Head,
    pub deprel: String,
}

impl LingToken {
    pub fn new(upos: impl Into<String>, head: Head, deprel: impl Into<String>) -> Self {
        LingToken {
            lemma: None,
            upos: upos.into(),
            feats: BTreeMap::new(),
            head,
            deprel: deprel.into(),
        }
    }

    pub fn with_lemma(mut self, lemma: impl Into<String>) -> Self {
        self.lemma = Some(lemma.into());
        self
    }

    pub fn with_feat(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.feats.insert(key.into(), value.into());
        self
    }

    pub fn feat(&self, key: &str) -> Option<&str> {
        self.feats.get(key).map(String::as_str)
    }
}

/// One annotation unit: a source token group linked to a target token group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignedUnit {
    pub src: BTreeSet<usize>,
    pub tgt: BTreeSet<usize>,
    pub relation: RelationLabel,
    pub sub: Option<SubCategory>,
    pub provenance: Provenance,
}

impl AlignedUnit {
    pub fn new(
        src: impl IntoIterator<Item = usize>,
        tgt: impl IntoIterator<Item = usize>,
        relation: RelationLabel,
    ) -> Self {
        AlignedUnit {
            src: src.into_iter().collect(),
            tgt: tgt.into_iter().collect(),
            relation,
            sub: None,
            provenance: Provenance::Manual,
        }
    }

    pub fn with_sub(mut self, sub: SubCategory) -> Self {
        self.sub = Some(sub);
        self
    }

    pub fn suggested(mut self) -> Self {
        self.provenance = Provenance::Suggested;
        self
    }
}

/// The nine genres of the bundled corpus design. Genre is an open string;
/// these only fix the report order.
pub const KNOWN_GENRES: [&str; 9] = [
    "education",
    "laws",
    "microblog",
    "news",
    "officialDoc",
    "science",
    "scientificArticle",
    "spoken",
    "subtitles",
];

pub const UNKNOWN_GENRE: &str = "unknown";

/// Orders genres with the known ones first (in canonical order), then any
/// user-defined genres alphabetically.
pub fn genre_order(a: &str, b: &str) -> std::cmp::Ordering {
    let rank = |g: &str| {
        KNOWN_GENRES
            .iter()
            .position(|k| *k == g)
            .unwrap_or(usize::MAX)
    };
    rank(a).cmp(&rank(b)).then_with(|| a.cmp(b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentencePair {
    pub id: String,
    pub genre: String,
    pub src_tokens: Vec<String>,
    pub tgt_tokens: Vec<String>,
    pub units: Vec<AlignedUnit>,
    pub src_ling: Option<Vec<LingToken>>,
    pub tgt_ling: Option<Vec<LingToken>>,
}

impl SentencePair {
    pub fn new(
        id: impl Into<String>,
        genre: impl Into<String>,
        src_tokens: Vec<String>,
        tgt_tokens: Vec<String>,
    ) -> Self {
        SentencePair {
            id: id.into(),
            genre: genre.into(),
            src_tokens,
            tgt_tokens,
            units: Vec::new(),
            src_ling: None,
            tgt_ling: None,
        }
    }

    /// Convenience constructor from whitespace-tokenized strings.
    pub fn from_text(id: &str, genre: &str, src: &str, tgt: &str) -> Self {
        let split = |s: &str| s.split_whitespace().map(str::to_string).collect();
        SentencePair::new(id, genre, split(src), split(tgt))
    }

    pub fn with_units(mut self, units: Vec<AlignedUnit>) -> Self {
        self.units = units;
        self
    }

    pub fn src_surfaces<'a>(&'a self, group: &'a BTreeSet<usize>) -> impl Iterator<Item = &'a str> {
        group
            .iter()
            .filter_map(|&i| self.src_tokens.get(i).map(String::as_str))
    }

    pub fn tgt_surfaces<'a>(&'a self, group: &'a BTreeSet<usize>) -> impl Iterator<Item = &'a str> {
        group
            .iter()
            .filter_map(|&i| self.tgt_tokens.get(i).map(String::as_str))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    pub name: String,
    pub sentences: Vec<SentencePair>,
}

impl Corpus {
    pub fn new(name: impl Into<String>, sentences: Vec<SentencePair>) -> Self {
        Corpus {
            name: name.into(),
            sentences,
        }
    }

    pub fn get(&self, id: &str) -> Option<&SentencePair> {
        self.sentences.iter().find(|s| s.id == id)
    }

    pub fn units(&self) -> impl Iterator<Item = (&SentencePair, &AlignedUnit)> {
        self.sentences
            .iter()
            .flat_map(|s| s.units.iter().map(move |u| (s, u)))
    }

    /// Ids that occur more than once, in order of their second occurrence.
    pub fn duplicate_ids(&self) -> Vec<&str> {
        let mut seen = BTreeSet::new();
        self.sentences
            .iter()
            .filter(|s| !seen.insert(s.id.as_str()))
            .map(|s| s.id.as_str())
            .collect()
    }

    /// Genres present in the corpus, in report order.
    pub fn genres(&self) -> Vec<String> {
        let mut genres: Vec<String> = self
            .sentences
            .iter()
            .map(|s| s.genre.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        genres.sort_by(|a, b| genre_order(a, b));
        genres
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValidationMode {
    /// Every token must be covered by exactly one unit.
    Complete,
    /// Tokens may be uncovered while annotation is in progress.
    Draft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationCode {
    BadToken,
    EmptyUnit,
    BadUnalignedLabel,
    IndexOutOfRange,
    SubTagMismatch,
    Overlap,
    Uncovered,
    LingLengthMismatch,
    BadHead,
    RootCount,
}

impl ViolationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::BadToken => "BAD_TOKEN",
            ViolationCode::EmptyUnit => "EMPTY_UNIT",
            ViolationCode::BadUnalignedLabel => "BAD_UNALIGNED_LABEL",
            ViolationCode::IndexOutOfRange => "INDEX_OUT_OF_RANGE",
            ViolationCode::SubTagMismatch => "SUB_TAG_MISMATCH",
            ViolationCode::Overlap => "OVERLAP",
            ViolationCode::Uncovered => "UNCOVERED",
            ViolationCode::LingLengthMismatch => "LING_LENGTH_MISMATCH",
            ViolationCode::BadHead => "BAD_HEAD",
            ViolationCode::RootCount => "ROOT_COUNT",
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Source,
    Target,
}

/// Where a violation was found. The derived ordering is the report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Locus {
    Sentence,
    Token { side: Side, index: usize },
    Unit { index: usize },
    Ling { side: Side, index: usize },
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &Side| match s {
            Side::Source => "src",
            Side::Target => "tgt",
        };
        match self {
            Locus::Sentence => f.write_str("sentence"),
            Locus::Token { side: s, index } => write!(f, "{} token {}", side(s), index),
            Locus::Unit { index } => write!(f, "unit {}", index),
            Locus::Ling { side: s, index } => write!(f, "{} ling {}", side(s), index),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub locus: Locus,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }
}

fn unaligned_label_ok(unit: &AlignedUnit) -> bool {
    use RelationLabel::*;
    let src_empty = unit.src.is_empty();
    let tgt_empty = unit.tgt.is_empty();
    if src_empty && unit.relation != UnalignedExplicitation {
        return false;
    }
    if tgt_empty && !matches!(unit.relation, UnalignedReduction | NoType) {
        return false;
    }
    match unit.relation {
        UnalignedExplicitation => src_empty,
        UnalignedReduction => tgt_empty,
        _ => true,
    }
}

fn check_coverage(
    side: Side,
    len: usize,
    groups: impl Iterator<Item = (usize, BTreeSet<usize>)>,
    mode: ValidationMode,
    out: &mut Vec<Violation>,
) {
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); len];
    for (unit_idx, group) in groups {
        for i in group {
            if i < len {
                owners[i].push(unit_idx);
            }
        }
    }
    for (index, units) in owners.iter().enumerate() {
        let locus = Locus::Token { side, index };
        match units.len() {
            0 if mode == ValidationMode::Complete => out.push(Violation {
                code: ViolationCode::Uncovered,
                locus,
                message: "token is not covered by any unit".into(),
            }),
            0 | 1 => {}
            _ => out.push(Violation {
                code: ViolationCode::Overlap,
                locus,
                message: format!("token appears in units {:?}", units),
            }),
        }
    }
}

fn check_ling(side: Side, tokens: usize, ling: &[LingToken], out: &mut Vec<Violation>) {
    if ling.len() != tokens {
        out.push(Violation {
            code: ViolationCode::LingLengthMismatch,
            locus: Locus::Sentence,
            message: format!(
                "{:?} has {} tokens but {} linguistic annotations",
                side,
                tokens,
                ling.len()
            ),
        });
        return;
    }
    let mut roots = 0;
    for (index, tok) in ling.iter().enumerate() {
        match tok.head {
            Head::Root => roots += 1,
            Head::Index(h) if h == index || h >= ling.len() => out.push(Violation {
                code: ViolationCode::BadHead,
                locus: Locus::Ling { side, index },
                message: format!("head {} is invalid", h),
            }),
            Head::Index(_) => {}
        }
    }
    if !ling.is_empty() && roots != 1 {
        out.push(Violation {
            code: ViolationCode::RootCount,
            locus: Locus::Sentence,
            message: format!("{:?} dependency tree has {} roots", side, roots),
        });
    }
}

/// Checks every structural invariant of `pair` for the given mode.
/// Violations are reported in locus order; the report is empty iff the pair
/// is valid.
pub fn validate(pair: &SentencePair, mode: ValidationMode) -> ValidationReport {
    let mut out = Vec::new();

    for (side, tokens) in [
        (Side::Source, &pair.src_tokens),
        (Side::Target, &pair.tgt_tokens),
    ] {
        for (index, t) in tokens.iter().enumerate() {
            if t.is_empty() || t.chars().any(char::is_whitespace) {
                out.push(Violation {
                    code: ViolationCode::BadToken,
                    locus: Locus::Token { side, index },
                    message: format!("token {:?} is empty or contains whitespace", t),
                });
            }
        }
    }

    for (index, unit) in pair.units.iter().enumerate() {
        let locus = Locus::Unit { index };
        if unit.src.is_empty() && unit.tgt.is_empty() {
            out.push(Violation {
                code: ViolationCode::EmptyUnit,
                locus,
                message: "unit has no tokens on either side".into(),
            });
        } else if !unaligned_label_ok(unit) {
            out.push(Violation {
                code: ViolationCode::BadUnalignedLabel,
                locus,
                message: format!(
                    "relation {} does not fit a unit with {} source and {} target tokens",
                    unit.relation,
                    unit.src.len(),
                    unit.tgt.len()
                ),
            });
        }
        let bad_src = unit.src.iter().filter(|&&i| i >= pair.src_tokens.len());
        let bad_tgt = unit.tgt.iter().filter(|&&i| i >= pair.tgt_tokens.len());
        let bad: Vec<String> = bad_src
            .map(|i| format!("src {}", i))
            .chain(bad_tgt.map(|i| format!("tgt {}", i)))
            .collect();
        if !bad.is_empty() {
            out.push(Violation {
                code: ViolationCode::IndexOutOfRange,
                locus,
                message: format!("indices out of range: {}", bad.join(", ")),
            });
        }
        if let Some(sub) = unit.sub {
            if sub.relation() != unit.relation {
                out.push(Violation {
                    code: ViolationCode::SubTagMismatch,
                    locus,
                    message: format!("sub-category {} does not belong to {}", sub, unit.relation),
                });
            }
        }
    }

    check_coverage(
        Side::Source,
        pair.src_tokens.len(),
        pair.units
            .iter()
            .enumerate()
            .map(|(i, u)| (i, u.src.clone())),
        mode,
        &mut out,
    );
    check_coverage(
        Side::Target,
        pair.tgt_tokens.len(),
        pair.units
            .iter()
            .enumerate()
            .map(|(i, u)| (i, u.tgt.clone())),
        mode,
        &mut out,
    );

    if let Some(ling) = &pair.src_ling {
        check_ling(Side::Source, pair.src_tokens.len(), ling, &mut out);
    }
    if let Some(ling) = &pair.tgt_ling {
        check_ling(Side::Target, pair.tgt_tokens.len(), ling, &mut out);
    }

    out.sort_by(|a, b| a.locus.cmp(&b.locus).then(a.code.cmp(&b.code)));
    ValidationReport { violations: out }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectionError {
    #[error("source token {index} is not covered by any unit")]
    Incomplete { index: usize },
    #[error("source token {index} is covered by more than one unit")]
    Overlap { index: usize },
}

/// Projects unit relations onto source tokens: position `i` carries the
/// relation of the unit whose source group contains `i`. Explicitation
/// units contribute nothing since they have no source tokens.
pub fn project_source_relations(
    pair: &SentencePair,
) -> Result<Vec<RelationLabel>, ProjectionError> {
    let mut labels: Vec<Option<RelationLabel>> = vec![None; pair.src_tokens.len()];
    for unit in &pair.units {
        for &i in &unit.src {
            match labels.get_mut(i) {
                Some(slot @ None) => *slot = Some(unit.relation),
                Some(Some(_)) => return Err(ProjectionError::Overlap { index: i }),
                // Out-of-range indices are a validation concern.
                None => {}
            }
        }
    }
    labels
        .into_iter()
        .enumerate()
        .map(|(index, l)| l.ok_or(ProjectionError::Incomplete { index }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use RelationLabel::*;

    fn three_token() -> SentencePair {
        SentencePair::from_text("s1", "news", "a b c", "x y z")
    }

    #[test]
    fn relation_strings_round_trip() {
        for r in RelationLabel::ALL {
            assert_eq!(r.as_str().parse::<RelationLabel>().unwrap(), r);
        }
        assert!("paraphrase".parse::<RelationLabel>().is_err());
        assert!("Literal".parse::<RelationLabel>().is_err());
    }

    #[test]
    fn sub_category_parse_depends_on_relation() {
        assert_eq!(
            SubCategory::parse(Modulation, "other"),
            Some(SubCategory::ModulationOther)
        );
        assert_eq!(
            SubCategory::parse(ModulationTransposition, "other"),
            Some(SubCategory::ModulationTranspositionOther)
        );
        assert_eq!(SubCategory::parse(Literal, "plural"), None);
        assert_eq!(SubCategory::parse(Generalization, "plural"), None);
    }

    #[test]
    fn fully_covered_sentence_is_valid() {
        let pair = three_token().with_units(vec![
            AlignedUnit::new([0], [0], Literal),
            AlignedUnit::new([1], [1], Literal),
            AlignedUnit::new([2], [2], Literal),
        ]);
        assert!(validate(&pair, ValidationMode::Complete).is_empty());
        assert!(validate(&pair, ValidationMode::Draft).is_empty());
    }

    #[test]
    fn literal_unit_without_source_is_bad_unaligned_label() {
        let pair = three_token().with_units(vec![AlignedUnit::new([], [0], Literal)]);
        let report = validate(&pair, ValidationMode::Draft);
        assert_eq!(report.len(), 1);
        assert_eq!(report.violations[0].code, ViolationCode::BadUnalignedLabel);
    }

    #[test]
    fn single_overlap_yields_exactly_one_violation() {
        let pair = three_token().with_units(vec![
            AlignedUnit::new([0], [0], Literal),
            AlignedUnit::new([1, 2], [1], Literal),
            AlignedUnit::new([2], [2], Literal),
        ]);
        let report = validate(&pair, ValidationMode::Complete);
        assert_eq!(report.len(), 1, "{:?}", report);
        assert_eq!(report.violations[0].code, ViolationCode::Overlap);
        assert_eq!(
            report.violations[0].locus,
            Locus::Token {
                side: Side::Source,
                index: 2
            }
        );
    }

    #[test]
    fn unaligned_label_rules() {
        let ok = [
            AlignedUnit::new([], [0], UnalignedExplicitation),
            AlignedUnit::new([0], [], UnalignedReduction),
            AlignedUnit::new([0], [], NoType),
            AlignedUnit::new([0], [0], NoType),
        ];
        for u in ok {
            assert!(unaligned_label_ok(&u), "{:?}", u);
        }
        let bad = [
            AlignedUnit::new([0], [0], UnalignedExplicitation),
            AlignedUnit::new([0], [0], UnalignedReduction),
            AlignedUnit::new([0], [], UnalignedExplicitation),
            AlignedUnit::new([], [0], UnalignedReduction),
            AlignedUnit::new([0], [], Literal),
        ];
        for u in bad {
            assert!(!unaligned_label_ok(&u), "{:?}", u);
        }
    }

    #[test]
    fn draft_mode_tolerates_gaps_only() {
        let pair = three_token().with_units(vec![AlignedUnit::new([0], [0], Literal)]);
        assert!(validate(&pair, ValidationMode::Draft).is_empty());
        let complete = validate(&pair, ValidationMode::Complete);
        assert_eq!(complete.len(), 4);
        assert!(complete
            .violations
            .iter()
            .all(|v| v.code == ViolationCode::Uncovered));
    }

    #[test]
    fn sub_tag_must_match_relation() {
        let pair = three_token().with_units(vec![
            AlignedUnit::new([0, 1, 2], [0, 1, 2], Literal).with_sub(SubCategory::Plural)
        ]);
        let report = validate(&pair, ValidationMode::Complete);
        assert!(report.has(ViolationCode::SubTagMismatch));
    }

    #[test]
    fn ling_checks() {
        let mut pair = SentencePair::from_text("s", "news", "he runs", "他 跑");
        pair.units = vec![AlignedUnit::new([0, 1], [0, 1], Literal)];
        pair.src_ling = Some(vec![
            LingToken::new("PRON", Head::Index(1), "nsubj"),
            LingToken::new("VERB", Head::Root, "root"),
        ]);
        assert!(validate(&pair, ValidationMode::Complete).is_empty());

        pair.src_ling = Some(vec![
            LingToken::new("PRON", Head::Index(0), "nsubj"),
            LingToken::new("VERB", Head::Index(0), "root"),
        ]);
        let report = validate(&pair, ValidationMode::Complete);
        assert!(report.has(ViolationCode::BadHead));
        assert!(report.has(ViolationCode::RootCount));

        pair.src_ling = Some(vec![LingToken::new("PRON", Head::Root, "root")]);
        assert!(validate(&pair, ValidationMode::Complete).has(ViolationCode::LingLengthMismatch));
    }

    #[test]
    fn projection_follows_units() {
        let pair = SentencePair::from_text("s", "news", "Peter is six years old .", "彼得 六岁 。")
            .with_units(vec![
                AlignedUnit::new([0], [0], Literal),
                AlignedUnit::new([1], [], UnalignedReduction),
                AlignedUnit::new([2, 3, 4], [1], Literal),
                AlignedUnit::new([5], [2], Literal),
            ]);
        let labels = project_source_relations(&pair).unwrap();
        assert_eq!(labels[1], UnalignedReduction);
        assert_eq!(labels.iter().filter(|l| **l == Literal).count(), 5);
    }

    #[test]
    fn projection_requires_coverage() {
        let pair = three_token().with_units(vec![AlignedUnit::new([0, 1], [0], Literal)]);
        assert_eq!(
            project_source_relations(&pair),
            Err(ProjectionError::Incomplete { index: 2 })
        );
    }

    #[test]
    fn projection_ignores_explicitation() {
        let pair = SentencePair::from_text("s", "news", "the knife", "这 把 刀").with_units(vec![
            AlignedUnit::new([0], [0], Literal),
            AlignedUnit::new([], [1], UnalignedExplicitation),
            AlignedUnit::new([1], [2], Literal),
        ]);
        assert_eq!(
            project_source_relations(&pair).unwrap(),
            vec![Literal, Literal]
        );
    }

    #[test]
    fn genre_ordering_puts_known_first() {
        let mut g = vec!["zzz", "subtitles", "aaa", "education"];
        g.sort_by(|a, b| genre_order(a, b));
        assert_eq!(g, vec!["education", "subtitles", "aaa", "zzz"]);
    }
}
