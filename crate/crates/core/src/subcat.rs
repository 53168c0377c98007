//! Sub-category classification of non-literal units and POS/dependency
//! profiling of unaligned units.
//!
//! Classifiers are deterministic and refuse units of the wrong relation.
//! When a unit already carries a sub-category (gold annotation), the
//! profiling tables count that instead of re-classifying.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use thiserror::Error;

use crate::model::{
    AlignedUnit, Corpus, Head, LingToken, RelationLabel, SentencePair, Side, SubCategory,
};
use crate::table::{Cell, StatTable};

pub const MORE_THAN_ONE_TOKEN: &str = "More than one token";
pub const UNCLASSIFIED: &str = "unclassified";
pub const OTHERS: &str = "others";

const PLURAL_MARKERS: [char; 2] = ['们', '些'];
const PASSIVE_MARKERS: [&str; 2] = ["被", "由"];
const TARGET_NEGATIONS: [&str; 5] = ["不", "没", "未", "非", "没有"];
const SOURCE_NEGATIONS: [&str; 9] = [
    "not", "n't", "no", "never", "none", "nothing", "neither", "nor", "without",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubcatError {
    #[error("empty token group")]
    EmptyGroup,
    #[error("token index {0} outside the linguistic annotation")]
    IndexOutOfRange(usize),
    #[error("expected a {expected} unit, found {found}")]
    WrongRelation {
        expected: &'static str,
        found: RelationLabel,
    },
    #[error("sentence {id}: no {side:?} linguistic annotation")]
    MissingLing { id: String, side: Side },
    #[error("no lexical-shift rule fired")]
    NoRuleFired,
}

/// The syntactic head of a token group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHead {
    pub index: usize,
    pub upos: String,
    pub deprel: String,
    /// Zero or several tokens of the group have their head outside it; the
    /// first token was used.
    pub ambiguous: bool,
}

/// Tokens of `group` whose dependency head is ROOT or lies outside the group.
pub fn external_head_tokens(group: &BTreeSet<usize>, ling: &[LingToken]) -> Vec<usize> {
    group
        .iter()
        .copied()
        .filter(|&i| match ling[i].head {
            Head::Root => true,
            Head::Index(h) => !group.contains(&h),
        })
        .collect()
}

/// Finds the head of a token group: the unique token whose dependency head
/// lies outside the group. Falls back to the first token, flagged
/// ambiguous, when there is no unique such token.
pub fn group_head_pos(
    group: &BTreeSet<usize>,
    ling: &[LingToken],
) -> Result<GroupHead, SubcatError> {
    let first = *group.iter().next().ok_or(SubcatError::EmptyGroup)?;
    if let Some(&bad) = group.iter().find(|&&i| i >= ling.len()) {
        return Err(SubcatError::IndexOutOfRange(bad));
    }
    let external = external_head_tokens(group, ling);
    let (index, ambiguous) = match external.as_slice() {
        [only] => (*only, false),
        _ => (first, group.len() > 1),
    };
    Ok(GroupHead {
        index,
        upos: ling[index].upos.clone(),
        deprel: ling[index].deprel.clone(),
        ambiguous,
    })
}

fn side_ling(pair: &SentencePair, side: Side) -> Result<&[LingToken], SubcatError> {
    let ling = match side {
        Side::Source => pair.src_ling.as_deref(),
        Side::Target => pair.tgt_ling.as_deref(),
    };
    ling.ok_or_else(|| SubcatError::MissingLing {
        id: pair.id.clone(),
        side,
    })
}

fn expect_relation(
    unit: &AlignedUnit,
    allowed: &[RelationLabel],
    expected: &'static str,
) -> Result<(), SubcatError> {
    if allowed.contains(&unit.relation) {
        Ok(())
    } else {
        Err(SubcatError::WrongRelation {
            expected,
            found: unit.relation,
        })
    }
}

// ---------------------------------------------------------------------------
// External resources

/// Named-entity spans over source tokens, keyed by sentence id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NamedEntitySpans {
    pub spans: BTreeMap<String, Vec<RangeInclusive<usize>>>,
}

impl NamedEntitySpans {
    pub fn add(&mut self, id: impl Into<String>, span: RangeInclusive<usize>) {
        self.spans.entry(id.into()).or_default().push(span);
    }

    pub fn overlaps(&self, id: &str, group: &BTreeSet<usize>) -> bool {
        self.spans
            .get(id)
            .is_some_and(|spans| spans.iter().any(|r| group.iter().any(|i| r.contains(i))))
    }
}

fn normalize_expression(s: &str) -> String {
    s.split_whitespace()
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Fixed expressions matched against the space-joined, lowercased source
/// group.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FixedExpressionLexicon {
    entries: BTreeSet<String>,
}

impl FixedExpressionLexicon {
    pub fn insert(&mut self, expression: &str) {
        let norm = normalize_expression(expression);
        if !norm.is_empty() {
            self.entries.insert(norm);
        }
    }

    pub fn contains(&self, expression: &str) -> bool {
        self.entries.contains(&normalize_expression(expression))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl<S: AsRef<str>> FromIterator<S> for FixedExpressionLexicon {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let mut lex = FixedExpressionLexicon::default();
        for e in iter {
            lex.insert(e.as_ref());
        }
        lex
    }
}

/// Source lemma (lowercased) to a set of target-language strings. Used both
/// as a hyperonym lexicon and as a literal gloss table.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HypernymLexicon {
    map: BTreeMap<String, BTreeSet<String>>,
}

pub type GlossTable = HypernymLexicon;

impl HypernymLexicon {
    pub fn insert(&mut self, lemma: &str, target: impl Into<String>) {
        self.map
            .entry(normalize_expression(lemma))
            .or_default()
            .insert(target.into());
    }

    pub fn get(&self, lemma: &str) -> Option<&BTreeSet<String>> {
        self.map.get(&normalize_expression(lemma))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

#[derive(Debug, Clone, Default)]
pub struct Resources {
    pub named_entities: Option<NamedEntitySpans>,
    pub fixed_expressions: Option<FixedExpressionLexicon>,
    pub hypernyms: Option<HypernymLexicon>,
    pub glosses: Option<GlossTable>,
}

/// Lookup keys for a source token: its lemma and its surface.
fn token_keys(pair: &SentencePair, i: usize) -> Vec<String> {
    let mut keys = Vec::new();
    if let Some(lemma) = pair
        .src_ling
        .as_ref()
        .and_then(|l| l.get(i))
        .and_then(|t| t.lemma.clone())
    {
        keys.push(lemma.to_lowercase());
    }
    if let Some(s) = pair.src_tokens.get(i) {
        let s = s.to_lowercase();
        if !keys.contains(&s) {
            keys.push(s);
        }
    }
    keys
}

fn is_cjk_ideograph(c: char) -> bool {
    matches!(c,
        '\u{4E00}'..='\u{9FFF}'
        | '\u{3400}'..='\u{4DBF}'
        | '\u{F900}'..='\u{FAFF}'
        | '\u{20000}'..='\u{2A6DF}')
}

fn joined_target(pair: &SentencePair, unit: &AlignedUnit) -> String {
    pair.tgt_surfaces(&unit.tgt).collect()
}

fn joined_source(pair: &SentencePair, unit: &AlignedUnit) -> String {
    pair.src_surfaces(&unit.src).collect::<Vec<_>>().join(" ")
}

// ---------------------------------------------------------------------------
// Classifiers

/// A classifier result. `low_confidence` marks defaults taken because a
/// resource was missing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub sub: SubCategory,
    pub low_confidence: bool,
}

impl Classification {
    fn sure(sub: SubCategory) -> Self {
        Classification {
            sub,
            low_confidence: false,
        }
    }
}

/// Equivalence cascade: named entity, fixed expression, four-character
/// adjective rendering, otherwise slight semantic change. `refined` is
/// never assigned automatically.
pub fn classify_equivalence(
    pair: &SentencePair,
    unit: &AlignedUnit,
    resources: &Resources,
) -> Result<Classification, SubcatError> {
    expect_relation(unit, &[RelationLabel::Equivalence], "equivalence")?;
    if let Some(ne) = &resources.named_entities {
        if ne.overlaps(&pair.id, &unit.src) {
            return Ok(Classification::sure(SubCategory::NamedEntity));
        }
    }
    if let Some(lex) = &resources.fixed_expressions {
        if lex.contains(&joined_source(pair, unit)) {
            return Ok(Classification::sure(SubCategory::FixedExpression));
        }
    }
    if let (Some(ling), false) = (pair.src_ling.as_deref(), unit.src.is_empty()) {
        let head = group_head_pos(&unit.src, ling)?;
        let target = joined_target(pair, unit);
        if head.upos == "ADJ" && target.chars().count() == 4 && target.chars().all(is_cjk_ideograph)
        {
            return Ok(Classification::sure(SubCategory::Adjective));
        }
    }
    Ok(Classification {
        sub: SubCategory::SlightSemanticChange,
        low_confidence: resources.named_entities.is_none() || resources.fixed_expressions.is_none(),
    })
}

/// Short name when a multi-token source is rendered by fewer target tokens
/// that each gloss some source token; otherwise hyperonym.
pub fn classify_generalization(
    pair: &SentencePair,
    unit: &AlignedUnit,
    resources: &Resources,
) -> Result<Classification, SubcatError> {
    expect_relation(unit, &[RelationLabel::Generalization], "generalization")?;
    if unit.src.len() >= 2 && unit.tgt.len() < unit.src.len() {
        match &resources.glosses {
            Some(gloss) => {
                let glossed = pair.tgt_surfaces(&unit.tgt).all(|t| {
                    unit.src.iter().any(|&i| {
                        token_keys(pair, i)
                            .iter()
                            .any(|k| gloss.get(k).is_some_and(|g| g.contains(t)))
                    })
                });
                if glossed {
                    return Ok(Classification::sure(SubCategory::ShortName));
                }
            }
            None => {
                return Ok(Classification {
                    sub: SubCategory::ShortName,
                    low_confidence: true,
                })
            }
        }
    }
    let confirmed = resources.hypernyms.as_ref().is_some_and(|lex| {
        let target = joined_target(pair, unit);
        let mut keys: Vec<String> = unit.src.iter().flat_map(|&i| token_keys(pair, i)).collect();
        keys.push(joined_source(pair, unit).to_lowercase());
        keys.iter().any(|k| {
            lex.get(k).is_some_and(|hyper| {
                hyper.contains(&target) || pair.tgt_surfaces(&unit.tgt).any(|t| hyper.contains(t))
            })
        })
    });
    Ok(Classification {
        sub: SubCategory::Hyperonym,
        low_confidence: !confirmed,
    })
}

/// The lexical-shift rule shared with pre-annotation: a plural source token
/// rendered without a plural marker, or a past/participle verb form.
/// Plural wins when both fire. Returns `None` without source annotation.
pub fn lexical_shift_rule(pair: &SentencePair, unit: &AlignedUnit) -> Option<SubCategory> {
    let ling = pair.src_ling.as_deref()?;
    let tokens: Vec<&LingToken> = unit.src.iter().filter_map(|&i| ling.get(i)).collect();
    let plural_src = tokens.iter().any(|t| t.feat("Number") == Some("Plur"));
    let marked = pair
        .tgt_surfaces(&unit.tgt)
        .any(|t| t.chars().any(|c| PLURAL_MARKERS.contains(&c)));
    if plural_src && !marked {
        return Some(SubCategory::Plural);
    }
    let tensed = tokens
        .iter()
        .any(|t| t.feat("Tense") == Some("Past") || t.feat("VerbForm") == Some("Part"));
    tensed.then_some(SubCategory::Tense)
}

pub fn classify_lexical_shift(
    pair: &SentencePair,
    unit: &AlignedUnit,
) -> Result<SubCategory, SubcatError> {
    expect_relation(unit, &[RelationLabel::LexicalShift], "lexical_shift")?;
    side_ling(pair, Side::Source)?;
    lexical_shift_rule(pair, unit).ok_or(SubcatError::NoRuleFired)
}

fn is_source_negation(pair: &SentencePair, i: usize) -> bool {
    let ling_neg = pair
        .src_ling
        .as_ref()
        .and_then(|l| l.get(i))
        .is_some_and(|t| t.feat("Polarity") == Some("Neg"));
    ling_neg
        || token_keys(pair, i)
            .iter()
            .any(|k| SOURCE_NEGATIONS.contains(&k.as_str()))
}

/// Passive-to-active, irony (negated rendering of a non-negated source) or
/// other.
pub fn classify_modulation(
    pair: &SentencePair,
    unit: &AlignedUnit,
) -> Result<SubCategory, SubcatError> {
    expect_relation(unit, &[RelationLabel::Modulation], "modulation")?;
    if let Some(ling) = pair.src_ling.as_deref() {
        let tokens: Vec<&LingToken> = unit.src.iter().filter_map(|&i| ling.get(i)).collect();
        let voice_pass = tokens.iter().any(|t| t.feat("Voice") == Some("Pass"));
        let be_aux = tokens
            .iter()
            .any(|t| t.upos == "AUX" && t.lemma.as_deref() == Some("be"));
        let participle = tokens.iter().any(|t| t.feat("VerbForm") == Some("Part"));
        let passive = voice_pass || (be_aux && participle);
        let marked = pair
            .tgt_surfaces(&unit.tgt)
            .any(|t| PASSIVE_MARKERS.contains(&t));
        if passive && !marked {
            return Ok(SubCategory::PassiveToActive);
        }
    }
    let tgt_neg = pair
        .tgt_surfaces(&unit.tgt)
        .any(|t| TARGET_NEGATIONS.contains(&t));
    let src_neg = unit.src.iter().any(|&i| is_source_negation(pair, i));
    if tgt_neg && !src_neg {
        return Ok(SubCategory::Irony);
    }
    Ok(SubCategory::ModulationOther)
}

pub fn classify_mod_transposition(
    pair: &SentencePair,
    unit: &AlignedUnit,
) -> Result<SubCategory, SubcatError> {
    expect_relation(
        unit,
        &[RelationLabel::ModulationTransposition],
        "modulation_transposition",
    )?;
    let head = group_head_pos(&unit.src, side_ling(pair, Side::Source)?)?;
    Ok(if head.upos == "ADP" {
        SubCategory::Proposition
    } else {
        SubCategory::ModulationTranspositionOther
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ParticularizationClass {
    Pronoun,
    Noun,
    Verb,
    AdvAdj,
    Other,
}

impl ParticularizationClass {
    pub const ALL: [ParticularizationClass; 5] = [
        ParticularizationClass::Pronoun,
        ParticularizationClass::Noun,
        ParticularizationClass::Verb,
        ParticularizationClass::AdvAdj,
        ParticularizationClass::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ParticularizationClass::Pronoun => "pronoun",
            ParticularizationClass::Noun => "noun",
            ParticularizationClass::Verb => "verb",
            ParticularizationClass::AdvAdj => "adv_adj",
            ParticularizationClass::Other => "other",
        }
    }

    pub fn from_upos(upos: &str) -> Self {
        match upos {
            "PRON" => ParticularizationClass::Pronoun,
            "NOUN" | "PROPN" => ParticularizationClass::Noun,
            "VERB" | "AUX" => ParticularizationClass::Verb,
            "ADJ" | "ADV" => ParticularizationClass::AdvAdj,
            _ => ParticularizationClass::Other,
        }
    }
}

pub fn classify_particularization_pos(
    pair: &SentencePair,
    unit: &AlignedUnit,
) -> Result<ParticularizationClass, SubcatError> {
    expect_relation(
        unit,
        &[RelationLabel::Particularization],
        "particularization",
    )?;
    let head = group_head_pos(&unit.src, side_ling(pair, Side::Source)?)?;
    Ok(ParticularizationClass::from_upos(&head.upos))
}

/// Source and target head POS of a transposition unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PosTransfer {
    pub src_pos: String,
    pub tgt_pos: String,
}

impl PosTransfer {
    pub fn new(src_pos: impl Into<String>, tgt_pos: impl Into<String>) -> Self {
        PosTransfer {
            src_pos: src_pos.into(),
            tgt_pos: tgt_pos.into(),
        }
    }

    /// Same POS on both sides: a valid result, but not a category change.
    pub fn is_unusual(&self) -> bool {
        self.src_pos == self.tgt_pos
    }

    pub fn label(&self) -> String {
        format!("{}---{}", self.src_pos, self.tgt_pos)
    }
}

pub fn transposition_transfer(
    pair: &SentencePair,
    unit: &AlignedUnit,
) -> Result<PosTransfer, SubcatError> {
    expect_relation(
        unit,
        &[
            RelationLabel::Transposition,
            RelationLabel::ModulationTransposition,
        ],
        "transposition",
    )?;
    let src = group_head_pos(&unit.src, side_ling(pair, Side::Source)?)?;
    let tgt = group_head_pos(&unit.tgt, side_ling(pair, Side::Target)?)?;
    Ok(PosTransfer::new(src.upos, tgt.upos))
}

// ---------------------------------------------------------------------------
// Corpus-level profiles

/// Label counts; rows sort by count descending then label.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Profile {
    pub counts: BTreeMap<String, u64>,
}

impl Profile {
    pub fn add(&mut self, label: impl Into<String>) {
        *self.counts.entry(label.into()).or_default() += 1;
    }

    pub fn merge(&mut self, other: &Profile) {
        for (k, v) in &other.counts {
            *self.counts.entry(k.clone()).or_default() += v;
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn get(&self, label: &str) -> u64 {
        self.counts.get(label).copied().unwrap_or(0)
    }

    pub fn sorted(&self) -> Vec<(&str, u64)> {
        let mut rows: Vec<(&str, u64)> =
            self.counts.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        rows.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
        rows
    }

    /// Renders the profile; with `top_k`, rows past the first `k` are
    /// folded into an `others` row. A total row is always appended when
    /// the profile is non-empty.
    pub fn to_table(
        &self,
        title: &str,
        row_header: &str,
        provenance: &str,
        top_k: Option<usize>,
    ) -> StatTable {
        let mut table = StatTable::new(title, row_header, ["count"], provenance);
        let rows = self.sorted();
        let keep = top_k.unwrap_or(rows.len()).min(rows.len());
        for (label, n) in &rows[..keep] {
            table.push_row(*label, vec![Cell::Count(*n)]);
        }
        let tail: u64 = rows[keep..].iter().map(|(_, n)| n).sum();
        if keep < rows.len() {
            table.push_row(OTHERS, vec![Cell::Count(tail)]);
        }
        if !rows.is_empty() {
            table.push_row("Total", vec![Cell::Count(self.total())]);
        }
        table
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnalignedSide {
    Explicitation,
    Reduction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileFacet {
    Pos,
    Dep,
}

/// Counts unaligned units of one side by the POS or dependency relation of
/// their group head. Ambiguous multi-token reduction groups are counted as
/// [`MORE_THAN_ONE_TOKEN`].
pub fn profile_unaligned(
    corpus: &Corpus,
    side: UnalignedSide,
    facet: ProfileFacet,
) -> Result<Profile, SubcatError> {
    let (relation, ling_side) = match side {
        UnalignedSide::Explicitation => (RelationLabel::UnalignedExplicitation, Side::Target),
        UnalignedSide::Reduction => (RelationLabel::UnalignedReduction, Side::Source),
    };
    let mut profile = Profile::default();
    for (pair, unit) in corpus.units().filter(|(_, u)| u.relation == relation) {
        let ling = side_ling(pair, ling_side)?;
        let group = match ling_side {
            Side::Source => &unit.src,
            Side::Target => &unit.tgt,
        };
        let head = group_head_pos(group, ling)?;
        if side == UnalignedSide::Reduction && head.ambiguous {
            profile.add(MORE_THAN_ONE_TOKEN);
            continue;
        }
        profile.add(match facet {
            ProfileFacet::Pos => head.upos,
            ProfileFacet::Dep => head.deprel,
        });
    }
    Ok(profile)
}

/// The sub-class label a unit is counted under in the sub-category tables.
/// Gold sub-categories win; units that cannot be classified (missing
/// annotation, no rule fired) land in [`UNCLASSIFIED`].
pub fn unit_class(
    pair: &SentencePair,
    unit: &AlignedUnit,
    resources: &Resources,
) -> Option<String> {
    if let Some(sub) = unit.sub {
        return Some(sub.as_str().to_string());
    }
    let label = match unit.relation {
        RelationLabel::Equivalence => {
            classify_equivalence(pair, unit, resources).map(|c| c.sub.as_str().to_string())
        }
        RelationLabel::Generalization => {
            classify_generalization(pair, unit, resources).map(|c| c.sub.as_str().to_string())
        }
        RelationLabel::LexicalShift => {
            classify_lexical_shift(pair, unit).map(|s| s.as_str().to_string())
        }
        RelationLabel::Modulation => {
            classify_modulation(pair, unit).map(|s| s.as_str().to_string())
        }
        RelationLabel::ModulationTransposition => {
            classify_mod_transposition(pair, unit).map(|s| s.as_str().to_string())
        }
        RelationLabel::Particularization => {
            classify_particularization_pos(pair, unit).map(|c| c.as_str().to_string())
        }
        RelationLabel::Transposition => transposition_transfer(pair, unit).map(|t| t.label()),
        _ => return None,
    };
    Some(label.unwrap_or_else(|_| UNCLASSIFIED.to_string()))
}

/// Relations with a sub-category breakdown, in report order.
pub const PROFILED_RELATIONS: [RelationLabel; 7] = [
    RelationLabel::Equivalence,
    RelationLabel::Generalization,
    RelationLabel::LexicalShift,
    RelationLabel::Modulation,
    RelationLabel::ModulationTransposition,
    RelationLabel::Particularization,
    RelationLabel::Transposition,
];

/// Counts units of `relation` per sub-class. Every unit of the relation is
/// counted exactly once.
pub fn subcategory_profile(
    corpus: &Corpus,
    relation: RelationLabel,
    resources: &Resources,
) -> Profile {
    let mut profile = Profile::default();
    for (pair, unit) in corpus.units().filter(|(_, u)| u.relation == relation) {
        if let Some(class) = unit_class(pair, unit, resources) {
            profile.add(class);
        }
    }
    profile
}

/// Sub-category table with the relation's fixed classes in order (zero rows
/// included), then any extra classes such as `unclassified`, then a total.
/// Transposition transfers are sorted by frequency instead, with `top_k`
/// folding the tail.
pub fn subcategory_table(
    corpus: &Corpus,
    relation: RelationLabel,
    resources: &Resources,
    top_k: Option<usize>,
) -> StatTable {
    let profile = subcategory_profile(corpus, relation, resources);
    let title = format!("{} sub-categories ({})", relation, corpus.name);
    let provenance = format!("subcat::subcategory_table({})", relation);
    if relation == RelationLabel::Transposition {
        let mut t = profile.to_table(&title, "pos_transfer", &provenance, top_k);
        if profile.total() == 0 {
            t.notes.push(format!("no {} units", relation));
        }
        return t;
    }
    let fixed: Vec<&str> = if relation == RelationLabel::Particularization {
        ParticularizationClass::ALL
            .iter()
            .map(|c| c.as_str())
            .collect()
    } else {
        SubCategory::for_relation(relation)
            .iter()
            .map(|c| c.as_str())
            .collect()
    };
    let mut table = StatTable::new(title, "sub_category", ["count"], provenance);
    if profile.total() == 0 {
        table.notes.push(format!("no {} units", relation));
        return table;
    }
    for label in &fixed {
        table.push_row(*label, vec![Cell::Count(profile.get(label))]);
    }
    for (label, n) in profile.sorted() {
        if !fixed.contains(&label) {
            table.push_row(label, vec![Cell::Count(n)]);
        }
    }
    table.push_row("Total", vec![Cell::Count(profile.total())]);
    table
}
