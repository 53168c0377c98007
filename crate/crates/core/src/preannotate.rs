//! Draft annotation from word alignments.
//!
//! Alignment edges are grouped into connected components, each becoming a
//! `literal` unit. Rules then relabel some of them (lexical shift, then
//! transposition) and unaligned tokens become explicitation or reduction
//! units, so the draft always satisfies the partition invariant. Every
//! generated unit has provenance `suggested`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::model::{AlignedUnit, Provenance, RelationLabel, SentencePair};
use crate::subcat::{group_head_pos, lexical_shift_rule};

pub const RULE_LITERAL: &str = "alignment.literal";
pub const RULE_REDUCTION: &str = "unaligned.reduction";
pub const RULE_EXPLICITATION: &str = "unaligned.explicitation";
pub const RULE_PLURAL: &str = "lexical_shift.plural";
pub const RULE_TENSE: &str = "lexical_shift.tense";
pub const RULE_TRANSPOSITION: &str = "transposition.pos_transfer";

/// Source-to-target head POS changes that are suggested as transpositions.
pub const TRANSPOSITION_TRANSFERS: [(&str, &str); 12] = [
    ("ADP", "PART"),
    ("ADJ", "NOUN"),
    ("NOUN", "VERB"),
    ("ADP", "NOUN"),
    ("ADP", "VERB"),
    ("ADJ", "VERB"),
    ("VERB", "NOUN"),
    ("ADJ", "ADV"),
    ("DET", "PART"),
    ("PRON", "PART"),
    ("ADJ", "PART"),
    ("ADJ", "PROPN"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Confidence {
    /// Follows from the data alone (an unaligned token).
    RuleCertain,
    /// A heuristic that an annotator should review.
    RuleHeuristic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Suggestion {
    pub unit: AlignedUnit,
    pub confidence: Confidence,
    pub rule_id: &'static str,
}

impl Suggestion {
    fn new(unit: AlignedUnit, confidence: Confidence, rule_id: &'static str) -> Self {
        Suggestion {
            unit: unit.suggested(),
            confidence,
            rule_id,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreannotateError {
    #[error("edge {src}-{tgt} out of bounds ({src_len}x{tgt_len})")]
    EdgeOutOfBounds {
        src: usize,
        tgt: usize,
        src_len: usize,
        tgt_len: usize,
    },
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Connected components of the bipartite alignment graph as `literal`
/// units, ordered by smallest source index. Tokens without edges are not
/// part of any unit.
pub fn group_edges(
    edges: &[(usize, usize)],
    n_src: usize,
    n_tgt: usize,
) -> Result<Vec<AlignedUnit>, PreannotateError> {
    if let Some(&(s, t)) = edges.iter().find(|(s, t)| *s >= n_src || *t >= n_tgt) {
        return Err(PreannotateError::EdgeOutOfBounds {
            src: s,
            tgt: t,
            src_len: n_src,
            tgt_len: n_tgt,
        });
    }
    let mut parent: Vec<usize> = (0..n_src + n_tgt).collect();
    for &(s, t) in edges {
        let a = find(&mut parent, s);
        let b = find(&mut parent, n_src + t);
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, (BTreeSet<usize>, BTreeSet<usize>)> = BTreeMap::new();
    for &(s, t) in edges {
        let root = find(&mut parent, s);
        let g = groups.entry(root).or_default();
        g.0.insert(s);
        g.1.insert(t);
    }
    // Roots are the smallest node of each component, which is its smallest
    // source index since every component has a source node.
    Ok(groups
        .into_values()
        .map(|(src, tgt)| AlignedUnit {
            src,
            tgt,
            relation: RelationLabel::Literal,
            sub: None,
            provenance: Provenance::Suggested,
        })
        .collect())
}

fn uncovered_runs(len: usize, covered: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let mut runs: Vec<BTreeSet<usize>> = Vec::new();
    let mut current = BTreeSet::new();
    for i in 0..len {
        if covered.contains(&i) {
            if !current.is_empty() {
                runs.push(std::mem::take(&mut current));
            }
        } else {
            current.insert(i);
        }
    }
    if !current.is_empty() {
        runs.push(current);
    }
    runs
}

/// One reduction unit per maximal run of uncovered source tokens and one
/// explicitation unit per run of uncovered target tokens.
pub fn suggest_unaligned(pair: &SentencePair) -> Vec<Suggestion> {
    let src_cov: BTreeSet<usize> = pair
        .units
        .iter()
        .flat_map(|u| u.src.iter().copied())
        .collect();
    let tgt_cov: BTreeSet<usize> = pair
        .units
        .iter()
        .flat_map(|u| u.tgt.iter().copied())
        .collect();
    let reductions = uncovered_runs(pair.src_tokens.len(), &src_cov)
        .into_iter()
        .map(|run| {
            Suggestion::new(
                AlignedUnit::new(run, [], RelationLabel::UnalignedReduction),
                Confidence::RuleCertain,
                RULE_REDUCTION,
            )
        });
    let explicitations = uncovered_runs(pair.tgt_tokens.len(), &tgt_cov)
        .into_iter()
        .map(|run| {
            Suggestion::new(
                AlignedUnit::new([], run, RelationLabel::UnalignedExplicitation),
                Confidence::RuleCertain,
                RULE_EXPLICITATION,
            )
        });
    reductions.chain(explicitations).collect()
}

/// Relabels a unit as a lexical shift when the shared rule fires.
pub fn suggest_lexical_shift(pair: &SentencePair, unit: &AlignedUnit) -> Option<Suggestion> {
    let sub = lexical_shift_rule(pair, unit)?;
    let rule = match sub {
        crate::model::SubCategory::Plural => RULE_PLURAL,
        _ => RULE_TENSE,
    };
    let relabeled = AlignedUnit {
        relation: RelationLabel::LexicalShift,
        sub: Some(sub),
        ..unit.clone()
    };
    Some(Suggestion::new(relabeled, Confidence::RuleHeuristic, rule))
}

/// Relabels a unit as a transposition when its head POS changes along one
/// of the [`TRANSPOSITION_TRANSFERS`].
pub fn suggest_transposition(pair: &SentencePair, unit: &AlignedUnit) -> Option<Suggestion> {
    let src = group_head_pos(&unit.src, pair.src_ling.as_deref()?).ok()?;
    let tgt = group_head_pos(&unit.tgt, pair.tgt_ling.as_deref()?).ok()?;
    TRANSPOSITION_TRANSFERS
        .contains(&(src.upos.as_str(), tgt.upos.as_str()))
        .then(|| {
            let relabeled = AlignedUnit {
                relation: RelationLabel::Transposition,
                sub: None,
                ..unit.clone()
            };
            Suggestion::new(relabeled, Confidence::RuleHeuristic, RULE_TRANSPOSITION)
        })
}

fn refine(pair: &SentencePair, unit: &AlignedUnit) -> Option<Suggestion> {
    suggest_lexical_shift(pair, unit).or_else(|| suggest_transposition(pair, unit))
}

/// Drafts a complete annotation for one sentence. The resulting units
/// (`suggestion.unit`) pass complete validation.
pub fn preannotate_sentence(
    pair: &SentencePair,
    edges: &[(usize, usize)],
) -> Result<Vec<Suggestion>, PreannotateError> {
    let literal = group_edges(edges, pair.src_tokens.len(), pair.tgt_tokens.len())?;
    let mut out: Vec<Suggestion> = literal
        .iter()
        .map(|u| {
            refine(pair, u).unwrap_or_else(|| {
                Suggestion::new(u.clone(), Confidence::RuleHeuristic, RULE_LITERAL)
            })
        })
        .collect();
    let drafted = SentencePair {
        units: literal,
        ..pair.clone()
    };
    out.extend(suggest_unaligned(&drafted));
    Ok(out)
}

/// A proposed change to an existing draft.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DraftDelta {
    /// Replace the unit at `index` (a still-unreviewed suggested literal).
    Replace {
        index: usize,
        suggestion: Suggestion,
    },
    /// Add a unit for tokens nothing covers yet.
    Add { suggestion: Suggestion },
}

/// Suggestions for a sentence in any state of annotation. A sentence without
/// units gets a full draft from `edges`. Otherwise only units that are still
/// `literal` with provenance `suggested` are refined (reviewed units are
/// left alone) and uncovered tokens are offered as unaligned units.
pub fn suggest_for_draft(
    pair: &SentencePair,
    edges: &[(usize, usize)],
) -> Result<Vec<DraftDelta>, PreannotateError> {
    if pair.units.is_empty() {
        return Ok(preannotate_sentence(pair, edges)?
            .into_iter()
            .map(|suggestion| DraftDelta::Add { suggestion })
            .collect());
    }
    let mut deltas: Vec<DraftDelta> = pair
        .units
        .iter()
        .enumerate()
        .filter(|(_, u)| {
            u.relation == RelationLabel::Literal && u.provenance == Provenance::Suggested
        })
        .filter_map(|(index, u)| {
            refine(pair, u).map(|suggestion| DraftDelta::Replace { index, suggestion })
        })
        .collect();
    deltas.extend(
        suggest_unaligned(pair)
            .into_iter()
            .map(|suggestion| DraftDelta::Add { suggestion }),
    );
    Ok(deltas)
}
