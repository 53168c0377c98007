//! Drafts annotation units from word-alignment edges. Aligned components
//! become literal (or rule-refined) units; tokens without edges become
//! unaligned units.
//!
//! ```bash
//! cargo run --example preannotate_alignment
//! ```

use transrel::model::{validate, Head, LingToken, SentencePair, ValidationMode};
use transrel::preannotate::{group_edges, preannotate_sentence, suggest_for_draft, DraftDelta};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Plural "books" becomes bare 书, a lexical shift. "the" has no edge.
    let mut pair = SentencePair::from_text("s1", "news", "the books are here", "书 在 这里");
    pair.src_ling = Some(vec![
        LingToken::new("DET", Head::Index(1), "det"),
        LingToken::new("NOUN", Head::Index(2), "nsubj").with_feat("Number", "Plur"),
        LingToken::new("VERB", Head::Root, "root").with_feat("Tense", "Pres"),
        LingToken::new("ADV", Head::Index(2), "advmod"),
    ]);
    let edges = [(1, 0), (2, 1), (3, 2)];

    let components = group_edges(&edges, pair.src_tokens.len(), pair.tgt_tokens.len())?;
    println!("{} aligned components", components.len());

    let suggestions = preannotate_sentence(&pair, &edges)?;
    for s in &suggestions {
        println!(
            "{:<24} src={:?} tgt={:?} rule={} ({:?})",
            s.unit.relation.as_str(),
            s.unit.src,
            s.unit.tgt,
            s.rule_id,
            s.confidence
        );
    }
    let drafted = pair
        .clone()
        .with_units(suggestions.into_iter().map(|s| s.unit).collect());
    println!(
        "complete after accepting all: {}",
        validate(&drafted, ValidationMode::Complete).is_empty()
    );

    // On a partial draft only the gaps are filled.
    let mut partial = drafted.clone();
    partial.units.retain(|u| !u.tgt.is_empty());
    for delta in suggest_for_draft(&partial, &edges)? {
        if let DraftDelta::Add { suggestion } = delta {
            println!(
                "add {} src={:?}",
                suggestion.unit.relation, suggestion.unit.src
            );
        }
    }
    Ok(())
}
