//! Corpus-level tables for one corpus: relation distribution, literal
//! split by genre, token counts and source-token literal ratios.
//!
//! ```bash
//! cargo run --example corpus_statistics
//! ```

use std::path::Path;

use transrel::ingest::{load_project, ProjectManifest};
use transrel::metrics::{
    literal_split_by_genre, relation_distribution, token_counts, token_literal_stats,
};
use transrel::table::{export_table, ExportFormat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let manifest = ProjectManifest::from_path(
        &Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/demo/project.toml"),
    )?;
    let project = load_project(&manifest)?;
    let corpus = &project.candidate.corpus;

    for table in [
        relation_distribution(corpus),
        literal_split_by_genre(corpus),
        token_counts(corpus),
    ] {
        println!("## {}", table.title);
        print!("{}", export_table(&table, ExportFormat::Tsv));
        println!();
    }

    let stats = token_literal_stats(corpus)?;
    println!(
        "literal source tokens: {}/{} pooled {:.3}%, mean per-sentence ratio {:.3}",
        stats.literal_tokens, stats.tokens, stats.pooled_percentage, stats.mean_ratio
    );
    Ok(())
}
