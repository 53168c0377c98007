//! Compares a candidate translation against a reference over the same
//! source: per-relation discrepancies under both denominator policies and
//! per-sentence relation edit distances.
//!
//! ```bash
//! cargo run --example compare_corpora
//! ```

use std::path::Path;

use transrel::ingest::{load_project, ProjectManifest};
use transrel::metrics::{
    discrepancy, discrepancy_table, edit_distance_by_genre, edit_distance_summary_table,
    DiscrepancyPolicy,
};
use transrel::table::{export_table, ExportFormat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let manifest = ProjectManifest::from_path(
        &Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/demo/project.toml"),
    )?;
    let project = load_project(&manifest)?;
    let (reference, candidate) = (&project.reference.corpus, &project.candidate.corpus);

    for policy in [DiscrepancyPolicy::Reference, DiscrepancyPolicy::Candidate] {
        let table = discrepancy_table(reference, candidate, policy, 3);
        println!("## denominator = {}", policy.as_str());
        for line in export_table(&table, ExportFormat::Tsv)
            .lines()
            .filter(|l| !l.contains("\t0\t0.000\t0\t0.000"))
        {
            println!("{}", line);
        }
    }

    // Literal shares of 76.895% against 63.508% under each policy.
    for policy in [DiscrepancyPolicy::Reference, DiscrepancyPolicy::Candidate] {
        println!(
            "literal discrepancy ({}): {:.3}%",
            policy.as_str(),
            discrepancy(76.895, 63.508, policy)?
        );
    }

    let groups = edit_distance_by_genre(reference, candidate)?;
    for g in &groups {
        println!("{}: distances {:?}", g.genre, g.distances);
    }
    print!(
        "{}",
        export_table(&edit_distance_summary_table(&groups), ExportFormat::Tsv)
    );
    Ok(())
}
