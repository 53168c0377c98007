//! Loads the bundled demo project, checks every sentence for complete
//! annotation, then breaks one sentence to show the violation report.
//!
//! ```bash
//! cargo run --example validate_annotations
//! ```

use std::path::Path;

use transrel::ingest::{read_project, ProjectManifest};
use transrel::model::{validate, RelationLabel, ValidationMode};
use transrel::AlignedUnit;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let manifest_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/demo/project.toml");
    let manifest = ProjectManifest::from_path(&manifest_path)?;
    let (project, check) = read_project(&manifest)?;
    println!("project {}: clean = {}", manifest.project, check.is_clean());

    for loaded in [&project.reference, &project.candidate] {
        for pair in &loaded.corpus.sentences {
            let report = validate(pair, ValidationMode::Complete);
            println!(
                "{} {} ({}): {} violations",
                loaded.corpus.name,
                pair.id,
                pair.genre,
                report.len()
            );
        }
    }

    // Claim source token 0 twice and leave the last target token uncovered.
    let mut broken = project.reference.corpus.sentences[0].clone();
    broken
        .units
        .push(AlignedUnit::new([0], [1], RelationLabel::Modulation));
    broken.units.retain(|u| !u.tgt.contains(&3));
    for mode in [ValidationMode::Draft, ValidationMode::Complete] {
        println!("{:?} mode:", mode);
        for v in validate(&broken, mode).violations {
            println!("  {} at {}: {}", v.code, v.locus, v.message);
        }
    }
    Ok(())
}
