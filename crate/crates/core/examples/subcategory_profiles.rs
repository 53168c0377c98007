//! Sub-category breakdowns and unaligned-token profiles, using the demo
//! dependency parses and lexical resources.
//!
//! ```bash
//! cargo run --example subcategory_profiles
//! ```

use std::path::Path;

use transrel::ingest::resources::{load_resources, ResourcePaths};
use transrel::ingest::{load_project, ProjectManifest};
use transrel::model::RelationLabel;
use transrel::subcat::{profile_unaligned, subcategory_table, ProfileFacet, UnalignedSide};
use transrel::table::{export_table, ExportFormat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let demo = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/demo");
    let project = load_project(&ProjectManifest::from_path(&demo.join("project.toml"))?)?;
    let resources = load_resources(&ResourcePaths {
        named_entities: Some(demo.join("resources/named_entities.tsv")),
        fixed_expressions: Some(demo.join("resources/fixed_expressions.txt")),
        hypernyms: Some(demo.join("resources/hypernyms.tsv")),
        glosses: None,
    })?;

    for loaded in [&project.reference, &project.candidate] {
        let corpus = &loaded.corpus;
        let table = subcategory_table(corpus, RelationLabel::LexicalShift, &resources, None);
        print!("{}", export_table(&table, ExportFormat::Tsv));
        for (side, facet) in [
            (UnalignedSide::Explicitation, ProfileFacet::Pos),
            (UnalignedSide::Reduction, ProfileFacet::Pos),
            (UnalignedSide::Reduction, ProfileFacet::Dep),
        ] {
            let profile = profile_unaligned(corpus, side, facet)?;
            println!(
                "{} {:?} by {:?}: {:?}",
                corpus.name,
                side,
                facet,
                profile.sorted()
            );
        }
        println!();
    }
    Ok(())
}
