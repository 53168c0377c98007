//! Parses each on-disk format from inline text and prints what the parser
//! kept and what it warned about.
//!
//! ```bash
//! cargo run --example ingest_formats
//! ```

use transrel::ingest::{
    parse_alignment, parse_annotations, parse_conllu, parse_tokenized, serialize_annotation_set,
};

const SOURCE: &str = "Peter is six .\nThey raise the roof .\n";
// An empty line is a sentence with no edges.
const ALIGNMENT: &str = "0-0 2-1 3-2\n\n0-0 1-1 2-1 3-1 4-2\n";
const ANNOTATIONS: &str = r#"{"id":"s1","src":[0],"tgt":[0],"relation":"literal"}
{"id":"s1","src":[1],"tgt":[],"relation":"unaligned_reduction"}
{"id":"s1","src":[2],"tgt":[1],"relation":"lexical_shift","sub":"tense"}
"#;
const CONLLU: &str = "# sent_id = s1
1\t彼得\t彼得\tPROPN\t_\t_\t2\tnsubj\t_\t_
2\t六岁\t六岁\tNUM\t_\t_\t0\troot\t_\t_
3\t。\t。\tPUNCT\t_\t_\t2\tpunct\t_\t_

";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tokens = parse_tokenized(SOURCE)?;
    println!(
        "source: {} sentences, first = {:?}",
        tokens.value.len(),
        tokens.value[0]
    );

    let edges = parse_alignment(ALIGNMENT)?;
    for (i, s) in edges.value.sentences.iter().enumerate() {
        println!("alignment line {}: {:?}", i + 1, s);
    }

    let annotations = parse_annotations(ANNOTATIONS)?;
    for unit in annotations.value.units_for("s1").unwrap_or_default() {
        println!(
            "unit {:?} -> {:?}: {} {:?}",
            unit.src, unit.tgt, unit.relation, unit.sub
        );
    }
    print!(
        "re-serialized:\n{}",
        serialize_annotation_set(&annotations.value)
    );

    let trees = parse_conllu(CONLLU)?;
    for (i, t) in trees.value[0].iter().enumerate() {
        println!(
            "token {}: {} head={:?} deprel={}",
            i, t.upos, t.head, t.deprel
        );
    }

    // A malformed record names the line it came from.
    match parse_annotations("{\"id\":\"s1\",\"src\":[0],\"tgt\":[0],\"relation\":\"paraphrase\"}\n")
    {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {}", e),
    }
    Ok(())
}
