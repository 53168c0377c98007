mod common;

use std::fs;
use std::path::Path;

use transrel::cli::{
    cmd_diff, cmd_serve, cmd_stats, cmd_subcat, cmd_suggest, cmd_validate, output_path,
    read_csv_output, RunConfig, EXIT_CONFIG, EXIT_DATA, EXIT_ENVIRONMENT, EXIT_OK,
};
use transrel::ingest::resources::ResourcePaths;
use transrel::ingest::{CorpusRole, ExportFormat};
use transrel::model::{Corpus, RelationLabel::*, SubCategory};

fn config(manifest: &Path, out: &Path) -> RunConfig {
    RunConfig::new(manifest, out)
}

fn row<'a>(rows: &'a [Vec<String>], label: &str) -> &'a [String] {
    rows.iter()
        .find(|r| r[0] == label)
        .unwrap_or_else(|| panic!("no row {}", label))
}

#[test]
fn validate_clean_fixture() {
    let out = tempfile::tempdir().unwrap();
    let outcome = cmd_validate(&config(
        &common::demo_dir().join("project.toml"),
        out.path(),
    ))
    .unwrap();
    assert_eq!(outcome.exit_code, EXIT_OK);
    let report = fs::read_to_string(out.path().join("validation_report.jsonl")).unwrap();
    assert_eq!(report.lines().count(), 1, "only the meta line: {}", report);
}

#[test]
fn validate_reports_overlap() {
    let (dir, manifest) = common::demo_copy();
    let path = dir.path().join("mt/annotations.jsonl");
    let text = fs::read_to_string(&path).unwrap().replace(
        "{\"id\":\"s1\",\"src\":[1],\"tgt\":[1]",
        "{\"id\":\"s1\",\"src\":[1],\"tgt\":[0,1]",
    );
    fs::write(&path, text).unwrap();
    let out = dir.path().join("out");
    let outcome = cmd_validate(&config(&manifest, &out)).unwrap();
    assert_eq!(outcome.exit_code, EXIT_DATA);
    let report = fs::read_to_string(out.join("validation_report.jsonl")).unwrap();
    assert!(report.contains("\"code\":\"OVERLAP\""));
}

#[test]
fn validate_reports_uncovered_tokens_of_partial_annotation() {
    let (dir, manifest) = common::demo_copy();
    let path = dir.path().join("ht/annotations.jsonl");
    let kept: Vec<String> = fs::read_to_string(&path)
        .unwrap()
        .lines()
        .filter(|l| !l.contains("unaligned_explicitation"))
        .map(String::from)
        .collect();
    fs::write(&path, kept.join("\n") + "\n").unwrap();
    let out = dir.path().join("out");
    let outcome = cmd_validate(&config(&manifest, &out)).unwrap();
    assert_eq!(outcome.exit_code, EXIT_DATA);
    let report = fs::read_to_string(out.join("validation_report.jsonl")).unwrap();
    assert_eq!(report.matches("\"code\":\"UNCOVERED\"").count(), 2);
}

#[test]
fn require_ling_without_conllu_is_config_error() {
    let (dir, manifest) = common::demo_copy();
    let text = fs::read_to_string(&manifest)
        .unwrap()
        .replace("target_conllu = \"mt/target.conllu\"\n", "");
    fs::write(&manifest, text).unwrap();
    let mut c = config(&manifest, &dir.path().join("out"));
    assert!(cmd_validate(&c).is_ok());
    c.require_ling = true;
    assert_eq!(cmd_validate(&c).unwrap_err().exit_code(), EXIT_CONFIG);
}

#[test]
fn unreadable_manifest_is_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("project.toml");
    fs::write(&bad, "project = 3").unwrap();
    let c = config(&bad, &dir.path().join("out"));
    assert_eq!(cmd_validate(&c).unwrap_err().exit_code(), EXIT_CONFIG);
    let addr = "127.0.0.1:0".parse().unwrap();
    assert_eq!(
        cmd_serve(&c, addr, CorpusRole::Reference)
            .unwrap_err()
            .exit_code(),
        EXIT_CONFIG
    );
}

#[test]
fn busy_port_is_environment_error() {
    let taken = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = taken.local_addr().unwrap();
    let out = tempfile::tempdir().unwrap();
    let c = config(&common::demo_dir().join("project.toml"), out.path());
    assert_eq!(
        cmd_serve(&c, addr, CorpusRole::Reference)
            .unwrap_err()
            .exit_code(),
        EXIT_ENVIRONMENT
    );
}

#[test]
fn stats_outputs_are_byte_identical_across_runs() {
    let manifest = common::demo_dir().join("project.toml");
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let first = cmd_stats(&config(&manifest, a.path())).unwrap();
    let second = cmd_stats(&config(&manifest, b.path())).unwrap();
    assert_eq!(first.files.len(), 14);
    for (x, y) in first.files.iter().zip(&second.files) {
        assert_eq!(x.file_name(), y.file_name());
        assert_eq!(
            fs::read(x).unwrap(),
            fs::read(y).unwrap(),
            "{}",
            x.display()
        );
    }
}

#[test]
fn stats_tables_on_demo() {
    let out = tempfile::tempdir().unwrap();
    let c = config(&common::demo_dir().join("project.toml"), out.path());
    cmd_stats(&c).unwrap();
    let rows = read_csv_output(&output_path(&c, "table5_distribution_MT")).unwrap();
    assert_eq!(rows[0], vec!["relation", "count", "percentage"]);
    assert_eq!(row(&rows, "literal"), ["literal", "11", "84.615"]);
    assert_eq!(row(&rows, "Total"), ["Total", "13", "100.000"]);
    let rows = read_csv_output(&output_path(&c, "table3_token_counts_HT")).unwrap();
    assert_eq!(row(&rows, "Total"), ["Total", "3", "14", "14"]);
    let text = fs::read_to_string(output_path(&c, "table5_distribution_MT")).unwrap();
    assert!(text.starts_with("# tool: transrel "));
    assert!(text.contains("# manifest_sha256: "));
    assert!(text.contains("# denominator: reference\r\n"));
}

#[test]
fn stats_without_annotations_is_header_only() {
    let (dir, manifest) = common::demo_copy();
    fs::remove_file(dir.path().join("ht/annotations.jsonl")).unwrap();
    let c = config(&manifest, &dir.path().join("out"));
    let outcome = cmd_stats(&c).unwrap();
    assert!(outcome.messages.iter().any(|m| m.contains("3 unannotated")));
    let rows = read_csv_output(&output_path(&c, "table5_distribution_HT")).unwrap();
    assert_eq!(rows, vec![vec!["relation", "count", "percentage"]]);
}

#[test]
fn stats_rejects_incomplete_sentence() {
    let (dir, manifest) = common::demo_copy();
    let path = dir.path().join("ht/annotations.jsonl");
    let kept: Vec<String> = fs::read_to_string(&path)
        .unwrap()
        .lines()
        .filter(|l| !(l.contains("\"s3\"") && l.contains("figurative")))
        .map(String::from)
        .collect();
    fs::write(&path, kept.join("\n") + "\n").unwrap();
    let err = cmd_stats(&config(&manifest, &dir.path().join("out"))).unwrap_err();
    assert_eq!(err.exit_code(), EXIT_DATA);
}

#[test]
fn tsv_and_jsonl_outputs() {
    let out = tempfile::tempdir().unwrap();
    let mut c = config(&common::demo_dir().join("project.toml"), out.path());
    c.format = ExportFormat::JsonLines;
    cmd_stats(&c).unwrap();
    let text = fs::read_to_string(out.path().join("table5_distribution_HT.jsonl")).unwrap();
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(first["meta"]["command"], "stats");
    assert_eq!(text.lines().count(), 1 + 15);
    c.format = ExportFormat::Tsv;
    cmd_stats(&c).unwrap();
    assert!(out.path().join("table5_distribution_HT.tsv").exists());
}

#[test]
fn diff_identical_corpora_is_all_zero() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = Corpus::new(
        "HT",
        vec![
            common::labeled_sentence("s1", "news", &[Literal, Modulation, Literal]),
            common::labeled_sentence("s2", "news", &[Equivalence, Literal]),
        ],
    );
    let cand = Corpus {
        name: "MT".into(),
        ..corpus.clone()
    };
    let manifest = common::write_project(dir.path(), &corpus, &cand, &[("news", "1-2")]);
    let c = config(&manifest, &dir.path().join("out"));
    cmd_diff(&c).unwrap();
    for r in read_csv_output(&output_path(&c, "table5_discrepancy"))
        .unwrap()
        .iter()
        .skip(1)
    {
        assert_eq!(r[5], "0.000", "{:?}", r);
    }
    for r in read_csv_output(&output_path(&c, "fig11_edit_distance"))
        .unwrap()
        .iter()
        .skip(1)
    {
        assert_eq!(r[2], "0");
    }
}

#[test]
fn diff_on_demo() {
    let out = tempfile::tempdir().unwrap();
    let c = config(&common::demo_dir().join("project.toml"), out.path());
    cmd_diff(&c).unwrap();
    let rows = read_csv_output(&output_path(&c, "fig11_edit_distance")).unwrap();
    let distances: Vec<&str> = rows.iter().skip(1).map(|r| r[2].as_str()).collect();
    assert_eq!(distances, vec!["1", "1", "3"]);
    let summary = read_csv_output(&output_path(&c, "fig11_edit_distance_summary")).unwrap();
    assert_eq!(
        row(&summary, "news")[1..],
        ["2", "1.000", "1.000", "1.000", "1.000", "1.000"]
    );
}

#[test]
fn diff_rejects_mismatched_sources() {
    let dir = tempfile::tempdir().unwrap();
    let r = Corpus::new(
        "HT",
        vec![common::labeled_sentence("s1", "news", &[Literal, Literal])],
    );
    let c = Corpus::new(
        "MT",
        vec![common::labeled_sentence(
            "s1",
            "news",
            &[Literal, Literal, Literal],
        )],
    );
    let manifest = common::write_project(dir.path(), &r, &c, &[]);
    let err = cmd_diff(&config(&manifest, &dir.path().join("out"))).unwrap_err();
    assert_eq!(err.exit_code(), EXIT_DATA);
    assert!(err.to_string().contains("SHARED_SOURCE_VIOLATION"));
}

#[test]
fn subcat_on_demo() {
    let out = tempfile::tempdir().unwrap();
    let mut c = config(&common::demo_dir().join("project.toml"), out.path());
    let res = common::demo_dir().join("resources");
    c.resources = ResourcePaths {
        named_entities: Some(res.join("named_entities.tsv")),
        fixed_expressions: Some(res.join("fixed_expressions.txt")),
        hypernyms: Some(res.join("hypernyms.tsv")),
        glosses: None,
    };
    let outcome = cmd_subcat(&c).unwrap();
    assert_eq!(outcome.files.len(), 22);
    let rows = read_csv_output(&output_path(&c, "table18_reduction_pos_HT")).unwrap();
    assert_eq!(row(&rows, "AUX"), ["AUX", "1"]);
    let rows = read_csv_output(&output_path(&c, "table19_reduction_dep_HT")).unwrap();
    assert_eq!(row(&rows, "cop"), ["cop", "1"]);
    let rows = read_csv_output(&output_path(&c, "table17_explicitation_dep_HT")).unwrap();
    assert_eq!(row(&rows, "mark:clf"), ["mark:clf", "1"]);
    let rows = read_csv_output(&output_path(&c, "table11_lexical_shift_MT")).unwrap();
    assert_eq!(row(&rows, "tense"), ["tense", "1"]);
    // No modulation units anywhere: header only, with a note.
    let text = fs::read_to_string(output_path(&c, "table12_modulation_HT")).unwrap();
    assert!(text.contains("# note: no modulation units"));
    assert_eq!(
        read_csv_output(&output_path(&c, "table12_modulation_HT"))
            .unwrap()
            .len(),
        1
    );
}

#[test]
fn subcat_reproduces_gold_lexical_shift_counts() {
    let dir = tempfile::tempdir().unwrap();
    let build = |name: &str, plural: usize, tense: usize| {
        let mut units = Vec::new();
        units.extend(std::iter::repeat_n(SubCategory::Plural, plural));
        units.extend(std::iter::repeat_n(SubCategory::Tense, tense));
        let sentences = units
            .chunks(20)
            .enumerate()
            .map(|(i, subs)| {
                let mut s = common::labeled_sentence(
                    &format!("s{}", i + 1),
                    "news",
                    &vec![LexicalShift; subs.len()],
                );
                for (u, sub) in s.units.iter_mut().zip(subs) {
                    u.sub = Some(*sub);
                }
                s
            })
            .collect();
        Corpus::new(name, sentences)
    };
    // Same sentence count on both sides so the sources match.
    let mt = build("MT", 455, 301);
    let mut ht = build("HT", 432, 273);
    // Pad HT with literal sentences of matching shape.
    while ht.sentences.len() < mt.sentences.len() {
        let i = ht.sentences.len();
        let n = mt.sentences[i].src_tokens.len();
        ht.sentences.push(common::labeled_sentence(
            &format!("s{}", i + 1),
            "news",
            &vec![Literal; n],
        ));
    }
    let last = ht.sentences.len() - 1;
    let n_mt = mt.sentences[last].src_tokens.len();
    let n_ht = ht.sentences[last].src_tokens.len();
    for k in n_ht..n_mt {
        let s = &mut ht.sentences[last];
        s.src_tokens.push(format!("w{}", k));
        s.tgt_tokens.push(format!("t{}", k));
        s.units.push(transrel::AlignedUnit::new(
            [k],
            [s.tgt_tokens.len() - 1],
            Literal,
        ));
    }
    let manifest = common::write_project(dir.path(), &ht, &mt, &[]);
    let c = config(&manifest, &dir.path().join("out"));
    cmd_subcat(&c).unwrap();
    let mt_rows = read_csv_output(&output_path(&c, "table11_lexical_shift_MT")).unwrap();
    assert_eq!(row(&mt_rows, "plural")[1], "455");
    assert_eq!(row(&mt_rows, "tense")[1], "301");
    let ht_rows = read_csv_output(&output_path(&c, "table11_lexical_shift_HT")).unwrap();
    assert_eq!(row(&ht_rows, "plural")[1], "432");
    assert_eq!(row(&ht_rows, "tense")[1], "273");
}

#[test]
fn suggest_writes_valid_drafts() {
    let out = tempfile::tempdir().unwrap();
    let c = config(&common::demo_dir().join("project.toml"), out.path());
    let outcome = cmd_suggest(&c).unwrap();
    assert_eq!(outcome.files.len(), 2);
    let text = fs::read_to_string(out.path().join("HT_annotations.draft.jsonl")).unwrap();
    let set = transrel::ingest::parse_annotations(&text).unwrap().value;
    assert_eq!(set.sentences.len(), 3);
    assert!(text
        .lines()
        .all(|l| l.contains("\"provenance\":\"suggested\"")));
    // s1 of HT: "is" has no edge, 了 has no edge.
    let s1 = set.units_for("s1").unwrap();
    assert!(s1.iter().any(|u| u.relation == UnalignedReduction));
    assert!(s1.iter().any(|u| u.relation == UnalignedExplicitation));
}

#[test]
fn decimals_flag_changes_rendering() {
    let out = tempfile::tempdir().unwrap();
    let mut c = config(&common::demo_dir().join("project.toml"), out.path());
    c.decimals = 1;
    cmd_stats(&c).unwrap();
    let rows = read_csv_output(&output_path(&c, "table5_distribution_MT")).unwrap();
    assert_eq!(row(&rows, "literal"), ["literal", "11", "84.6"]);
}
