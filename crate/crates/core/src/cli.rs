//! Command implementations behind the `transrel` binary.
//!
//! Each `cmd_*` function reads the project named by [`RunConfig::manifest`],
//! writes its outputs under [`RunConfig::out`] and returns an [`Outcome`]
//! carrying the process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | data violation (invalid annotation, sources differ, parse error) |
//! | 2 | configuration error (bad flag, unreadable manifest, missing input) |
//! | 3 | environment error (output not writable, port busy) |
//!
//! Every table file starts with `# key: value` metadata lines (CSV/TSV) or
//! a `{"meta":...}` line (JSON-lines) recording the tool version, the
//! manifest hash and the policies in force. No timestamps are written, so
//! reruns are byte-identical.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::ingest::resources::{load_resources, ResourcePaths};
use crate::ingest::{
    export_tables, read_project, serialize_annotation_set, AnnotationSet, CorpusRole, ExportFormat,
    IngestError, Project, ProjectManifest,
};
use crate::metrics::{
    discrepancy_table, edit_distance_by_genre, edit_distance_series_table,
    edit_distance_summary_table, literal_split, literal_split_by_genre, relation_distribution,
    relation_distribution_by_genre, token_counts, token_literal_stats, DiscrepancyPolicy,
    MetricsError,
};
use crate::model::{validate, Corpus, ValidationMode};
use crate::preannotate::preannotate_sentence;
use crate::subcat::{profile_unaligned, subcategory_table, ProfileFacet, Resources, UnalignedSide};
use crate::table::{StatTable, DEFAULT_DECIMALS};
use crate::RelationLabel;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DATA: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_ENVIRONMENT: i32 = 3;

pub const MAX_DECIMALS: u8 = 6;
pub const TOOL: &str = concat!("transrel ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Environment(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Data(_) => EXIT_DATA,
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Environment(_) => EXIT_ENVIRONMENT,
        }
    }
}

impl From<IngestError> for CliError {
    fn from(e: IngestError) -> Self {
        let message = format!("{} [{}]", e, e.code());
        match e.root() {
            IngestError::Io { .. } | IngestError::Manifest(_) => CliError::Config(message),
            _ => CliError::Data(message),
        }
    }
}

impl From<MetricsError> for CliError {
    fn from(e: MetricsError) -> Self {
        CliError::Data(format!("{} [{}]", e, e.code()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub manifest: PathBuf,
    pub out: PathBuf,
    pub denominator: DiscrepancyPolicy,
    pub decimals: u8,
    pub top_k: Option<usize>,
    pub require_ling: bool,
    pub format: ExportFormat,
    pub resources: ResourcePaths,
}

impl RunConfig {
    pub fn new(manifest: impl Into<PathBuf>, out: impl Into<PathBuf>) -> Self {
        RunConfig {
            manifest: manifest.into(),
            out: out.into(),
            denominator: DiscrepancyPolicy::Reference,
            decimals: DEFAULT_DECIMALS,
            top_k: None,
            require_ling: false,
            format: ExportFormat::Csv,
            resources: ResourcePaths::default(),
        }
    }

    fn check(&self) -> Result<(), CliError> {
        if self.decimals > MAX_DECIMALS {
            return Err(CliError::Config(format!(
                "--decimals must be between 0 and {}, got {}",
                MAX_DECIMALS, self.decimals
            )));
        }
        if self.top_k == Some(0) {
            return Err(CliError::Config("--top-k must be positive".into()));
        }
        Ok(())
    }
}

/// What a command did.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub exit_code: i32,
    pub files: Vec<PathBuf>,
    /// Human-readable lines for stderr.
    pub messages: Vec<String>,
}

/// Run context shared by the commands: the loaded manifest, its hash and
/// the output directory.
struct Run<'a> {
    config: &'a RunConfig,
    command: &'static str,
    manifest: ProjectManifest,
    manifest_sha256: String,
    outcome: Outcome,
}

impl<'a> Run<'a> {
    fn start(config: &'a RunConfig, command: &'static str) -> Result<Self, CliError> {
        config.check()?;
        let bytes = std::fs::read(&config.manifest)
            .map_err(|e| CliError::Config(format!("{}: {}", config.manifest.display(), e)))?;
        let manifest = ProjectManifest::from_path(&config.manifest)?;
        if config.require_ling {
            for role in [CorpusRole::Reference, CorpusRole::Candidate] {
                let f = manifest.files(role);
                for (side, path) in [
                    ("source_conllu", &f.source_conllu),
                    ("target_conllu", &f.target_conllu),
                ] {
                    match path {
                        None => {
                            return Err(CliError::Config(format!(
                                "--require-ling: [{}] has no {}",
                                role.as_str(),
                                side
                            )))
                        }
                        Some(p) if !manifest.resolve(p).is_file() => {
                            return Err(CliError::Config(format!(
                                "--require-ling: {} does not exist",
                                manifest.resolve(p).display()
                            )))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        std::fs::create_dir_all(&config.out)
            .map_err(|e| CliError::Environment(format!("{}: {}", config.out.display(), e)))?;
        Ok(Run {
            config,
            command,
            manifest,
            manifest_sha256: hex::encode(Sha256::digest(&bytes)),
            outcome: Outcome::default(),
        })
    }

    fn meta(&self) -> Vec<(&'static str, String)> {
        vec![
            ("tool", TOOL.to_string()),
            ("command", self.command.to_string()),
            ("project", self.manifest.project.clone()),
            ("manifest_sha256", self.manifest_sha256.clone()),
            ("denominator", self.config.denominator.as_str().to_string()),
            ("decimals", self.config.decimals.to_string()),
            (
                "top_k",
                self.config
                    .top_k
                    .map_or_else(|| "all".to_string(), |k| k.to_string()),
            ),
        ]
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<(), CliError> {
        let path = self.config.out.join(name);
        std::fs::write(&path, contents)
            .map_err(|e| CliError::Environment(format!("{}: {}", path.display(), e)))?;
        self.outcome.files.push(path);
        Ok(())
    }

    fn write_table(&mut self, stem: &str, table: StatTable) -> Result<(), CliError> {
        let table = table.with_decimals(self.config.decimals);
        let format = self.config.format;
        let mut text = String::new();
        let mut meta = self.meta();
        meta.push(("table", table.title.clone()));
        meta.push(("provenance", table.provenance.clone()));
        match format {
            ExportFormat::Csv | ExportFormat::Tsv => {
                for (k, v) in &meta {
                    let _ = write!(text, "# {}: {}\r\n", k, v);
                }
                for note in &table.notes {
                    let _ = write!(text, "# note: {}\r\n", note);
                }
            }
            ExportFormat::JsonLines => {
                let mut obj = serde_json::Map::new();
                for (k, v) in meta {
                    obj.insert(k.to_string(), v.into());
                }
                obj.insert("notes".into(), table.notes.clone().into());
                let _ = writeln!(text, "{}", serde_json::json!({ "meta": obj }));
            }
        }
        text.push_str(&export_tables(&table, format));
        self.write(&format!("{}.{}", stem, format.extension()), &text)
    }

    fn load(&mut self) -> Result<(Project, crate::ingest::ProjectCheck), CliError> {
        let (project, check) = read_project(&self.manifest)?;
        for (path, w) in &project.warnings {
            self.outcome.messages.push(format!(
                "warning: {}:{}: {}",
                path.display(),
                w.line,
                w.message
            ));
        }
        Ok((project, check))
    }

    fn finish(self) -> Outcome {
        self.outcome
    }
}

/// Restricts a corpus to its annotated sentences, requiring each of them to
/// be complete. Unannotated sentences are reported and left out.
fn annotated(corpus: &Corpus, messages: &mut Vec<String>) -> Result<Corpus, CliError> {
    let mut kept = Vec::new();
    let mut skipped = 0;
    for s in &corpus.sentences {
        if s.units.is_empty() {
            skipped += 1;
            continue;
        }
        let report = validate(s, ValidationMode::Complete);
        if let Some(v) = report.violations.first() {
            return Err(CliError::Data(format!(
                "{} sentence {} is not completely annotated: {} {} ({} finding(s)); run `transrel validate`",
                corpus.name,
                s.id,
                v.code,
                v.message,
                report.len()
            )));
        }
        kept.push(s.clone());
    }
    if skipped > 0 {
        messages.push(format!(
            "note: {}: {} unannotated sentence(s) left out of the statistics",
            corpus.name, skipped
        ));
    }
    Ok(Corpus::new(corpus.name.clone(), kept))
}

fn file_safe(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// Complete validation of both corpora plus the shared-source check.
/// Writes `validation_report.jsonl` with one record per finding.
pub fn cmd_validate(config: &RunConfig) -> Result<Outcome, CliError> {
    let mut run = Run::start(config, "validate")?;
    let (project, check) = run.load()?;
    let mut meta = serde_json::Map::new();
    for (k, v) in run.meta() {
        meta.insert(k.into(), v.into());
    }
    let mut lines = vec![serde_json::json!({ "meta": meta }).to_string()];
    let mut violations = 0usize;
    for role in [CorpusRole::Reference, CorpusRole::Candidate] {
        let corpus = &project.corpus(role).corpus;
        for s in &corpus.sentences {
            for v in validate(s, ValidationMode::Complete).violations {
                violations += 1;
                lines.push(
                    serde_json::json!({
                        "kind": "violation",
                        "corpus": corpus.name,
                        "id": s.id,
                        "code": v.code,
                        "locus": v.locus,
                        "message": v.message,
                    })
                    .to_string(),
                );
            }
        }
    }
    for id in &check.shared_source_mismatches {
        violations += 1;
        lines.push(
            serde_json::json!({
                "kind": "violation",
                "corpus": null,
                "id": id,
                "code": "SHARED_SOURCE_VIOLATION",
                "message": "source tokens differ between reference and candidate",
            })
            .to_string(),
        );
    }
    for (path, w) in &project.warnings {
        lines.push(
            serde_json::json!({
                "kind": "warning",
                "file": path.display().to_string(),
                "line": w.line,
                "message": w.message,
            })
            .to_string(),
        );
    }
    let mut text = lines.join("\n");
    text.push('\n');
    run.write("validation_report.jsonl", &text)?;
    run.outcome
        .messages
        .push(format!("{} violation(s)", violations));
    if violations > 0 {
        run.outcome.exit_code = EXIT_DATA;
    }
    Ok(run.finish())
}

/// Distribution, split, token and genre tables for each corpus.
pub fn cmd_stats(config: &RunConfig) -> Result<Outcome, CliError> {
    let mut run = Run::start(config, "stats")?;
    let (project, _) = run.load()?;
    for role in [CorpusRole::Reference, CorpusRole::Candidate] {
        let full = &project.corpus(role).corpus;
        let corpus = annotated(full, &mut run.outcome.messages)?;
        let name = file_safe(&full.name);
        let tokens = token_literal_stats(&corpus)?;
        run.write_table(&format!("table3_token_counts_{}", name), token_counts(full))?;
        run.write_table(
            &format!("table4_literal_split_{}", name),
            literal_split(&corpus),
        )?;
        run.write_table(
            &format!("table5_distribution_{}", name),
            relation_distribution(&corpus),
        )?;
        run.write_table(
            &format!("table6_token_literal_{}", name),
            tokens.summary_table(&full.name),
        )?;
        run.write_table(
            &format!("table8_genre_split_{}", name),
            literal_split_by_genre(&corpus),
        )?;
        run.write_table(
            &format!("fig8_sentence_literal_ratio_{}", name),
            tokens.series_table(&full.name),
        )?;
        run.write_table(
            &format!("fig12_genre_distribution_{}", name),
            relation_distribution_by_genre(&corpus),
        )?;
    }
    Ok(run.finish())
}

/// Discrepancy table and per-sentence edit distances between the corpora.
pub fn cmd_diff(config: &RunConfig) -> Result<Outcome, CliError> {
    let mut run = Run::start(config, "diff")?;
    let (project, check) = run.load()?;
    if !check.shared_source_mismatches.is_empty() {
        let mut ids = check.shared_source_mismatches.clone();
        ids.truncate(crate::ingest::project::SHARED_SOURCE_REPORT_LIMIT);
        return Err(CliError::Data(format!(
            "reference and candidate sources differ at sentences {:?} [SHARED_SOURCE_VIOLATION]",
            ids
        )));
    }
    let reference = annotated(&project.reference.corpus, &mut run.outcome.messages)?;
    let candidate = annotated(&project.candidate.corpus, &mut run.outcome.messages)?;
    // Edit distance needs both annotations of a sentence.
    let both = |c: &Corpus, other: &Corpus| {
        Corpus::new(
            c.name.clone(),
            c.sentences
                .iter()
                .filter(|s| other.get(&s.id).is_some())
                .cloned()
                .collect(),
        )
    };
    let (r2, c2) = (both(&reference, &candidate), both(&candidate, &reference));
    let groups = edit_distance_by_genre(&r2, &c2)?;
    run.write_table(
        "table5_discrepancy",
        discrepancy_table(&reference, &candidate, config.denominator, config.decimals),
    )?;
    run.write_table("fig11_edit_distance", edit_distance_series_table(&groups))?;
    run.write_table(
        "fig11_edit_distance_summary",
        edit_distance_summary_table(&groups),
    )?;
    Ok(run.finish())
}

const SUBCAT_TABLES: [(&str, RelationLabel); 7] = [
    ("table9_equivalence", RelationLabel::Equivalence),
    ("table10_generalization", RelationLabel::Generalization),
    ("table11_lexical_shift", RelationLabel::LexicalShift),
    ("table12_modulation", RelationLabel::Modulation),
    (
        "table13_modulation_transposition",
        RelationLabel::ModulationTransposition,
    ),
    (
        "table14_particularization",
        RelationLabel::Particularization,
    ),
    ("table15_transposition", RelationLabel::Transposition),
];

const PROFILE_TABLES: [(&str, UnalignedSide, ProfileFacet); 4] = [
    (
        "table16_explicitation_pos",
        UnalignedSide::Explicitation,
        ProfileFacet::Pos,
    ),
    (
        "table17_explicitation_dep",
        UnalignedSide::Explicitation,
        ProfileFacet::Dep,
    ),
    (
        "table18_reduction_pos",
        UnalignedSide::Reduction,
        ProfileFacet::Pos,
    ),
    (
        "table19_reduction_dep",
        UnalignedSide::Reduction,
        ProfileFacet::Dep,
    ),
];

/// Sub-category and unaligned-token profile tables for each corpus.
pub fn cmd_subcat(config: &RunConfig) -> Result<Outcome, CliError> {
    let mut run = Run::start(config, "subcat")?;
    let resources: Resources = load_resources(&config.resources)?;
    let (project, _) = run.load()?;
    for role in [CorpusRole::Reference, CorpusRole::Candidate] {
        let corpus = annotated(&project.corpus(role).corpus, &mut run.outcome.messages)?;
        let name = file_safe(&corpus.name);
        for (stem, relation) in SUBCAT_TABLES {
            let table = subcategory_table(&corpus, relation, &resources, config.top_k);
            run.write_table(&format!("{}_{}", stem, name), table)?;
        }
        for (stem, side, facet) in PROFILE_TABLES {
            let row_header = match facet {
                ProfileFacet::Pos => "pos",
                ProfileFacet::Dep => "dep",
            };
            let title = format!("{} ({})", stem, corpus.name);
            let provenance = "subcat::profile_unaligned";
            let table = match profile_unaligned(&corpus, side, facet) {
                Ok(p) => {
                    let mut t = p.to_table(&title, row_header, provenance, config.top_k);
                    if t.is_empty() {
                        t.notes.push("no units of this kind".into());
                    }
                    t
                }
                Err(e) => {
                    let mut t = StatTable::new(title, row_header, ["count"], provenance);
                    t.notes.push(format!("not computed: {}", e));
                    run.outcome
                        .messages
                        .push(format!("note: {} {}: {}", stem, corpus.name, e));
                    t
                }
            };
            run.write_table(&format!("{}_{}", stem, name), table)?;
        }
    }
    Ok(run.finish())
}

/// Drafts annotation files from the alignments. Existing annotation files
/// are never touched; drafts go to `<out>/<corpus>_annotations.draft.jsonl`.
pub fn cmd_suggest(config: &RunConfig) -> Result<Outcome, CliError> {
    let mut run = Run::start(config, "suggest")?;
    let (project, _) = run.load()?;
    for role in [CorpusRole::Reference, CorpusRole::Candidate] {
        let loaded = project.corpus(role);
        let mut set = AnnotationSet::default();
        for (pair, edges) in loaded
            .corpus
            .sentences
            .iter()
            .zip(&loaded.alignment.sentences)
        {
            let units = preannotate_sentence(pair, edges)
                .map_err(|e| {
                    CliError::Data(format!(
                        "{} sentence {}: {}",
                        loaded.corpus.name, pair.id, e
                    ))
                })?
                .into_iter()
                .map(|s| s.unit)
                .collect();
            set.sentences.push((pair.id.clone(), units));
        }
        let name = format!("{}_annotations.draft.jsonl", file_safe(&loaded.corpus.name));
        run.write(&name, &serialize_annotation_set(&set))?;
    }
    Ok(run.finish())
}

/// Binds `addr` and serves the annotation API for one corpus until Ctrl-C.
pub fn cmd_serve(
    config: &RunConfig,
    addr: std::net::SocketAddr,
    role: CorpusRole,
) -> Result<Outcome, CliError> {
    let run = Run::start(config, "serve")?;
    let state = Arc::new(crate::service::AppState::load(&run.manifest, role)?);
    let runtime =
        tokio::runtime::Runtime::new().map_err(|e| CliError::Environment(e.to_string()))?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind(addr)
            .await
            .map_err(|e| CliError::Environment(format!("cannot bind {}: {}", addr, e)))?;
        let local = listener
            .local_addr()
            .map_err(|e| CliError::Environment(e.to_string()))?;
        eprintln!("serving {} on http://{}", role.as_str(), local);
        let shutdown = async {
            let _ = tokio::signal::ctrl_c().await;
        };
        crate::service::serve(listener, state, shutdown)
            .await
            .map_err(|e| CliError::Environment(e.to_string()))
    })?;
    Ok(run.finish())
}

/// Path of the output file a command writes for `stem`.
pub fn output_path(config: &RunConfig, stem: &str) -> PathBuf {
    config
        .out
        .join(format!("{}.{}", stem, config.format.extension()))
}

/// Reads a table file written by a command back into rows, skipping the
/// metadata header. Only CSV is supported.
pub fn read_csv_output(path: &Path) -> std::io::Result<Vec<Vec<String>>> {
    let text = std::fs::read_to_string(path)?;
    let body: String = text
        .split_inclusive('\n')
        .filter(|l| !l.starts_with("# "))
        .collect();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(body.as_bytes());
    reader
        .records()
        .map(|r| {
            r.map(|rec| rec.iter().map(str::to_string).collect())
                .map_err(std::io::Error::other)
        })
        .collect()
}
