//! HTTP backend for interactive annotation of one corpus of a project.
//!
//! | method | path | |
//! |--------|------|-|
//! | GET  | `/api/health` | `ok` |
//! | GET  | `/api/project` | name, genres, sentence ids, progress |
//! | GET  | `/api/palette` | colour per annotatable relation |
//! | GET  | `/api/sentences/{id}` | tokens, edges, units, suggestions, revision |
//! | PUT  | `/api/sentences/{id}/units` | replace the unit list |
//! | POST | `/api/sentences/{id}/suggest` | suggestion delta for the current units |
//! | POST | `/api/flush` | write dirty sentences to the annotation file |
//!
//! A PUT carries the full unit list and the revision it was based on. It
//! is rejected with 409 when that revision is stale and with 400 when the
//! units fail draft validation, so nothing invalid is ever stored. Each
//! sentence has its own lock; flushes are serialized and write the whole
//! annotation file through a temporary file and a rename.

use std::collections::{BTreeSet, HashMap};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use axum::extract::{Path as UrlPath, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post, put};
use axum::{Json, Router};
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::ingest::annotations::UnitRecord;
use crate::ingest::{
    read_project, serialize_annotations, CorpusRole, IngestError, ProjectManifest,
};
use crate::model::{validate, Corpus, RelationLabel, SentencePair, ValidationMode, Violation};
use crate::preannotate::{suggest_for_draft, DraftDelta, Suggestion};

/// Display colour of a relation in the alignment matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaletteEntry {
    pub relation: RelationLabel,
    pub color: &'static str,
    pub hex: &'static str,
    /// Overlay that tells apart relations sharing a colour.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pattern: Option<&'static str>,
}

/// Transposition and modulation+transposition share green; the latter is
/// drawn hatched.
pub fn palette() -> Vec<PaletteEntry> {
    use RelationLabel::*;
    let entry = |relation, color, hex| PaletteEntry {
        relation,
        color,
        hex,
        pattern: None,
    };
    vec![
        entry(Literal, "yellow", "#F5D33F"),
        entry(Equivalence, "orange", "#F39C33"),
        entry(Transposition, "green", "#43A047"),
        entry(Modulation, "light blue", "#81C8F0"),
        PaletteEntry {
            pattern: Some("hatched"),
            ..entry(ModulationTransposition, "green", "#43A047")
        },
        entry(Generalization, "brown", "#8D6E63"),
        entry(Particularization, "red", "#E53935"),
        entry(Figurative, "pink", "#F48FB1"),
        entry(LexicalShift, "purple", "#8E44AD"),
        entry(Uncertain, "light red", "#F28B82"),
        entry(TranslationError, "deep blue", "#1A237E"),
    ]
}

struct Slot {
    pair: SentencePair,
    edges: Vec<(usize, usize)>,
    revision: u64,
}

/// Shared server state: one lockable slot per sentence plus the dirty set.
pub struct AppState {
    project: String,
    corpus: String,
    genres: Vec<String>,
    annotator: String,
    ids: Vec<String>,
    slots: HashMap<String, Mutex<Slot>>,
    dirty: Mutex<BTreeSet<String>>,
    flush_lock: Mutex<()>,
    annotations_path: PathBuf,
}

impl AppState {
    /// `edges` holds the alignment of each sentence, in corpus order.
    pub fn new(
        project: impl Into<String>,
        corpus: Corpus,
        edges: Vec<Vec<(usize, usize)>>,
        annotations_path: impl Into<PathBuf>,
    ) -> Self {
        let genres = corpus.genres();
        let ids: Vec<String> = corpus.sentences.iter().map(|s| s.id.clone()).collect();
        let mut edges = edges.into_iter();
        let slots = corpus
            .sentences
            .into_iter()
            .map(|pair| {
                let slot = Slot {
                    edges: edges.next().unwrap_or_default(),
                    pair,
                    revision: 0,
                };
                (slot.pair.id.clone(), Mutex::new(slot))
            })
            .collect();
        AppState {
            project: project.into(),
            corpus: corpus.name,
            genres,
            annotator: String::new(),
            ids,
            slots,
            dirty: Mutex::new(BTreeSet::new()),
            flush_lock: Mutex::new(()),
            annotations_path: annotations_path.into(),
        }
    }

    /// Loads one corpus of a project. Fails when any of its sentences does
    /// not pass draft validation.
    pub fn load(manifest: &ProjectManifest, role: CorpusRole) -> Result<Self, IngestError> {
        let (project, check) = read_project(manifest)?;
        let reports: Vec<_> = check
            .draft_reports
            .into_iter()
            .filter(|(r, _, _)| *r == role)
            .map(|(_, id, rep)| (id, rep))
            .collect();
        let loaded = project.corpus(role).clone();
        if !reports.is_empty() {
            return Err(IngestError::InvalidAnnotation {
                corpus: loaded.corpus.name,
                reports,
            });
        }
        Ok(AppState::new(
            manifest.project.clone(),
            loaded.corpus,
            loaded.alignment.sentences,
            loaded.annotations_path,
        ))
    }

    pub fn with_annotator(mut self, annotator: impl Into<String>) -> Self {
        self.annotator = annotator.into();
        self
    }

    pub fn annotations_path(&self) -> &Path {
        &self.annotations_path
    }

    /// Current corpus contents, in sentence order.
    pub fn snapshot(&self) -> Corpus {
        let sentences = self
            .ids
            .iter()
            .map(|id| self.slots[id].lock().pair.clone())
            .collect();
        Corpus::new(self.corpus.clone(), sentences)
    }

    /// Writes the annotation file if any sentence changed since the last
    /// flush. Returns the number of sentences that were dirty.
    pub fn flush(&self) -> std::io::Result<usize> {
        let _guard = self.flush_lock.lock();
        let dirty = std::mem::take(&mut *self.dirty.lock());
        if dirty.is_empty() {
            return Ok(0);
        }
        let text = serialize_annotations(&self.snapshot());
        if let Err(e) = write_atomic(&self.annotations_path, &text) {
            self.dirty.lock().extend(dirty);
            return Err(e);
        }
        Ok(dirty.len())
    }
}

fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".tmp");
    let tmp = dir.join(name);
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)
}

fn error(status: StatusCode, message: impl Into<String>) -> Response {
    (status, Json(json!({ "error": message.into() }))).into_response()
}

fn not_found(id: &str) -> Response {
    error(StatusCode::NOT_FOUND, format!("unknown sentence `{}`", id))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SuggestionBody {
    op: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    index: Option<usize>,
    unit: UnitRecord,
    rule_id: &'static str,
    confidence: crate::preannotate::Confidence,
}

impl SuggestionBody {
    fn new(op: &'static str, index: Option<usize>, s: &Suggestion) -> Self {
        SuggestionBody {
            op,
            index,
            unit: UnitRecord::from(&s.unit),
            rule_id: s.rule_id,
            confidence: s.confidence,
        }
    }
}

fn suggestions(slot: &Slot) -> Vec<SuggestionBody> {
    // Edges were bounds-checked at load, so this cannot fail for loaded
    // projects; a hand-built state with bad edges just gets no draft.
    suggest_for_draft(&slot.pair, &slot.edges)
        .unwrap_or_default()
        .iter()
        .map(|d| match d {
            DraftDelta::Replace { index, suggestion } => {
                SuggestionBody::new("replace", Some(*index), suggestion)
            }
            DraftDelta::Add { suggestion } => SuggestionBody::new("add", None, suggestion),
        })
        .collect()
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SentenceBody {
    id: String,
    genre: String,
    revision: u64,
    src_tokens: Vec<String>,
    tgt_tokens: Vec<String>,
    edges: Vec<(usize, usize)>,
    units: Vec<UnitRecord>,
    suggestions: Vec<SuggestionBody>,
    /// Complete-mode findings (uncovered tokens) for progress display.
    open_issues: Vec<Violation>,
}

async fn health() -> &'static str {
    "ok"
}

async fn project(State(state): State<Arc<AppState>>) -> Response {
    let complete = state
        .ids
        .iter()
        .filter(|id| {
            let slot = state.slots[*id].lock();
            !slot.pair.units.is_empty() && validate(&slot.pair, ValidationMode::Complete).is_empty()
        })
        .count();
    Json(json!({
        "project": state.project,
        "corpus": state.corpus,
        "annotator": state.annotator,
        "genres": state.genres,
        "sentenceCount": state.ids.len(),
        "sentenceIds": state.ids,
        "progress": { "complete": complete, "dirty": state.dirty.lock().len() },
    }))
    .into_response()
}

async fn get_palette() -> Json<Vec<PaletteEntry>> {
    Json(palette())
}

async fn get_sentence(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
) -> Response {
    let Some(slot) = state.slots.get(&id) else {
        return not_found(&id);
    };
    let slot = slot.lock();
    let body = SentenceBody {
        id: slot.pair.id.clone(),
        genre: slot.pair.genre.clone(),
        revision: slot.revision,
        src_tokens: slot.pair.src_tokens.clone(),
        tgt_tokens: slot.pair.tgt_tokens.clone(),
        edges: slot.edges.clone(),
        units: slot.pair.units.iter().map(UnitRecord::from).collect(),
        suggestions: suggestions(&slot),
        open_issues: validate(&slot.pair, ValidationMode::Complete).violations,
    };
    Json(body).into_response()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PutUnits {
    pub units: Vec<UnitRecord>,
    pub expected_revision: u64,
}

async fn put_units(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
    Json(body): Json<PutUnits>,
) -> Response {
    let Some(slot) = state.slots.get(&id) else {
        return not_found(&id);
    };
    let units = match body
        .units
        .iter()
        .map(UnitRecord::to_unit)
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(units) => units,
        Err(e) => return error(StatusCode::BAD_REQUEST, e.to_string()),
    };
    let mut slot = slot.lock();
    if slot.revision != body.expected_revision {
        return (
            StatusCode::CONFLICT,
            Json(json!({ "error": "stale revision", "revision": slot.revision })),
        )
            .into_response();
    }
    let candidate = SentencePair {
        units,
        ..slot.pair.clone()
    };
    let report = validate(&candidate, ValidationMode::Draft);
    if !report.is_empty() {
        return (
            StatusCode::BAD_REQUEST,
            Json(json!({ "error": "draft validation failed", "violations": report.violations })),
        )
            .into_response();
    }
    slot.pair = candidate;
    slot.revision += 1;
    state.dirty.lock().insert(id);
    Json(json!({
        "revision": slot.revision,
        "openIssues": validate(&slot.pair, ValidationMode::Complete).violations,
    }))
    .into_response()
}

async fn suggest(State(state): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> Response {
    let Some(slot) = state.slots.get(&id) else {
        return not_found(&id);
    };
    let slot = slot.lock();
    Json(json!({ "revision": slot.revision, "delta": suggestions(&slot) })).into_response()
}

async fn flush(State(state): State<Arc<AppState>>) -> Response {
    let result = tokio::task::spawn_blocking(move || state.flush()).await;
    match result {
        Ok(Ok(written)) => Json(json!({ "written": written })).into_response(),
        Ok(Err(e)) => error(
            StatusCode::INTERNAL_SERVER_ERROR,
            format!("flush failed: {}", e),
        ),
        Err(e) => error(
            StatusCode::INTERNAL_SERVER_ERROR,
            format!("flush task failed: {}", e),
        ),
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/api/health", get(health))
        .route("/api/project", get(project))
        .route("/api/palette", get(get_palette))
        .route("/api/sentences/{id}", get(get_sentence))
        .route("/api/sentences/{id}/units", put(put_units))
        .route("/api/sentences/{id}/suggest", post(suggest))
        .route("/api/flush", post(flush))
        .with_state(state)
}

/// Serves until `shutdown` resolves, then flushes once more.
pub async fn serve(
    listener: tokio::net::TcpListener,
    state: Arc<AppState>,
    shutdown: impl std::future::Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    axum::serve(listener, router(state.clone()))
        .with_graceful_shutdown(shutdown)
        .await?;
    state.flush().map(|_| ())
}
