use std::path::{Path, PathBuf};

use super::manifest::{sentence_id, CorpusRole, GenreMap, ProjectManifest};
use super::{
    parse_alignment, parse_annotations, parse_conllu, parse_tokenized, read_text,
    AlignmentEdgeList, IngestError, Warning,
};
use crate::model::{
    validate, Corpus, LingToken, SentencePair, ValidationMode, ValidationReport, UNKNOWN_GENRE,
};

/// How many differing sentence ids a shared-source violation lists.
pub const SHARED_SOURCE_REPORT_LIMIT: usize = 10;

#[derive(Debug, Clone)]
pub struct LoadedCorpus {
    pub role: CorpusRole,
    pub corpus: Corpus,
    pub alignment: AlignmentEdgeList,
    pub annotations_path: PathBuf,
}

#[derive(Debug, Clone)]
pub struct Project {
    pub manifest: ProjectManifest,
    pub reference: LoadedCorpus,
    pub candidate: LoadedCorpus,
    pub warnings: Vec<(PathBuf, Warning)>,
}

impl Project {
    pub fn corpus(&self, role: CorpusRole) -> &LoadedCorpus {
        match role {
            CorpusRole::Reference => &self.reference,
            CorpusRole::Candidate => &self.candidate,
        }
    }

    pub fn has_ling(&self) -> bool {
        [&self.reference, &self.candidate].iter().all(|c| {
            c.corpus
                .sentences
                .iter()
                .all(|s| s.src_ling.is_some() && s.tgt_ling.is_some())
        })
    }
}

/// Findings of [`read_project`] that do not stop loading.
#[derive(Debug, Clone, Default)]
pub struct ProjectCheck {
    /// Sentences failing draft validation, per corpus.
    pub draft_reports: Vec<(CorpusRole, String, ValidationReport)>,
    /// Sentence ids whose source tokens differ between the corpora
    /// (all of them, not just the first ten).
    pub shared_source_mismatches: Vec<String>,
}

impl ProjectCheck {
    pub fn is_clean(&self) -> bool {
        self.draft_reports.is_empty() && self.shared_source_mismatches.is_empty()
    }
}

fn mismatch(what: String, detail: String) -> IngestError {
    IngestError::SentenceCountMismatch { what, detail }
}

fn read_ling(
    path: &Path,
    tokens: &[Vec<String>],
    warnings: &mut Vec<(PathBuf, Warning)>,
) -> Result<Vec<Vec<LingToken>>, IngestError> {
    let parsed = parse_conllu(&read_text(path)?).map_err(|e| e.in_file(path))?;
    warnings.extend(parsed.warnings.into_iter().map(|w| (path.to_path_buf(), w)));
    let ling = parsed.value;
    if ling.len() != tokens.len() {
        return Err(mismatch(
            path.display().to_string(),
            format!("{} sentences, token file has {}", ling.len(), tokens.len()),
        ));
    }
    for (i, (l, t)) in ling.iter().zip(tokens).enumerate() {
        if l.len() != t.len() {
            return Err(mismatch(
                path.display().to_string(),
                format!(
                    "sentence {} has {} tokens, token file has {}",
                    sentence_id(i + 1),
                    l.len(),
                    t.len()
                ),
            ));
        }
    }
    Ok(ling)
}

fn read_corpus(
    manifest: &ProjectManifest,
    role: CorpusRole,
    genres: Option<&GenreMap>,
    warnings: &mut Vec<(PathBuf, Warning)>,
) -> Result<LoadedCorpus, IngestError> {
    let files = manifest.files(role);
    let tokens = |p: &Path,
                  warnings: &mut Vec<(PathBuf, Warning)>|
     -> Result<Vec<Vec<String>>, IngestError> {
        let path = manifest.resolve(p);
        let parsed = parse_tokenized(&read_text(&path)?).map_err(|e| e.in_file(&path))?;
        warnings.extend(parsed.warnings.into_iter().map(|w| (path.clone(), w)));
        Ok(parsed.value)
    };
    let src = tokens(&files.source, warnings)?;
    let tgt = tokens(&files.target, warnings)?;
    if src.len() != tgt.len() {
        return Err(mismatch(
            format!("{} corpus", files.name),
            format!(
                "source has {} sentences, target has {}",
                src.len(),
                tgt.len()
            ),
        ));
    }
    if let Some(g) = genres {
        g.check_covers(src.len())?;
    }

    let aln_path = manifest.resolve(&files.alignment);
    let aln = parse_alignment(&read_text(&aln_path)?).map_err(|e| e.in_file(&aln_path))?;
    warnings.extend(aln.warnings.into_iter().map(|w| (aln_path.clone(), w)));
    let alignment = aln.value;
    if alignment.len() != src.len() {
        return Err(mismatch(
            aln_path.display().to_string(),
            format!(
                "{} lines, token files have {} sentences",
                alignment.len(),
                src.len()
            ),
        ));
    }
    for (i, edges) in alignment.sentences.iter().enumerate() {
        if let Some(&(s, t)) = edges
            .iter()
            .find(|(s, t)| *s >= src[i].len() || *t >= tgt[i].len())
        {
            return Err(IngestError::EdgeOutOfBounds {
                corpus: files.name.clone(),
                id: sentence_id(i + 1),
                src: s,
                tgt: t,
                src_len: src[i].len(),
                tgt_len: tgt[i].len(),
            });
        }
    }

    let src_ling = match &files.source_conllu {
        Some(p) => Some(read_ling(&manifest.resolve(p), &src, warnings)?),
        None => None,
    };
    let tgt_ling = match &files.target_conllu {
        Some(p) => Some(read_ling(&manifest.resolve(p), &tgt, warnings)?),
        None => None,
    };

    let mut sentences: Vec<SentencePair> = src
        .into_iter()
        .zip(tgt)
        .enumerate()
        .map(|(i, (s, t))| {
            let genre = genres
                .and_then(|g| g.genre_of(i + 1))
                .unwrap_or(UNKNOWN_GENRE);
            let mut pair = SentencePair::new(sentence_id(i + 1), genre, s, t);
            pair.src_ling = src_ling.as_ref().map(|l| l[i].clone());
            pair.tgt_ling = tgt_ling.as_ref().map(|l| l[i].clone());
            pair
        })
        .collect();

    let ann_path = manifest.resolve(&files.annotations);
    if ann_path.exists() {
        let parsed = parse_annotations(&read_text(&ann_path)?).map_err(|e| e.in_file(&ann_path))?;
        warnings.extend(parsed.warnings.into_iter().map(|w| (ann_path.clone(), w)));
        for (id, units) in parsed.value.sentences {
            let pair = sentences.iter_mut().find(|s| s.id == id).ok_or_else(|| {
                IngestError::UnknownSentence {
                    corpus: files.name.clone(),
                    id: id.clone(),
                }
            })?;
            pair.units = units;
        }
    } else {
        warnings.push((
            ann_path.clone(),
            Warning::new(
                0,
                "annotation file does not exist; sentences start unannotated",
            ),
        ));
    }

    Ok(LoadedCorpus {
        role,
        corpus: Corpus::new(files.name.clone(), sentences),
        alignment,
        annotations_path: ann_path,
    })
}

/// Ids of sentences whose source tokens differ. Sentences present in only
/// one corpus count as differing.
pub fn shared_source_mismatches(reference: &Corpus, candidate: &Corpus) -> Vec<String> {
    let n = reference.sentences.len().max(candidate.sentences.len());
    (0..n)
        .filter_map(|i| {
            let r = reference.sentences.get(i);
            let c = candidate.sentences.get(i);
            match (r, c) {
                (Some(r), Some(c)) if r.src_tokens == c.src_tokens => None,
                (Some(s), _) | (None, Some(s)) => Some(s.id.clone()),
                (None, None) => None,
            }
        })
        .collect()
}

/// Loads and cross-checks all files of a project. Structural problems
/// (unparseable files, count mismatches, out-of-bounds edges) are errors;
/// annotation validity and the shared-source property are reported in the
/// returned [`ProjectCheck`].
pub fn read_project(manifest: &ProjectManifest) -> Result<(Project, ProjectCheck), IngestError> {
    let genres = manifest.genre_map()?;
    let mut warnings = Vec::new();
    let reference = read_corpus(
        manifest,
        CorpusRole::Reference,
        genres.as_ref(),
        &mut warnings,
    )?;
    let candidate = read_corpus(
        manifest,
        CorpusRole::Candidate,
        genres.as_ref(),
        &mut warnings,
    )?;

    let mut check = ProjectCheck::default();
    for loaded in [&reference, &candidate] {
        for s in &loaded.corpus.sentences {
            let report = validate(s, ValidationMode::Draft);
            if !report.is_empty() {
                check
                    .draft_reports
                    .push((loaded.role, s.id.clone(), report));
            }
        }
    }
    check.shared_source_mismatches = shared_source_mismatches(&reference.corpus, &candidate.corpus);

    Ok((
        Project {
            manifest: manifest.clone(),
            reference,
            candidate,
            warnings,
        },
        check,
    ))
}

/// Loads a project, failing unless every sentence passes draft validation
/// and both corpora share their source sentences.
pub fn load_project(manifest: &ProjectManifest) -> Result<Project, IngestError> {
    let (project, check) = read_project(manifest)?;
    if let Some((role, _, _)) = check.draft_reports.first() {
        let role = *role;
        return Err(IngestError::InvalidAnnotation {
            corpus: project.corpus(role).corpus.name.clone(),
            reports: check
                .draft_reports
                .into_iter()
                .filter(|(r, _, _)| *r == role)
                .map(|(_, id, rep)| (id, rep))
                .collect(),
        });
    }
    if !check.shared_source_mismatches.is_empty() {
        let mut ids = check.shared_source_mismatches;
        ids.truncate(SHARED_SOURCE_REPORT_LIMIT);
        return Err(IngestError::SharedSourceViolation { ids });
    }
    Ok(project)
}
