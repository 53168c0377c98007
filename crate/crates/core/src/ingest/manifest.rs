//! Project manifest.
//!
//! A manifest is a TOML file naming the files of both corpora. Relative
//! paths are resolved against the manifest's directory.
//!
//! ```toml
//! project = "demo"
//!
//! [reference]                      # the human translation (HT)
//! name = "HT"
//! source = "source.txt"
//! target = "ht/target.txt"
//! alignment = "ht/corpus.aln"
//! annotations = "ht/annotations.jsonl"
//! source_conllu = "source.conllu"  # optional
//! target_conllu = "ht/target.conllu"  # optional
//!
//! [candidate]                      # the machine translation (MT)
//! name = "MT"
//! # same keys as [reference]
//!
//! [genres]                         # optional; 1-based sentence numbers
//! news = "1-2"
//! subtitles = "3, 5-6"
//! ```
//!
//! Sentence `n` (1-based line number in the token files) gets the id `s{n}`.
//! When `[genres]` is present it must cover every sentence exactly once;
//! when absent every sentence has genre `unknown`.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{read_text, IngestError};

pub fn sentence_id(number: usize) -> String {
    format!("s{}", number)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusRole {
    Reference,
    Candidate,
}

impl CorpusRole {
    pub fn as_str(self) -> &'static str {
        match self {
            CorpusRole::Reference => "reference",
            CorpusRole::Candidate => "candidate",
        }
    }
}

impl std::str::FromStr for CorpusRole {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reference" => Ok(CorpusRole::Reference),
            "candidate" => Ok(CorpusRole::Candidate),
            other => Err(format!("unknown corpus role `{}`", other)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusFiles {
    pub name: String,
    pub source: PathBuf,
    pub target: PathBuf,
    pub alignment: PathBuf,
    pub annotations: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_conllu: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_conllu: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectManifest {
    pub project: String,
    pub reference: CorpusFiles,
    pub candidate: CorpusFiles,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub genres: BTreeMap<String, String>,
    /// Directory relative paths are resolved against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl ProjectManifest {
    pub fn parse(text: &str, base_dir: impl Into<PathBuf>) -> Result<Self, IngestError> {
        let mut manifest: ProjectManifest =
            toml::from_str(text).map_err(|e| IngestError::Manifest(e.to_string()))?;
        manifest.base_dir = base_dir.into();
        manifest.genre_map()?;
        Ok(manifest)
    }

    pub fn from_path(path: &Path) -> Result<Self, IngestError> {
        let text = read_text(path)?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        ProjectManifest::parse(&text, base).map_err(|e| e.in_file(path))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("manifest always serializes")
    }

    pub fn files(&self, role: CorpusRole) -> &CorpusFiles {
        match role {
            CorpusRole::Reference => &self.reference,
            CorpusRole::Candidate => &self.candidate,
        }
    }

    pub fn resolve(&self, path: &Path) -> PathBuf {
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.base_dir.join(path)
        }
    }

    pub fn genre_map(&self) -> Result<Option<GenreMap>, IngestError> {
        if self.genres.is_empty() {
            return Ok(None);
        }
        GenreMap::parse(&self.genres).map(Some)
    }
}

/// Genre assignment by 1-based sentence number ranges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenreMap {
    ranges: Vec<(RangeInclusive<usize>, String)>,
}

fn parse_range(text: &str) -> Option<RangeInclusive<usize>> {
    let text = text.trim();
    let (a, b) = match text.split_once('-') {
        Some((a, b)) => (a.trim().parse().ok()?, b.trim().parse().ok()?),
        None => {
            let n = text.parse().ok()?;
            (n, n)
        }
    };
    (a >= 1 && a <= b).then_some(a..=b)
}

impl GenreMap {
    pub fn parse(entries: &BTreeMap<String, String>) -> Result<Self, IngestError> {
        let mut ranges = Vec::new();
        for (genre, spec) in entries {
            for part in spec.split(',') {
                let range = parse_range(part).ok_or_else(|| {
                    IngestError::Manifest(format!("genre `{}`: bad range `{}`", genre, part.trim()))
                })?;
                ranges.push((range, genre.clone()));
            }
        }
        ranges.sort_by_key(|(r, _)| *r.start());
        for pair in ranges.windows(2) {
            if pair[1].0.start() <= pair[0].0.end() {
                return Err(IngestError::Manifest(format!(
                    "genre ranges overlap: {} ({:?}) and {} ({:?})",
                    pair[0].1, pair[0].0, pair[1].1, pair[1].0
                )));
            }
        }
        Ok(GenreMap { ranges })
    }

    pub fn genre_of(&self, number: usize) -> Option<&str> {
        self.ranges
            .iter()
            .find(|(r, _)| r.contains(&number))
            .map(|(_, g)| g.as_str())
    }

    /// Checks that sentences `1..=count` are all covered and nothing beyond.
    pub fn check_covers(&self, count: usize) -> Result<(), IngestError> {
        if let Some(n) = (1..=count).find(|n| self.genre_of(*n).is_none()) {
            return Err(IngestError::Manifest(format!(
                "genre map does not cover sentence {}",
                n
            )));
        }
        if let Some((r, g)) = self.ranges.iter().find(|(r, _)| *r.end() > count) {
            return Err(IngestError::Manifest(format!(
                "genre `{}` range {:?} exceeds the {} sentences",
                g, r, count
            )));
        }
        Ok(())
    }
}
