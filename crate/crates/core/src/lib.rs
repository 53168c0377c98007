//! Translation-relation annotation and comparative analysis of parallel
//! corpora.
//!
//! A project pairs one English source text with two Chinese translations,
//! a *reference* and a *candidate*. Each sentence is segmented into aligned
//! units labelled with a translation relation; the crate validates those
//! annotations, proposes draft ones from word alignments, and computes
//! the distribution, discrepancy, edit-distance and sub-category tables
//! used to compare the two translations.
//!
//! Modules follow the data flow: [`ingest`] reads files into the [`model`],
//! [`preannotate`] drafts units, [`metrics`] and [`subcat`] produce
//! [`table::StatTable`]s, [`cli`] writes them out and [`service`] serves the
//! annotation API.

pub mod cli;
pub mod ingest;
pub mod metrics;
pub mod model;
pub mod preannotate;
pub mod service;
pub mod subcat;
pub mod table;

pub use model::{AlignedUnit, Corpus, RelationLabel, SentencePair, SubCategory};
pub use table::{Cell, StatTable};
