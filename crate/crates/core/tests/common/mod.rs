//! Shared loaders for the bundled mini collection.

use std::path::PathBuf;
use std::sync::OnceLock;

use qelab_core::corpus::{self, Document, QrelSet, Topic};
use qelab_core::index::{build_index, InvertedIndex};
use qelab_core::wordnet::GlossLexicon;
use qelab_core::Analyzer;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/mini")
}

pub fn load_documents() -> Vec<Document> {
    corpus::read_trec_docs_file(&data_dir().join("corpus.trec")).unwrap()
}

pub fn load_topics() -> Vec<Topic> {
    let raw = std::fs::read(data_dir().join("topics.txt")).unwrap();
    corpus::parse_topics(raw.as_slice()).unwrap()
}

pub fn load_qrels() -> QrelSet {
    let raw = std::fs::read(data_dir().join("qrels.txt")).unwrap();
    corpus::parse_qrels(raw.as_slice()).unwrap()
}

pub fn load_lexicon() -> GlossLexicon {
    GlossLexicon::load_tsv(&data_dir().join("glosses.tsv")).unwrap()
}

/// The mini index, built once per test binary.
pub fn mini_index() -> &'static InvertedIndex {
    static INDEX: OnceLock<InvertedIndex> = OnceLock::new();
    INDEX.get_or_init(|| build_index(&load_documents(), &Analyzer::default()).unwrap())
}

pub fn analyzer() -> Analyzer {
    Analyzer::default()
}
