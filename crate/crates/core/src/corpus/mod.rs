//! TREC data formats: SGML document collections, topic files, relevance
//! judgments (qrels), and six-column run files.

use std::collections::HashMap;
use std::io;

use thiserror::Error;

mod qrels;
mod run;
mod sgml;
mod topics;

pub use qrels::parse_qrels;
pub use run::{parse_run, RunEntry, RunFile};
pub use sgml::{parse_trec_docs, read_trec_docs_file};
pub use topics::parse_topics;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("malformed document block at byte {offset}: {reason}")]
    MalformedDoc { offset: usize, reason: String },
    #[error("topic parse error: {0}")]
    Topic(String),
    #[error("qrels line {line}: {reason}")]
    Qrels { line: usize, reason: String },
    #[error("run file line {line}: {reason}")]
    Run { line: usize, reason: String },
    #[error("invalid run for topic {topic}: {reason}")]
    InvalidRun { topic: u32, reason: String },
}

/// A raw document: external identifier plus body text with markup removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub docno: String,
    pub text: String,
}

/// A search topic; only the title field is retained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topic {
    pub id: u32,
    pub title: String,
}

/// Relevance judgments: (topic, docno) -> grade. A document is relevant
/// when its grade is positive.
#[derive(Debug, Clone, Default)]
pub struct QrelSet {
    grades: HashMap<u32, HashMap<String, u32>>,
}

impl QrelSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record a judgment; a later duplicate overrides an earlier one.
    pub fn insert(&mut self, topic: u32, docno: String, grade: u32) {
        self.grades.entry(topic).or_default().insert(docno, grade);
    }

    pub fn grade(&self, topic: u32, docno: &str) -> Option<u32> {
        self.grades.get(&topic).and_then(|m| m.get(docno)).copied()
    }

    pub fn is_relevant(&self, topic: u32, docno: &str) -> bool {
        self.grade(topic, docno).map_or(false, |g| g > 0)
    }

    /// Number of judged-relevant documents for a topic.
    pub fn relevant_count(&self, topic: u32) -> usize {
        self.grades
            .get(&topic)
            .map_or(0, |m| m.values().filter(|&&g| g > 0).count())
    }

    /// Topics with at least one judgment, ascending.
    pub fn topics(&self) -> Vec<u32> {
        let mut t: Vec<u32> = self.grades.keys().copied().collect();
        t.sort_unstable();
        t
    }

    pub fn judged_count(&self) -> usize {
        self.grades.values().map(|m| m.len()).sum()
    }
}
