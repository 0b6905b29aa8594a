//! Inverted index with the collection statistics the scoring formulas
//! need: postings, document table, document frequency (N_t), collection
//! frequency (F), total token count, and a stem -> most frequent surface
//! form map used for gloss-lexicon lookups.

use std::collections::HashMap;
use std::io;
use std::sync::OnceLock;

use rayon::prelude::*;
use thiserror::Error;

use crate::corpus::Document;
use crate::textproc::Analyzer;

mod io_format;

pub use io_format::FORMAT_VERSION;

/// Documents per build partition. Fixed so that the merge order (and
/// therefore every derived statistic) is independent of thread count.
const BUILD_CHUNK: usize = 128;

#[derive(Debug, Error)]
pub enum IndexError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("duplicate docno {0:?}")]
    DuplicateDocno(String),
    #[error("not an index file (bad magic)")]
    BadMagic,
    #[error("index format version {found}, expected {expected}")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("index file truncated")]
    Truncated,
    #[error("corrupt index file: {0}")]
    Corrupt(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollectionStats {
    pub n_docs: u64,
    pub total_tokens: u64,
    pub avg_doc_len: f64,
}

#[derive(Debug, Clone)]
struct TermEntry {
    text: String,
    /// Most frequent surface form observed for this stem (ties resolved
    /// lexicographically).
    surface: String,
    /// Collection frequency F: total occurrences across all documents.
    cf: u64,
    /// (doc ordinal, term frequency), ascending by ordinal.
    postings: Vec<(u32, u32)>,
}

#[derive(Debug, Clone)]
struct DocEntry {
    docno: String,
    len: u64,
}

#[derive(Debug)]
pub struct InvertedIndex {
    terms: Vec<TermEntry>,
    term_ids: HashMap<String, u32>,
    docs: Vec<DocEntry>,
    total_tokens: u64,
    /// Lazily derived forward lists: ordinal -> [(term id, tf)].
    forward: OnceLock<Vec<Vec<(u32, u32)>>>,
}

/// Per-partition partial index produced during a parallel build.
struct Partial {
    terms: Vec<String>,
    postings: Vec<Vec<(u32, u32)>>,
    cf: Vec<u64>,
    surface_counts: Vec<HashMap<String, u64>>,
    docs: Vec<DocEntry>,
}

fn build_partial(docs: &[Document], analyzer: &Analyzer) -> Partial {
    let mut p = Partial {
        terms: Vec::new(),
        postings: Vec::new(),
        cf: Vec::new(),
        surface_counts: Vec::new(),
        docs: Vec::with_capacity(docs.len()),
    };
    let mut ids: HashMap<String, u32> = HashMap::new();
    for (local_ord, doc) in docs.iter().enumerate() {
        let mut tf: HashMap<u32, u32> = HashMap::new();
        let mut len = 0u64;
        for surface in analyzer.content_words(&doc.text) {
            let term = if analyzer.stemming_enabled() {
                crate::textproc::stem(&surface)
            } else {
                surface.clone()
            };
            let id = *ids.entry(term.clone()).or_insert_with(|| {
                p.terms.push(term);
                p.postings.push(Vec::new());
                p.cf.push(0);
                p.surface_counts.push(HashMap::new());
                (p.terms.len() - 1) as u32
            });
            *tf.entry(id).or_insert(0) += 1;
            *p.surface_counts[id as usize].entry(surface).or_insert(0) += 1;
            p.cf[id as usize] += 1;
            len += 1;
        }
        // postings stay ordinal-sorted because documents are visited in order
        let mut doc_terms: Vec<(u32, u32)> = tf.into_iter().collect();
        doc_terms.sort_unstable_by_key(|&(id, _)| id);
        for (id, count) in doc_terms {
            p.postings[id as usize].push((local_ord as u32, count));
        }
        p.docs.push(DocEntry {
            docno: doc.docno.clone(),
            len,
        });
    }
    p
}

/// Build an index over a document collection.
///
/// The collection is split into fixed-size partitions that are analyzed
/// in parallel and merged in input order, so the result is deterministic
/// and identical for any thread count.
pub fn build_index(docs: &[Document], analyzer: &Analyzer) -> Result<InvertedIndex, IndexError> {
    let partials: Vec<Partial> = docs
        .par_chunks(BUILD_CHUNK)
        .map(|chunk| build_partial(chunk, analyzer))
        .collect();

    let mut index = InvertedIndex {
        terms: Vec::new(),
        term_ids: HashMap::new(),
        docs: Vec::with_capacity(docs.len()),
        total_tokens: 0,
        forward: OnceLock::new(),
    };
    let mut surface_counts: Vec<HashMap<String, u64>> = Vec::new();
    let mut seen_docnos: HashMap<String, ()> = HashMap::with_capacity(docs.len());

    for partial in partials {
        let doc_offset = index.docs.len() as u32;
        for doc in partial.docs {
            if seen_docnos.insert(doc.docno.clone(), ()).is_some() {
                return Err(IndexError::DuplicateDocno(doc.docno));
            }
            index.total_tokens += doc.len;
            index.docs.push(doc);
        }
        for (local_id, term) in partial.terms.into_iter().enumerate() {
            let global_id = match index.term_ids.get(&term) {
                Some(&id) => id,
                None => {
                    let id = index.terms.len() as u32;
                    index.term_ids.insert(term.clone(), id);
                    index.terms.push(TermEntry {
                        text: term,
                        surface: String::new(),
                        cf: 0,
                        postings: Vec::new(),
                    });
                    surface_counts.push(HashMap::new());
                    id
                }
            };
            let entry = &mut index.terms[global_id as usize];
            entry.cf += partial.cf[local_id];
            entry.postings.extend(
                partial.postings[local_id]
                    .iter()
                    .map(|&(d, tf)| (d + doc_offset, tf)),
            );
            for (surface, count) in &partial.surface_counts[local_id] {
                *surface_counts[global_id as usize]
                    .entry(surface.clone())
                    .or_insert(0) += count;
            }
        }
    }

    for (entry, counts) in index.terms.iter_mut().zip(surface_counts) {
        let mut best: Option<(&String, u64)> = None;
        for (surface, count) in &counts {
            best = match best {
                None => Some((surface, *count)),
                Some((bs, bc)) => {
                    if *count > bc || (*count == bc && surface < bs) {
                        Some((surface, *count))
                    } else {
                        Some((bs, bc))
                    }
                }
            };
        }
        entry.surface = best.map(|(s, _)| s.clone()).unwrap_or_default();
    }

    Ok(index)
}

impl InvertedIndex {
    pub fn n_docs(&self) -> u64 {
        self.docs.len() as u64
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    pub fn stats(&self) -> CollectionStats {
        let n = self.n_docs();
        CollectionStats {
            n_docs: n,
            total_tokens: self.total_tokens,
            avg_doc_len: if n > 0 {
                self.total_tokens as f64 / n as f64
            } else {
                0.0
            },
        }
    }

    pub fn term_id(&self, term: &str) -> Option<u32> {
        self.term_ids.get(term).copied()
    }

    pub fn term_text(&self, id: u32) -> &str {
        &self.terms[id as usize].text
    }

    pub fn vocab_size(&self) -> usize {
        self.terms.len()
    }

    /// Document frequency N_t.
    pub fn df(&self, term: &str) -> u32 {
        self.term_id(term)
            .map_or(0, |id| self.terms[id as usize].postings.len() as u32)
    }

    pub fn df_id(&self, id: u32) -> u32 {
        self.terms[id as usize].postings.len() as u32
    }

    /// Collection frequency F.
    pub fn cf(&self, term: &str) -> u64 {
        self.term_id(term).map_or(0, |id| self.terms[id as usize].cf)
    }

    pub fn cf_id(&self, id: u32) -> u64 {
        self.terms[id as usize].cf
    }

    /// Most frequent surface form recorded for a stem during indexing.
    pub fn surface_form(&self, term: &str) -> Option<&str> {
        self.term_id(term)
            .map(|id| self.terms[id as usize].surface.as_str())
    }

    /// Postings as (docno, tf). Unseen terms yield an empty list.
    pub fn postings(&self, term: &str) -> Vec<(&str, u32)> {
        match self.term_id(term) {
            Some(id) => self.terms[id as usize]
                .postings
                .iter()
                .map(|&(d, tf)| (self.docs[d as usize].docno.as_str(), tf))
                .collect(),
            None => Vec::new(),
        }
    }

    /// Postings as (doc ordinal, tf), ascending by ordinal.
    pub fn postings_ids(&self, id: u32) -> &[(u32, u32)] {
        &self.terms[id as usize].postings
    }

    pub fn docno(&self, ordinal: u32) -> &str {
        &self.docs[ordinal as usize].docno
    }

    pub fn doc_len(&self, ordinal: u32) -> u64 {
        self.docs[ordinal as usize].len
    }

    /// Forward list for a document: [(term id, tf)] ascending by term id.
    /// Derived from the postings on first use.
    pub fn doc_terms(&self, ordinal: u32) -> &[(u32, u32)] {
        let forward = self.forward.get_or_init(|| {
            let mut fwd: Vec<Vec<(u32, u32)>> = vec![Vec::new(); self.docs.len()];
            for (id, entry) in self.terms.iter().enumerate() {
                for &(doc, tf) in &entry.postings {
                    fwd[doc as usize].push((id as u32, tf));
                }
            }
            fwd
        });
        &forward[ordinal as usize]
    }

    /// Terms in id order (insertion order of first occurrence).
    pub fn terms_iter(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(|t| t.text.as_str())
    }
}
