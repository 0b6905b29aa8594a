//! qelab-core: a self-contained text retrieval engine with
//! pseudo-relevance-feedback query expansion.
//!
//! The crate provides the full experimental pipeline: TREC-format corpus
//! and topic parsing, an inverted index with collection statistics, DFR
//! (IFB2) ranked retrieval, a family of query-expansion methods driven by
//! term distribution, term association, and gloss overlap against a
//! WordNet-style lexicon, and trec_eval-compatible evaluation.

pub mod corpus;
pub mod eval;
pub mod expand;
pub mod index;
pub mod retrieval;
pub mod wordnet;
pub mod textproc;

pub use textproc::Analyzer;
