//! Ranked retrieval with the IFB2 variant of the Divergence From
//! Randomness framework.
//!
//! IFB2 composes the inverse term frequency information content
//! `Inf1 = tfn * log2((N + 1) / (F + 0.5))` with the Bernoulli first
//! normalization `B = (F + 1) / (N_t * (tfn + 1))`, where
//! `tfn = tf * log2(1 + c * avg_dl / dl)` is normalization 2 with the
//! default c = 1.

use crate::corpus::{RunEntry, RunFile};
use crate::index::InvertedIndex;

/// Normalization 2 hyperparameter; the stock default.
pub const IFB2_C: f64 = 1.0;

/// A query as a weighted bag of terms.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedQuery {
    pub topic: u32,
    /// (term, weight); weights must be non-negative.
    pub terms: Vec<(String, f64)>,
}

impl WeightedQuery {
    pub fn new(topic: u32, terms: Vec<(String, f64)>) -> Self {
        WeightedQuery { topic, terms }
    }
}

/// Ranked search output: (docno, score), scores non-increasing, ties
/// broken by docno ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    pub entries: Vec<(String, f64)>,
}

impl Ranking {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_run_entries(&self) -> Vec<RunEntry> {
        self.entries
            .iter()
            .map(|(docno, score)| RunEntry {
                docno: docno.clone(),
                score: *score,
            })
            .collect()
    }
}

/// IFB2 weight of one term occurrence in one document.
///
/// `tf` is the in-document frequency, `qtw` the query term weight, `n`
/// the collection size N, `nt` the document frequency N_t, `f` the
/// collection frequency F. Callers must skip absent terms: `tf = 0` is a
/// contract violation.
pub fn ifb2_weight(tf: u32, doc_len: u64, qtw: f64, n: u64, nt: u32, f: u64, avg_dl: f64) -> f64 {
    assert!(tf >= 1, "ifb2_weight called with tf = 0");
    assert!(nt >= 1 && f >= 1, "ifb2_weight called for an unseen term");
    let tfn = tf as f64 * (1.0 + IFB2_C * avg_dl / doc_len as f64).log2();
    let first_norm = (f as f64 + 1.0) / (nt as f64 * (tfn + 1.0));
    qtw * first_norm * tfn * ((n as f64 + 1.0) / (f as f64 + 0.5)).log2()
}

/// Score all documents containing at least one query term; return the
/// top `k` as (doc ordinal, score).
///
/// Deterministic: terms are processed in lexicographic order so score
/// accumulation order is fixed, and ties are broken by docno.
pub fn search_ids(index: &InvertedIndex, query: &WeightedQuery, k: usize) -> Vec<(u32, f64)> {
    let stats = index.stats();
    let mut terms: Vec<(&str, f64)> = query
        .terms
        .iter()
        .filter(|(_, w)| *w > 0.0)
        .map(|(t, w)| (t.as_str(), *w))
        .collect();
    terms.sort_unstable_by(|a, b| a.0.cmp(b.0));

    let mut acc: std::collections::HashMap<u32, f64> = std::collections::HashMap::new();
    for (term, qtw) in terms {
        let Some(id) = index.term_id(term) else {
            continue;
        };
        let nt = index.df_id(id);
        let f = index.cf_id(id);
        for &(doc, tf) in index.postings_ids(id) {
            *acc.entry(doc).or_insert(0.0) +=
                ifb2_weight(tf, index.doc_len(doc), qtw, stats.n_docs, nt, f, stats.avg_doc_len);
        }
    }

    let mut hits: Vec<(u32, f64)> = acc.into_iter().collect();
    hits.sort_unstable_by(|a, b| {
        b.1.total_cmp(&a.1)
            .then_with(|| index.docno(a.0).cmp(index.docno(b.0)))
    });
    hits.truncate(k);
    hits
}

/// Top-k search returning external document identifiers.
pub fn search(index: &InvertedIndex, query: &WeightedQuery, k: usize) -> Ranking {
    let entries = search_ids(index, query, k)
        .into_iter()
        .map(|(doc, score)| (index.docno(doc).to_owned(), score))
        .collect();
    Ranking { entries }
}

/// Convenience: a whole run from per-topic rankings, in topic order.
pub fn rankings_to_run(rankings: &[(u32, Ranking)]) -> RunFile {
    let mut run = RunFile::new();
    for (topic, ranking) in rankings {
        run.insert_topic(*topic, ranking.to_run_entries())
            .expect("search output is sorted by construction");
    }
    run
}
