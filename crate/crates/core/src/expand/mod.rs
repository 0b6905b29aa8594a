//! Query expansion over pseudo-relevant documents.
//!
//! All methods share the same shape: retrieve the top-D documents for
//! the unexpanded query (the PRD set), score candidate expansion terms
//! drawn from those documents, keep the best T, and assemble a weighted
//! query from normalized expansion scores plus boosted original terms.
//!
//! Methods differ in the candidate score:
//! * `pwnet`  - gloss overlap with query units x Robertson idf x
//!   normalized similarity mass of the PRD documents containing the term,
//!   squashed through s/(1+s) per query unit;
//! * `nownet` - the same without the gloss factor;
//! * `fnpw`   - the gloss factor alone;
//! * `kld`    - contribution to the Kullback-Leibler divergence between
//!   the PRD and collection term distributions;
//! * `rm3`    - relevance-model estimate interpolated with the query
//!   model (its own weighting, not the shared assembly);
//! * `kldlca` - KLD selection reranked by local context analysis;
//! * `klwnet` - convex combination of pwnet and kldlca scores.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::corpus::Topic;
use crate::index::InvertedIndex;
use crate::retrieval::{search_ids, WeightedQuery};
use crate::textproc::Analyzer;
use crate::wordnet::RelMode;

mod gloss_family;
mod kld;
mod lca;
mod rm3;

pub use gloss_family::{
    fnpw_expand, nownet_expand, pwnet_expand, pwnet_expand_from_prd, pwnet_score,
    ScoredCandidate,
};
pub use kld::{kld_expand, kld_term_scores};
pub use lca::lca_belief;
pub use rm3::rm3_expand;

mod combine;
pub use combine::{kldlca_expand, klwnet_expand};

/// Expansion method tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Pwnet,
    Nownet,
    Fnpw,
    Kld,
    Rm3,
    Kldlca,
    Klwnet,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Pwnet => "pwnet",
            Method::Nownet => "nownet",
            Method::Fnpw => "fnpw",
            Method::Kld => "kld",
            Method::Rm3 => "rm3",
            Method::Kldlca => "kldlca",
            Method::Klwnet => "klwnet",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        match s {
            "pwnet" => Some(Method::Pwnet),
            "nownet" => Some(Method::Nownet),
            "fnpw" => Some(Method::Fnpw),
            "kld" => Some(Method::Kld),
            "rm3" => Some(Method::Rm3),
            "kldlca" => Some(Method::Kldlca),
            "klwnet" => Some(Method::Klwnet),
            _ => None,
        }
    }

    /// Methods that need a gloss lexicon.
    pub fn needs_lexicon(&self) -> bool {
        matches!(self, Method::Pwnet | Method::Fnpw | Method::Klwnet)
    }

    pub fn all() -> [Method; 7] {
        [
            Method::Pwnet,
            Method::Nownet,
            Method::Fnpw,
            Method::Kld,
            Method::Rm3,
            Method::Kldlca,
            Method::Klwnet,
        ]
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid expansion config: {0}")]
    Invalid(String),
}

/// Knobs shared by the expansion methods. Per-method constructors carry
/// the stock settings.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionConfig {
    /// PRD size D.
    pub d: usize,
    /// Number of expansion terms T.
    pub t: usize,
    /// Original-term multiplier (Eq. 8 beta).
    pub beta: f64,
    /// pwnet share in the klwnet combination.
    pub alpha: f64,
    /// Gloss overlap measure.
    pub mode: RelMode,
    /// Dirichlet smoothing parameter (rm3).
    pub mu: f64,
    /// Query-model interpolation weight (rm3).
    pub lambda: f64,
}

impl ExpansionConfig {
    fn base() -> Self {
        ExpansionConfig {
            d: 10,
            t: 60,
            beta: 2.0,
            alpha: 0.3,
            mode: RelMode::Dice,
            mu: 2500.0,
            lambda: 0.5,
        }
    }

    pub fn pwnet() -> Self {
        Self::base()
    }

    pub fn nownet() -> Self {
        Self::base()
    }

    pub fn fnpw() -> Self {
        Self::base()
    }

    pub fn kld() -> Self {
        ExpansionConfig {
            t: 40,
            beta: 1.0,
            ..Self::base()
        }
    }

    pub fn rm3() -> Self {
        ExpansionConfig {
            d: 50,
            t: 50,
            ..Self::base()
        }
    }

    pub fn kldlca() -> Self {
        ExpansionConfig {
            d: 50,
            t: 40,
            beta: 1.0,
            ..Self::base()
        }
    }

    pub fn for_method(method: Method) -> Self {
        match method {
            Method::Pwnet => Self::pwnet(),
            Method::Nownet => Self::nownet(),
            Method::Fnpw => Self::fnpw(),
            Method::Kld => Self::kld(),
            Method::Rm3 => Self::rm3(),
            Method::Kldlca => Self::kldlca(),
            Method::Klwnet => Self::pwnet(),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.d < 1 {
            return Err(ConfigError::Invalid("D must be >= 1".into()));
        }
        if self.t < 1 {
            return Err(ConfigError::Invalid("T must be >= 1".into()));
        }
        if self.beta < 0.0 {
            return Err(ConfigError::Invalid("beta must be >= 0".into()));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(ConfigError::Invalid("alpha must be in [0, 1]".into()));
        }
        if self.mu <= 0.0 {
            return Err(ConfigError::Invalid("mu must be > 0".into()));
        }
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(ConfigError::Invalid("lambda must be in [0, 1]".into()));
        }
        Ok(())
    }
}

/// Robertson's clamped idf: `max(0.0001, log10((N - N_t + 0.5) / (N_t + 0.5)))`.
pub fn robertson_idf(n: u64, nt: u64) -> f64 {
    let raw = ((n as f64 - nt as f64 + 0.5) / (nt as f64 + 0.5)).log10();
    raw.max(0.0001)
}

/// The top-D documents of the initial retrieval, with their similarity
/// scores.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoRelevantDocs {
    pub topic: u32,
    /// (doc ordinal, Sim(d, Q)) in rank order; sims non-increasing.
    pub docs: Vec<(u32, f64)>,
}

impl PseudoRelevantDocs {
    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    /// Maximum similarity; by the rank-order invariant this is the first
    /// entry.
    pub fn max_sim(&self) -> Option<f64> {
        self.docs.first().map(|&(_, sim)| sim)
    }
}

/// Top-D retrieval on the unexpanded query.
pub fn retrieve_prd(index: &InvertedIndex, query: &WeightedQuery, d: usize) -> PseudoRelevantDocs {
    PseudoRelevantDocs {
        topic: query.topic,
        docs: search_ids(index, query, d),
    }
}

/// A query expanded by one of the methods: final term weights, sorted by
/// weight descending then term ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpandedQuery {
    pub topic: u32,
    pub method: Method,
    pub terms: Vec<(String, f64)>,
}

impl ExpandedQuery {
    pub fn to_weighted_query(&self) -> WeightedQuery {
        WeightedQuery::new(self.topic, self.terms.clone())
    }

    /// `topic<TAB>term<TAB>weight` lines in weight order.
    pub fn to_tsv(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        for (term, weight) in &self.terms {
            writeln!(out, "{}\t{}\t{:.6}", self.topic, term, weight).unwrap();
        }
        out
    }
}

/// The analyzed query: surface words for unit detection, stems for
/// retrieval and original-term weighting.
#[derive(Debug, Clone)]
pub(crate) struct QueryView {
    pub topic: u32,
    /// Stopword-filtered surface words in original order.
    pub surface_words: Vec<String>,
    /// Unique analyzed terms with query term frequency, term-sorted.
    pub term_tfs: Vec<(String, u32)>,
}

impl QueryView {
    pub fn from_topic(topic: &Topic, analyzer: &Analyzer) -> QueryView {
        let surface_words = analyzer.content_words(&topic.title);
        let mut tfs: BTreeMap<String, u32> = BTreeMap::new();
        for term in analyzer.analyze(&topic.title) {
            *tfs.entry(term).or_insert(0) += 1;
        }
        QueryView {
            topic: topic.id,
            surface_words,
            term_tfs: tfs.into_iter().collect(),
        }
    }

    /// The unexpanded retrieval query: each unique term weighted by its
    /// in-query frequency.
    pub fn initial_query(&self) -> WeightedQuery {
        WeightedQuery::new(
            self.topic,
            self.term_tfs
                .iter()
                .map(|(t, tf)| (t.clone(), *tf as f64))
                .collect(),
        )
    }

    /// Passthrough result used whenever a method cannot expand (empty
    /// PRD or no positively-scored candidate): the original query,
    /// unchanged.
    pub fn passthrough(&self, method: Method) -> ExpandedQuery {
        ExpandedQuery {
            topic: self.topic,
            method,
            terms: self
                .term_tfs
                .iter()
                .map(|(t, tf)| (t.clone(), *tf as f64))
                .collect(),
        }
    }
}

/// Candidate occurrences within the PRD: for each term id, the PRD rank
/// positions where it occurs and its tf there. Term ids ascending;
/// positions ascending within a term.
#[derive(Debug)]
pub(crate) struct PrdStats {
    pub terms: Vec<(u32, Vec<(usize, u32)>)>,
    pub total_tokens: u64,
}

pub(crate) fn prd_stats(index: &InvertedIndex, prd: &PseudoRelevantDocs) -> PrdStats {
    let mut map: std::collections::HashMap<u32, Vec<(usize, u32)>> =
        std::collections::HashMap::new();
    let mut total_tokens = 0u64;
    for (pos, &(doc, _)) in prd.docs.iter().enumerate() {
        total_tokens += index.doc_len(doc);
        for &(term_id, tf) in index.doc_terms(doc) {
            map.entry(term_id).or_default().push((pos, tf));
        }
    }
    let mut terms: Vec<(u32, Vec<(usize, u32)>)> = map.into_iter().collect();
    terms.sort_unstable_by_key(|&(id, _)| id);
    PrdStats {
        terms,
        total_tokens,
    }
}

/// Distinct terms of the PRD documents (the candidate universe), in
/// term-id order.
pub fn prd_vocabulary(index: &InvertedIndex, prd: &PseudoRelevantDocs) -> Vec<String> {
    prd_stats(index, prd)
        .terms
        .iter()
        .map(|&(id, _)| index.term_text(id).to_owned())
        .collect()
}

/// Shape of a method's candidate scoring, before assembly.
#[derive(Debug, Clone)]
pub(crate) struct Selection {
    /// Top-T candidates with their raw scores.
    pub selected: Vec<(String, f64)>,
    /// Maximum raw score over ALL candidates (normalization denominator;
    /// computed before truncation).
    pub global_max: f64,
}

impl Selection {
    /// Normalized per-term expansion scores (the Eq. 6 values).
    pub fn normalized(&self) -> BTreeMap<String, f64> {
        self.selected
            .iter()
            .map(|(t, s)| (t.clone(), s / self.global_max))
            .collect()
    }
}

/// Keep the positively-scored candidates, order by score descending with
/// lexicographic tie-break, record the pre-truncation maximum, and keep
/// the top `t`.
pub(crate) fn select_top(mut scored: Vec<(String, f64)>, t: usize) -> Option<Selection> {
    scored.retain(|(_, s)| *s > 0.0);
    if scored.is_empty() {
        return None;
    }
    scored.sort_unstable_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let global_max = scored[0].1;
    scored.truncate(t);
    Some(Selection {
        selected: scored,
        global_max,
    })
}

/// Eq. 6-8 assembly: normalized expansion scores plus beta-boosted
/// original terms. A term that is both original and selected receives
/// the sum.
pub(crate) fn assemble(
    topic: u32,
    method: Method,
    orig_tfs: &[(String, u32)],
    selection: &Selection,
    beta: f64,
) -> ExpandedQuery {
    let mut weights: BTreeMap<String, f64> = BTreeMap::new();
    for (term, raw) in &selection.selected {
        *weights.entry(term.clone()).or_insert(0.0) += raw / selection.global_max;
    }
    let max_log_tf = orig_tfs
        .iter()
        .map(|&(_, tf)| (tf as f64).ln())
        .fold(0.0f64, f64::max);
    for (term, tf) in orig_tfs {
        let score_orig = (1.0 + (*tf as f64).ln()) / (1.0 + max_log_tf);
        *weights.entry(term.clone()).or_insert(0.0) += beta * score_orig;
    }
    let mut terms: Vec<(String, f64)> = weights.into_iter().filter(|(_, w)| *w > 0.0).collect();
    terms.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ExpandedQuery {
        topic,
        method,
        terms,
    }
}

/// Public single-step assembly mirroring the shared Eq. 6-8 weighting:
/// expansion scores are normalized by `global_max` (the maximum raw
/// score over all candidates) and original terms enter at
/// `beta * (1 + log tf) / (1 + max log tf)`.
pub fn assemble_query(
    topic: u32,
    method: Method,
    orig_tfs: &[(String, u32)],
    selected: &[(String, f64)],
    global_max: f64,
    beta: f64,
) -> ExpandedQuery {
    let selection = Selection {
        selected: selected.to_vec(),
        global_max,
    };
    assemble(topic, method, orig_tfs, &selection, beta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn robertson_idf_clamps_negative() {
        // N=1000, N_t=600: log10(400.5/600.5) < 0
        assert_eq!(robertson_idf(1000, 600), 0.0001);
    }

    #[test]
    fn robertson_idf_hand_case() {
        // N=1000, N_t=10: log10(990.5/10.5)
        assert!((robertson_idf(1000, 10) - 1.9746).abs() < 1e-4);
    }

    #[test]
    fn robertson_idf_boundary_half() {
        // N_t = N/2 gives log10(1) = 0, clamped up to 0.0001
        assert_eq!(robertson_idf(1000, 500), 0.0001);
    }

    #[test]
    fn assemble_table_weights() {
        // beta = 2 and an original-term expansion score of 0.94 -> 2.94
        let orig = vec![("polygami".to_string(), 1u32)];
        let selected = vec![("polygami".to_string(), 0.94), ("widow".to_string(), 1.0)];
        let eq = assemble_query(316, Method::Pwnet, &orig, &selected, 1.0, 2.0);
        let w: BTreeMap<_, _> = eq.terms.iter().cloned().collect();
        assert!((w["polygami"] - 2.94).abs() < 1e-4);
        assert!((w["widow"] - 1.0).abs() < 1e-12);
        // ordering: weight desc
        assert_eq!(eq.terms[0].0, "polygami");
    }

    #[test]
    fn assemble_all_tf1_gives_unit_orig_scores() {
        let orig = vec![("a".to_string(), 1), ("b".to_string(), 1)];
        let selected = vec![("c".to_string(), 0.5)];
        let eq = assemble_query(1, Method::Kld, &orig, &selected, 1.0, 1.0);
        let w: BTreeMap<_, _> = eq.terms.iter().cloned().collect();
        assert_eq!(w["a"], 1.0);
        assert_eq!(w["b"], 1.0);
        assert_eq!(w["c"], 0.5);
    }

    #[test]
    fn assemble_expansion_only_term_keeps_score_exp() {
        let eq = assemble_query(
            1,
            Method::Kld,
            &[("q".to_string(), 1)],
            &[("x".to_string(), 0.25)],
            1.0,
            1.0,
        );
        let w: BTreeMap<_, _> = eq.terms.iter().cloned().collect();
        assert_eq!(w["x"], 0.25);
    }

    #[test]
    fn select_top_orders_and_truncates() {
        let scored = vec![
            ("b".to_string(), 2.0),
            ("a".to_string(), 2.0),
            ("c".to_string(), 3.0),
            ("d".to_string(), 0.0),
            ("e".to_string(), -1.0),
            ("f".to_string(), 1.0),
        ];
        let sel = select_top(scored, 3).unwrap();
        assert_eq!(sel.global_max, 3.0);
        let names: Vec<&str> = sel.selected.iter().map(|(t, _)| t.as_str()).collect();
        assert_eq!(names, ["c", "a", "b"]);
    }

    #[test]
    fn select_top_empty_when_nothing_positive() {
        assert!(select_top(vec![("a".to_string(), 0.0)], 5).is_none());
        assert!(select_top(vec![], 5).is_none());
    }

    #[test]
    fn config_defaults_match_stock_settings() {
        let p = ExpansionConfig::pwnet();
        assert_eq!((p.d, p.t, p.beta), (10, 60, 2.0));
        let k = ExpansionConfig::kld();
        assert_eq!((k.d, k.t, k.beta), (10, 40, 1.0));
        let r = ExpansionConfig::rm3();
        assert_eq!((r.d, r.t, r.mu, r.lambda), (50, 50, 2500.0, 0.5));
        let kl = ExpansionConfig::kldlca();
        assert_eq!((kl.d, kl.t, kl.beta), (50, 40, 1.0));
        assert_eq!(ExpansionConfig::pwnet().alpha, 0.3);
        for cfg in [p, k, r, kl] {
            cfg.validate().unwrap();
        }
    }

    #[test]
    fn config_validation_rejects_bad_values() {
        let mut c = ExpansionConfig::pwnet();
        c.d = 0;
        assert!(c.validate().is_err());
        let mut c = ExpansionConfig::pwnet();
        c.alpha = 1.5;
        assert!(c.validate().is_err());
        let mut c = ExpansionConfig::rm3();
        c.lambda = -0.1;
        assert!(c.validate().is_err());
    }
}
