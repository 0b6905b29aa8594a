//! Distribution-based expansion: a candidate's score is its contribution
//! `p_R(t) * log2(p_R(t) / p_C(t))` to the Kullback-Leibler divergence
//! between the PRD term distribution and the collection distribution.

use crate::index::InvertedIndex;
use crate::textproc::Analyzer;

use super::{
    assemble, prd_stats, retrieve_prd, select_top, ExpandedQuery, ExpansionConfig, Method,
    PrdStats, QueryView, Selection,
};

/// KLD contribution of every PRD term, in term-id order.
pub(crate) fn kld_scores(index: &InvertedIndex, stats: &PrdStats) -> Vec<(String, f64)> {
    let collection_tokens = index.total_tokens() as f64;
    let prd_tokens = stats.total_tokens as f64;
    stats
        .terms
        .iter()
        .map(|(term_id, occurrences)| {
            let tf_prd: u64 = occurrences.iter().map(|&(_, tf)| tf as u64).sum();
            let p_r = tf_prd as f64 / prd_tokens;
            let p_c = index.cf_id(*term_id) as f64 / collection_tokens;
            (
                index.term_text(*term_id).to_owned(),
                p_r * (p_r / p_c).log2(),
            )
        })
        .collect()
}

/// Public scoring hook: KLD contributions of all terms in the PRD of the
/// given query at depth `d`, as (term, score) pairs.
pub fn kld_term_scores(
    index: &InvertedIndex,
    query: &crate::retrieval::WeightedQuery,
    d: usize,
) -> Vec<(String, f64)> {
    let prd = retrieve_prd(index, query, d);
    if prd.is_empty() {
        return Vec::new();
    }
    let stats = prd_stats(index, &prd);
    kld_scores(index, &stats)
}

pub(crate) fn kld_select(
    index: &InvertedIndex,
    qv: &QueryView,
    cfg: &ExpansionConfig,
) -> Option<Selection> {
    let prd = retrieve_prd(index, &qv.initial_query(), cfg.d);
    if prd.is_empty() {
        return None;
    }
    let stats = prd_stats(index, &prd);
    select_top(kld_scores(index, &stats), cfg.t)
}

/// KLD expansion with the shared assembly (beta = 1 by default).
pub fn kld_expand(
    index: &InvertedIndex,
    topic: &crate::corpus::Topic,
    analyzer: &Analyzer,
    cfg: &ExpansionConfig,
) -> ExpandedQuery {
    let qv = QueryView::from_topic(topic, analyzer);
    match kld_select(index, &qv, cfg) {
        Some(selection) => assemble(qv.topic, Method::Kld, &qv.term_tfs, &selection, cfg.beta),
        None => qv.passthrough(Method::Kld),
    }
}
