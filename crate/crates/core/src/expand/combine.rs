//! Combination methods: KLD selection reranked by local context
//! analysis (kldlca), and the convex pwnet/kldlca score mixture
//! (klwnet).

use std::collections::BTreeMap;

use crate::index::InvertedIndex;
use crate::textproc::Analyzer;

use super::gloss_family::pwnet_select;
use crate::wordnet::GlossLexicon;
use super::kld::kld_scores;
use super::lca::LcaContext;
use super::{
    assemble, prd_stats, retrieve_prd, select_top, ExpandedQuery, ExpansionConfig, Method,
    QueryView, Selection,
};

/// KLD pool factor: the rerank pool holds up to `POOL_FACTOR * T`
/// candidates.
const POOL_FACTOR: usize = 2;

/// KLD candidates reranked (not reweighted) by LCA belief: the pool is
/// the top 2T terms by KLD score; the top T of the pool by belief are
/// selected, each keeping its original KLD weight.
pub(crate) fn kldlca_select(
    index: &InvertedIndex,
    qv: &QueryView,
    cfg: &ExpansionConfig,
) -> Option<Selection> {
    let prd = retrieve_prd(index, &qv.initial_query(), cfg.d);
    if prd.is_empty() {
        return None;
    }
    let stats = prd_stats(index, &prd);
    let pool = select_top(kld_scores(index, &stats), POOL_FACTOR * cfg.t)?;

    let query_terms: Vec<String> = qv.term_tfs.iter().map(|(t, _)| t.clone()).collect();
    let ctx = LcaContext::new(index, &stats, &query_terms, prd.len());
    let mut reranked: Vec<(String, f64, f64)> = pool
        .selected
        .into_iter()
        .map(|(term, kld_score)| {
            let id = index.term_id(&term).expect("pool terms are indexed");
            let belief = ctx.belief(index, &stats, id);
            (term, kld_score, belief)
        })
        .collect();
    reranked.sort_by(|a, b| b.2.total_cmp(&a.2).then_with(|| a.0.cmp(&b.0)));
    reranked.truncate(cfg.t);

    Some(Selection {
        selected: reranked
            .into_iter()
            .map(|(term, kld_score, _)| (term, kld_score))
            .collect(),
        global_max: pool.global_max,
    })
}

/// KLDLCA expansion with the shared assembly (beta = 1 by default).
pub fn kldlca_expand(
    index: &InvertedIndex,
    topic: &crate::corpus::Topic,
    analyzer: &Analyzer,
    cfg: &ExpansionConfig,
) -> ExpandedQuery {
    let qv = QueryView::from_topic(topic, analyzer);
    match kldlca_select(index, &qv, cfg) {
        Some(selection) => assemble(qv.topic, Method::Kldlca, &qv.term_tfs, &selection, cfg.beta),
        None => qv.passthrough(Method::Kldlca),
    }
}

/// Combine two normalized expansion scores; a term missing from one
/// method scores zero there.
pub fn combine_scores(pwnet_score: f64, kldlca_score: f64, alpha: f64) -> f64 {
    alpha * pwnet_score + (1.0 - alpha) * kldlca_score
}

/// klwnet: each constituent runs with its own settings; the expansion
/// term set is the union of their selections, weighted by the convex
/// combination of their normalized scores. Original query terms enter
/// once, at their Eq. 7 weight (multiplier 1), and do not accumulate
/// expansion mass.
pub fn klwnet_expand(
    index: &InvertedIndex,
    topic: &crate::corpus::Topic,
    lexicon: &GlossLexicon,
    analyzer: &Analyzer,
    pwnet_cfg: &ExpansionConfig,
    kldlca_cfg: &ExpansionConfig,
    alpha: f64,
) -> ExpandedQuery {
    let qv = QueryView::from_topic(topic, analyzer);
    let s1 = pwnet_select(index, &qv, lexicon, analyzer, pwnet_cfg);
    let s2 = kldlca_select(index, &qv, kldlca_cfg);
    if s1.is_none() && s2.is_none() {
        return qv.passthrough(Method::Klwnet);
    }
    let n1 = s1.map(|s| s.normalized()).unwrap_or_default();
    let n2 = s2.map(|s| s.normalized()).unwrap_or_default();

    let original: BTreeMap<&str, u32> = qv.term_tfs.iter().map(|(t, tf)| (t.as_str(), *tf)).collect();
    let max_log_tf = qv
        .term_tfs
        .iter()
        .map(|&(_, tf)| (tf as f64).ln())
        .fold(0.0f64, f64::max);

    let mut weights: BTreeMap<String, f64> = BTreeMap::new();
    for term in n1.keys().chain(n2.keys()) {
        if original.contains_key(term.as_str()) {
            continue;
        }
        let combined = combine_scores(
            n1.get(term).copied().unwrap_or(0.0),
            n2.get(term).copied().unwrap_or(0.0),
            alpha,
        );
        if combined > 0.0 {
            weights.insert(term.clone(), combined);
        }
    }
    for (term, tf) in &qv.term_tfs {
        let score_orig = (1.0 + (*tf as f64).ln()) / (1.0 + max_log_tf);
        weights.insert(term.clone(), score_orig);
    }

    let mut terms: Vec<(String, f64)> = weights.into_iter().collect();
    terms.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ExpandedQuery {
        topic: qv.topic,
        method: Method::Klwnet,
        terms,
    }
}
