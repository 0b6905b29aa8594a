//! Relevance-model expansion (RM3).
//!
//! RM1 estimates `p(t|R)` as the query-likelihood-weighted average of
//! Dirichlet-smoothed document models over the PRD:
//!
//! ```text
//! p(t|R) = sum_d p(t|d) * p(Q|d) / sum_d p(Q|d)
//! p(t|d) = (tf(t,d) + mu * p_C(t)) / (|d| + mu)
//! p(Q|d) = prod_i p(q_i|d)^tf(q_i,Q)
//! ```
//!
//! RM3 interpolates the top-T RM1 terms with the query's maximum
//! likelihood model: `p'(t) = lambda * p_mle(t|Q) + (1-lambda) * p(t|R)`,
//! and the final query weights are `p'` normalized by its maximum.

use std::collections::BTreeMap;

use crate::index::InvertedIndex;
use crate::textproc::Analyzer;

use super::{
    prd_stats, retrieve_prd, ExpandedQuery, ExpansionConfig, Method, PrdStats, PseudoRelevantDocs,
    QueryView,
};

/// Dirichlet-smoothed document language model.
fn p_term_doc(tf: u32, doc_len: u64, p_collection: f64, mu: f64) -> f64 {
    (tf as f64 + mu * p_collection) / (doc_len as f64 + mu)
}

fn collection_prob(index: &InvertedIndex, term: &str) -> f64 {
    if index.total_tokens() == 0 {
        return 0.0;
    }
    index.cf(term) as f64 / index.total_tokens() as f64
}

/// tf of `term_id` in the PRD document at rank position `pos`.
fn tf_at(stats: &PrdStats, term_id: u32, pos: usize) -> u32 {
    match stats.terms.binary_search_by_key(&term_id, |&(id, _)| id) {
        Ok(row) => stats.terms[row]
            .1
            .iter()
            .find(|&&(p, _)| p == pos)
            .map_or(0, |&(_, tf)| tf),
        Err(_) => 0,
    }
}

/// Per-document query likelihoods `p(Q|d)` in PRD rank order.
fn query_likelihoods(
    index: &InvertedIndex,
    prd: &PseudoRelevantDocs,
    stats: &PrdStats,
    term_tfs: &[(String, u32)],
    mu: f64,
) -> Vec<f64> {
    prd.docs
        .iter()
        .enumerate()
        .map(|(pos, &(doc, _))| {
            let doc_len = index.doc_len(doc);
            let mut p = 1.0;
            for (term, qtf) in term_tfs {
                let p_c = collection_prob(index, term);
                let tf = index
                    .term_id(term)
                    .map_or(0, |id| tf_at(stats, id, pos));
                p *= p_term_doc(tf, doc_len, p_c, mu).powi(*qtf as i32);
            }
            p
        })
        .collect()
}

/// RM1 relevance-model probabilities for every PRD term, in term-id
/// order. The values are a proper distribution over the full collection
/// vocabulary; terms outside the PRD carry only smoothing mass and are
/// not listed.
pub(crate) fn relevance_model(
    index: &InvertedIndex,
    prd: &PseudoRelevantDocs,
    stats: &PrdStats,
    term_tfs: &[(String, u32)],
    mu: f64,
) -> Vec<(String, f64)> {
    let likelihoods = query_likelihoods(index, prd, stats, term_tfs, mu);
    let norm: f64 = likelihoods.iter().sum();
    if norm == 0.0 {
        return Vec::new();
    }
    let doc_lens: Vec<u64> = prd.docs.iter().map(|&(d, _)| index.doc_len(d)).collect();
    stats
        .terms
        .iter()
        .map(|(term_id, occurrences)| {
            let term = index.term_text(*term_id);
            let p_c = index.cf_id(*term_id) as f64 / index.total_tokens() as f64;
            // every PRD document contributes, with or without the term
            let mut mass = 0.0;
            let mut occ_iter = occurrences.iter().peekable();
            for (pos, (&len, &likelihood)) in doc_lens.iter().zip(&likelihoods).enumerate() {
                let tf = match occ_iter.peek() {
                    Some(&&(p, tf)) if p == pos => {
                        occ_iter.next();
                        tf
                    }
                    _ => 0,
                };
                mass += p_term_doc(tf, len, p_c, mu) * likelihood;
            }
            (term.to_owned(), mass / norm)
        })
        .collect()
}

/// RM3 expansion. The expanded query's weights are the interpolated
/// probabilities normalized by their maximum.
pub fn rm3_expand(
    index: &InvertedIndex,
    topic: &crate::corpus::Topic,
    analyzer: &Analyzer,
    cfg: &ExpansionConfig,
) -> ExpandedQuery {
    let qv = QueryView::from_topic(topic, analyzer);
    let prd = retrieve_prd(index, &qv.initial_query(), cfg.d);
    if prd.is_empty() {
        return qv.passthrough(Method::Rm3);
    }
    let stats = prd_stats(index, &prd);
    let mut rm1 = relevance_model(index, &prd, &stats, &qv.term_tfs, cfg.mu);
    if rm1.is_empty() {
        return qv.passthrough(Method::Rm3);
    }
    // top-T RM1 terms, probability descending with lexicographic ties
    rm1.sort_unstable_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let rm1_map: BTreeMap<&str, f64> = rm1.iter().map(|(t, p)| (t.as_str(), *p)).collect();
    let top: Vec<&str> = rm1.iter().take(cfg.t).map(|(t, _)| t.as_str()).collect();

    let query_len: u32 = qv.term_tfs.iter().map(|&(_, tf)| tf).sum();
    let mut interpolated: BTreeMap<String, f64> = BTreeMap::new();
    for term in top {
        let p_r = rm1_map[term];
        interpolated.insert(term.to_owned(), (1.0 - cfg.lambda) * p_r);
    }
    for (term, qtf) in &qv.term_tfs {
        let p_mle = *qtf as f64 / query_len as f64;
        let p_r = rm1_map.get(term.as_str()).copied().unwrap_or(0.0);
        interpolated.insert(
            term.clone(),
            cfg.lambda * p_mle + (1.0 - cfg.lambda) * p_r,
        );
    }

    let max_p = interpolated.values().fold(0.0f64, |a, &b| a.max(b));
    if max_p <= 0.0 {
        return qv.passthrough(Method::Rm3);
    }
    let mut terms: Vec<(String, f64)> = interpolated
        .into_iter()
        .filter(|&(_, p)| p > 0.0)
        .map(|(t, p)| (t, p / max_p))
        .collect();
    terms.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ExpandedQuery {
        topic: qv.topic,
        method: Method::Rm3,
        terms,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Document, Topic};
    use crate::index::build_index;
    use crate::textproc::parse_stopwords;

    fn doc(docno: &str, text: &str) -> Document {
        Document {
            docno: docno.into(),
            text: text.into(),
        }
    }

    fn plain() -> Analyzer {
        Analyzer::new(parse_stopwords(""), true)
    }

    #[test]
    fn two_doc_three_term_hand_computation() {
        // collection: d1 = [x x y], d2 = [x z], d3 = [w w]
        let docs = vec![doc("d1", "x x y"), doc("d2", "x z"), doc("d3", "w w")];
        let index = build_index(&docs, &plain()).unwrap();
        let topic = Topic {
            id: 1,
            title: "x".into(),
        };
        let qv = QueryView::from_topic(&topic, &plain());
        let mu = 10.0;
        let prd = retrieve_prd(&index, &qv.initial_query(), 2);
        assert_eq!(prd.len(), 2);
        let stats = prd_stats(&index, &prd);
        let rm1 = relevance_model(&index, &prd, &stats, &qv.term_tfs, mu);

        // by hand: p_C(x) = 3/7, p_C(y) = 1/7, p_C(z) = 1/7
        // p(x|d1) = (2 + 10*3/7)/13, p(x|d2) = (1 + 10*3/7)/12
        let px_d1: f64 = (2.0 + 10.0 * 3.0 / 7.0) / 13.0;
        let px_d2: f64 = (1.0 + 10.0 * 3.0 / 7.0) / 12.0;
        let norm = px_d1 + px_d2;
        let expect = |num_d1: f64, num_d2: f64| (num_d1 * px_d1 + num_d2 * px_d2) / norm;
        let exp_x = expect(px_d1, px_d2);
        let exp_y = expect((1.0 + 10.0 / 7.0) / 13.0, (10.0 / 7.0) / 12.0);
        let exp_z = expect((10.0 / 7.0) / 13.0, (1.0 + 10.0 / 7.0) / 12.0);

        let got: BTreeMap<&str, f64> = rm1.iter().map(|(t, p)| (t.as_str(), *p)).collect();
        assert!((got["x"] - exp_x).abs() < 1e-12);
        assert!((got["y"] - exp_y).abs() < 1e-12);
        assert!((got["z"] - exp_z).abs() < 1e-12);
        assert!(!got.contains_key("w"));
    }

    #[test]
    fn rm1_sums_to_one_over_full_vocabulary() {
        let docs = vec![
            doc("d1", "alpha beta beta gamma"),
            doc("d2", "alpha delta epsilon"),
            doc("d3", "zeta eta theta"),
        ];
        let index = build_index(&docs, &plain()).unwrap();
        let topic = Topic {
            id: 1,
            title: "alpha beta".into(),
        };
        let qv = QueryView::from_topic(&topic, &plain());
        let mu = 25.0;
        let prd = retrieve_prd(&index, &qv.initial_query(), 2);
        let stats = prd_stats(&index, &prd);
        let rm1 = relevance_model(&index, &prd, &stats, &qv.term_tfs, mu);
        let prd_mass: f64 = rm1.iter().map(|&(_, p)| p).sum();

        // independently add the smoothing-only mass of the vocabulary
        // terms that never occur in the PRD
        let likelihoods = query_likelihoods(&index, &prd, &stats, &qv.term_tfs, mu);
        let norm: f64 = likelihoods.iter().sum();
        let prd_terms: std::collections::HashSet<&str> =
            rm1.iter().map(|(t, _)| t.as_str()).collect();
        let mut outside_mass = 0.0;
        for term in index.terms_iter() {
            if prd_terms.contains(term) {
                continue;
            }
            let p_c = index.cf(term) as f64 / index.total_tokens() as f64;
            for (&(d, _), &l) in prd.docs.iter().zip(&likelihoods) {
                outside_mass += p_term_doc(0, index.doc_len(d), p_c, mu) * l / norm;
            }
        }
        assert!(
            (prd_mass + outside_mass - 1.0).abs() < 1e-10,
            "total mass {}",
            prd_mass + outside_mass
        );
    }

    #[test]
    fn lambda_one_reduces_to_query_model() {
        let docs = vec![
            doc("d1", "alpha beta gamma"),
            doc("d2", "alpha delta"),
            doc("d3", "noise words"),
        ];
        let index = build_index(&docs, &plain()).unwrap();
        let topic = Topic {
            id: 7,
            title: "alpha beta".into(),
        };
        let mut cfg = ExpansionConfig::rm3();
        cfg.d = 2;
        cfg.lambda = 1.0;
        let eq = rm3_expand(&index, &topic, &plain(), &cfg);
        // only the original terms survive, both at MLE weight 1/2 -> normalized 1.0
        assert_eq!(eq.terms.len(), 2);
        for (term, w) in &eq.terms {
            assert!(["alpha", "beta"].contains(&term.as_str()));
            assert!((w - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_prd_passthrough() {
        let docs = vec![doc("d1", "alpha")];
        let index = build_index(&docs, &plain()).unwrap();
        let topic = Topic {
            id: 3,
            title: "missing".into(),
        };
        let eq = rm3_expand(&index, &topic, &plain(), &ExpansionConfig::rm3());
        assert_eq!(eq.terms, vec![("miss".to_string(), 1.0)]);
    }
}
