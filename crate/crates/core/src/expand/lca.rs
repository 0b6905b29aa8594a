//! Local context analysis: belief that a candidate belongs with the
//! query, from its co-occurrence with every query term inside the PRD.
//!
//! `Bel(Q, t) = prod_i (delta + log10(co(t, q_i) * idf_t) / log10(D'))^idf_qi`
//! with `co(t, q_i) = sum over PRD docs of tf(t, d) * tf(q_i, d)`,
//! `idf_x = min(1, log10(N / N_x) / 5)`, `delta = 0.1`, and `D'` the PRD
//! size. A candidate that never co-occurs with `q_i` contributes the
//! floor factor `delta^idf_qi`.

use crate::index::InvertedIndex;

use super::{prd_stats, PrdStats, PseudoRelevantDocs};

const DELTA: f64 = 0.1;

/// Capped idf used both as the exponent (query terms) and inside the
/// log (candidates). Unseen terms take the cap.
fn lca_idf(n_docs: u64, df: u32) -> f64 {
    if df == 0 {
        return 1.0;
    }
    ((n_docs as f64 / df as f64).log10() / 5.0).min(1.0)
}

/// Dot product of two PRD occurrence rows (position-aligned tf values).
fn cooccurrence(a: &[(usize, u32)], b: &[(usize, u32)]) -> u64 {
    let mut co = 0u64;
    let mut i = 0;
    let mut j = 0;
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                co += a[i].1 as u64 * b[j].1 as u64;
                i += 1;
                j += 1;
            }
        }
    }
    co
}

fn row<'a>(stats: &'a PrdStats, term_id: u32) -> &'a [(usize, u32)] {
    match stats.terms.binary_search_by_key(&term_id, |&(id, _)| id) {
        Ok(pos) => &stats.terms[pos].1,
        Err(_) => &[],
    }
}

pub(crate) struct LcaContext {
    /// (query term occurrences in the PRD, idf exponent), one per query
    /// term that exists in the collection.
    query_rows: Vec<(Vec<(usize, u32)>, f64)>,
    /// log10 of the PRD size, floored to keep the normalization finite
    /// for single-document PRDs.
    log_d: f64,
    n_docs: u64,
}

impl LcaContext {
    pub(crate) fn new(index: &InvertedIndex, stats: &PrdStats, query_terms: &[String], prd_len: usize) -> Self {
        let query_rows = query_terms
            .iter()
            .map(|term| match index.term_id(term) {
                Some(id) => (
                    row(stats, id).to_vec(),
                    lca_idf(index.n_docs(), index.df_id(id)),
                ),
                None => (Vec::new(), 1.0),
            })
            .collect();
        LcaContext {
            query_rows,
            log_d: (prd_len.max(2) as f64).log10(),
            n_docs: index.n_docs(),
        }
    }

    pub(crate) fn belief(&self, index: &InvertedIndex, stats: &PrdStats, candidate_id: u32) -> f64 {
        let cand_row = row(stats, candidate_id);
        let idf_t = lca_idf(self.n_docs, index.df_id(candidate_id));
        let mut bel = 1.0;
        for (q_row, idf_q) in &self.query_rows {
            let co = cooccurrence(cand_row, q_row);
            let base = if co > 0 {
                // the log term is floored at zero so a tiny co * idf_t
                // product can never drag the factor below the delta floor
                DELTA + ((co as f64) * idf_t).log10().max(0.0) / self.log_d
            } else {
                DELTA
            };
            bel *= base.powf(*idf_q);
        }
        bel
    }
}

/// Belief score of one candidate term given a query and its PRD.
pub fn lca_belief(
    index: &InvertedIndex,
    prd: &PseudoRelevantDocs,
    query_terms: &[String],
    candidate: &str,
) -> f64 {
    let stats = prd_stats(index, prd);
    let ctx = LcaContext::new(index, &stats, query_terms, prd.len());
    match index.term_id(candidate) {
        Some(id) => ctx.belief(index, &stats, id),
        None => {
            // a term outside the collection never co-occurs with anything
            let mut bel = 1.0;
            for (_, idf_q) in &ctx.query_rows {
                bel *= DELTA.powf(*idf_q);
            }
            bel
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Document;
    use crate::index::build_index;
    use crate::retrieval::WeightedQuery;
    use crate::textproc::{parse_stopwords, Analyzer};

    fn doc(docno: &str, text: &str) -> Document {
        Document {
            docno: docno.into(),
            text: text.into(),
        }
    }

    fn fixture() -> (crate::index::InvertedIndex, PseudoRelevantDocs) {
        // three quark docs plus 17 distinct filler docs, so the capped
        // idfs are large enough to exercise the log term
        let mut docs = vec![
            doc("d1", "quark quark gluon lattice"),
            doc("d2", "quark lattice lattice boson"),
            doc("d3", "quark quark quark quark gluon gluon lattice lattice"),
        ];
        for i in 0..17 {
            docs.push(doc(&format!("f{i:02}"), &format!("filler{i} padding{i} body{i}")));
        }
        let index = build_index(&docs, &Analyzer::new(parse_stopwords(""), true)).unwrap();
        let query = WeightedQuery::new(1, vec![("quark".into(), 1.0)]);
        let prd = super::super::retrieve_prd(&index, &query, 3);
        assert_eq!(prd.len(), 3);
        (index, prd)
    }

    #[test]
    fn no_cooccurrence_hits_delta_floor() {
        let (index, prd) = fixture();
        let query_terms = vec!["quark".to_string()];
        // filler terms never occur in the PRD documents, so co = 0
        let bel = lca_belief(&index, &prd, &query_terms, "filler3");
        let idf_q = ((index.n_docs() as f64 / index.df("quark") as f64).log10() / 5.0).min(1.0);
        assert!((bel - DELTA.powf(idf_q)).abs() < 1e-12);
    }

    #[test]
    fn more_cooccurrence_means_more_belief() {
        let (index, prd) = fixture();
        let query_terms = vec!["quark".to_string()];
        let bel_lattice = lca_belief(&index, &prd, &query_terms, "lattic");
        let bel_boson = lca_belief(&index, &prd, &query_terms, "boson");
        // lattice co-occurs with quark far more strongly than boson
        assert!(bel_lattice > bel_boson, "{bel_lattice} vs {bel_boson}");
        assert!(bel_boson > 0.0);
    }

    #[test]
    fn three_doc_worked_example() {
        let (index, prd) = fixture();
        let in_prd: std::collections::HashSet<&str> =
            prd.docs.iter().map(|&(d, _)| index.docno(d)).collect();
        assert_eq!(in_prd, ["d1", "d2", "d3"].into_iter().collect());
        let query_terms = vec!["quark".to_string()];
        // co(lattice, quark) = 1*2 + 2*1 + 2*4 = 12, independent of rank order
        let n = index.n_docs() as f64;
        let idf_lattice = ((n / index.df("lattic") as f64).log10() / 5.0).min(1.0);
        let idf_quark = ((n / index.df("quark") as f64).log10() / 5.0).min(1.0);
        let log_term = (12.0 * idf_lattice).log10();
        assert!(log_term > 0.0, "fixture must exercise the log path");
        let expected = (DELTA + log_term / 3.0f64.log10()).powf(idf_quark);
        let bel = lca_belief(&index, &prd, &query_terms, "lattic");
        assert!((bel - expected).abs() < 1e-12, "{bel} vs {expected}");
    }
}
