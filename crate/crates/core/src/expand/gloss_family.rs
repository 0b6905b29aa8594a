//! The gloss-overlap expansion family: pwnet, nownet (no gloss factor),
//! and fnpw (gloss factor only).

use crate::index::InvertedIndex;
use crate::textproc::Analyzer;
use crate::wordnet::{detect_units, rel, GlossLexicon, GlossSet, QueryUnit, RelMode};

use super::{
    assemble, prd_stats, retrieve_prd, robertson_idf, select_top, ExpandedQuery, ExpansionConfig,
    Method, PrdStats, PseudoRelevantDocs, QueryView, Selection,
};

/// A candidate with its per-unit scores and the final squashed sum.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredCandidate {
    pub term: String,
    /// s(t, q_i) for each query unit.
    pub s_per_unit: Vec<f64>,
    /// S(t) = sum of s / (1 + s).
    pub score: f64,
    pub method: Method,
}

/// Which factors of the candidate score are active.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Weighting {
    /// rel x idf x docsim, squashed per unit.
    Full,
    /// idf x docsim only; the per-unit score no longer depends on the
    /// unit, so S = |units| * s / (1 + s).
    NoGloss,
    /// gloss overlap only, summed without squashing.
    GlossOnly,
}

impl Weighting {
    fn method(self) -> Method {
        match self {
            Weighting::Full => Method::Pwnet,
            Weighting::NoGloss => Method::Nownet,
            Weighting::GlossOnly => Method::Fnpw,
        }
    }
}

/// Query units for the gloss methods; without a lexicon every word is
/// its own unit.
fn units_for(qv: &QueryView, lexicon: Option<&GlossLexicon>) -> Vec<QueryUnit> {
    match lexicon {
        Some(lex) => detect_units(&qv.surface_words, lex),
        None => qv
            .surface_words
            .iter()
            .map(|w| QueryUnit::Word(w.clone()))
            .collect(),
    }
}

/// Normalized similarity mass of the PRD documents containing the
/// candidate: sum of Sim(d, Q) / max Sim over those documents.
fn doc_sim_factor(prd: &PseudoRelevantDocs, occurrences: &[(usize, u32)]) -> f64 {
    let max_sim = prd.max_sim().expect("PRD checked non-empty");
    occurrences
        .iter()
        .map(|&(pos, _)| prd.docs[pos].1 / max_sim)
        .sum()
}

/// s(t, q_i) values for one candidate against every unit gloss set.
fn s_values(
    unit_sets: &[GlossSet],
    candidate_set: &GlossSet,
    idf: f64,
    docsim: f64,
    mode: RelMode,
) -> Vec<f64> {
    unit_sets
        .iter()
        .map(|unit_set| rel(candidate_set, unit_set, mode) * idf * docsim)
        .collect()
}

fn squash_sum(s_per_unit: &[f64]) -> f64 {
    s_per_unit.iter().map(|s| s / (1.0 + s)).sum()
}

/// Score one candidate term the pwnet way. The term must occur in the
/// PRD documents.
pub fn pwnet_score(
    index: &InvertedIndex,
    lexicon: &GlossLexicon,
    analyzer: &Analyzer,
    mode: RelMode,
    units: &[QueryUnit],
    prd: &PseudoRelevantDocs,
    term: &str,
) -> ScoredCandidate {
    let stats = prd_stats(index, prd);
    let term_id = index.term_id(term).expect("candidate must be indexed");
    let row = stats
        .terms
        .iter()
        .find(|&&(id, _)| id == term_id)
        .map(|(_, occ)| occ.as_slice())
        .expect("candidate terms are drawn from the PRD documents");
    let unit_sets: Vec<GlossSet> = units
        .iter()
        .map(|u| lexicon.gloss_set(&u.lemma(), analyzer))
        .collect();
    let candidate_set = candidate_gloss_set(index, lexicon, analyzer, term);
    let idf = robertson_idf(index.n_docs(), index.df(term) as u64);
    let docsim = doc_sim_factor(prd, row);
    let s_per_unit = s_values(&unit_sets, &candidate_set, idf, docsim, mode);
    let score = squash_sum(&s_per_unit);
    ScoredCandidate {
        term: term.to_owned(),
        s_per_unit,
        score,
        method: Method::Pwnet,
    }
}

/// Gloss vocabulary of a stemmed candidate, looked up through the
/// index's stem -> surface map. Absent lemmas give the empty set.
fn candidate_gloss_set(
    index: &InvertedIndex,
    lexicon: &GlossLexicon,
    analyzer: &Analyzer,
    term: &str,
) -> GlossSet {
    match index.surface_form(term) {
        Some(surface) => lexicon.gloss_set(surface, analyzer),
        None => GlossSet::new(),
    }
}

/// Score every PRD term and keep the top T.
fn gloss_family_select(
    index: &InvertedIndex,
    qv: &QueryView,
    lexicon: Option<&GlossLexicon>,
    analyzer: &Analyzer,
    prd: &PseudoRelevantDocs,
    stats: &PrdStats,
    cfg: &ExpansionConfig,
    weighting: Weighting,
) -> Option<Selection> {
    if prd.is_empty() {
        return None;
    }
    let units = units_for(qv, lexicon);
    if units.is_empty() {
        return None;
    }
    let unit_sets: Vec<GlossSet> = match weighting {
        Weighting::NoGloss => Vec::new(),
        _ => {
            let lex = lexicon.expect("gloss weighting requires a lexicon");
            units
                .iter()
                .map(|u| lex.gloss_set(&u.lemma(), analyzer))
                .collect()
        }
    };

    let n = index.n_docs();
    let mut scored = Vec::with_capacity(stats.terms.len());
    for (term_id, occurrences) in &stats.terms {
        let term = index.term_text(*term_id);
        let idf = robertson_idf(n, index.df_id(*term_id) as u64);
        let docsim = doc_sim_factor(prd, occurrences);
        let score = match weighting {
            Weighting::Full => {
                let candidate_set =
                    candidate_gloss_set(index, lexicon.expect("checked above"), analyzer, term);
                squash_sum(&s_values(&unit_sets, &candidate_set, idf, docsim, cfg.mode))
            }
            Weighting::NoGloss => {
                let s = idf * docsim;
                units.len() as f64 * (s / (1.0 + s))
            }
            Weighting::GlossOnly => {
                let candidate_set =
                    candidate_gloss_set(index, lexicon.expect("checked above"), analyzer, term);
                unit_sets
                    .iter()
                    .map(|unit_set| rel(&candidate_set, unit_set, cfg.mode))
                    .sum()
            }
        };
        scored.push((term.to_owned(), score));
    }
    select_top(scored, cfg.t)
}

/// pwnet candidate selection on a fresh PRD retrieval; used directly by
/// the klwnet combination.
pub(crate) fn pwnet_select(
    index: &InvertedIndex,
    qv: &QueryView,
    lexicon: &GlossLexicon,
    analyzer: &Analyzer,
    cfg: &ExpansionConfig,
) -> Option<Selection> {
    let prd = retrieve_prd(index, &qv.initial_query(), cfg.d);
    if prd.is_empty() {
        return None;
    }
    let stats = prd_stats(index, &prd);
    gloss_family_select(
        index,
        qv,
        Some(lexicon),
        analyzer,
        &prd,
        &stats,
        cfg,
        Weighting::Full,
    )
}

fn expand_with(
    index: &InvertedIndex,
    topic: &crate::corpus::Topic,
    lexicon: Option<&GlossLexicon>,
    analyzer: &Analyzer,
    cfg: &ExpansionConfig,
    weighting: Weighting,
) -> ExpandedQuery {
    let qv = QueryView::from_topic(topic, analyzer);
    let prd = retrieve_prd(index, &qv.initial_query(), cfg.d);
    expand_from_prd(index, &qv, lexicon, analyzer, cfg, weighting, &prd)
}

fn expand_from_prd(
    index: &InvertedIndex,
    qv: &QueryView,
    lexicon: Option<&GlossLexicon>,
    analyzer: &Analyzer,
    cfg: &ExpansionConfig,
    weighting: Weighting,
    prd: &PseudoRelevantDocs,
) -> ExpandedQuery {
    let method = weighting.method();
    if prd.is_empty() {
        return qv.passthrough(method);
    }
    let stats = prd_stats(index, prd);
    match gloss_family_select(index, qv, lexicon, analyzer, prd, &stats, cfg, weighting) {
        Some(selection) => assemble(qv.topic, method, &qv.term_tfs, &selection, cfg.beta),
        None => qv.passthrough(method),
    }
}

/// pwnet expansion over a caller-supplied PRD set (the usual entry point
/// retrieves its own).
pub fn pwnet_expand_from_prd(
    index: &InvertedIndex,
    topic: &crate::corpus::Topic,
    lexicon: &GlossLexicon,
    analyzer: &Analyzer,
    cfg: &ExpansionConfig,
    prd: &PseudoRelevantDocs,
) -> ExpandedQuery {
    let qv = QueryView::from_topic(topic, analyzer);
    expand_from_prd(
        index,
        &qv,
        Some(lexicon),
        analyzer,
        cfg,
        Weighting::Full,
        prd,
    )
}

/// Gloss-overlap expansion: candidates from the PRD weighted by gloss
/// relatedness to the query units, collection rarity, and the retrieval
/// scores of the PRD documents containing them.
pub fn pwnet_expand(
    index: &InvertedIndex,
    topic: &crate::corpus::Topic,
    lexicon: &GlossLexicon,
    analyzer: &Analyzer,
    cfg: &ExpansionConfig,
) -> ExpandedQuery {
    expand_with(index, topic, Some(lexicon), analyzer, cfg, Weighting::Full)
}

/// pwnet without the gloss factor.
pub fn nownet_expand(
    index: &InvertedIndex,
    topic: &crate::corpus::Topic,
    analyzer: &Analyzer,
    cfg: &ExpansionConfig,
) -> ExpandedQuery {
    expand_with(index, topic, None, analyzer, cfg, Weighting::NoGloss)
}

/// Gloss overlap alone as the candidate score.
pub fn fnpw_expand(
    index: &InvertedIndex,
    topic: &crate::corpus::Topic,
    lexicon: &GlossLexicon,
    analyzer: &Analyzer,
    cfg: &ExpansionConfig,
) -> ExpandedQuery {
    expand_with(index, topic, Some(lexicon), analyzer, cfg, Weighting::GlossOnly)
}
