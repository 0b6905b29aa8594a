//! Index statistics on the mini collection, checked against an
//! independent recount straight from the analyzed document text.

mod common;

use std::collections::{HashMap, HashSet};

use qelab_core::index::{build_index, InvertedIndex};

#[test]
fn stats_match_independent_recount() {
    let docs = common::load_documents();
    let analyzer = common::analyzer();
    let index = common::mini_index();

    // reference counts straight from the text
    let mut df: HashMap<String, u32> = HashMap::new();
    let mut cf: HashMap<String, u64> = HashMap::new();
    let mut total_tokens = 0u64;
    for doc in &docs {
        let terms = analyzer.analyze(&doc.text);
        total_tokens += terms.len() as u64;
        let mut seen = HashSet::new();
        for term in terms {
            *cf.entry(term.clone()).or_insert(0) += 1;
            if seen.insert(term.clone()) {
                *df.entry(term).or_insert(0) += 1;
            }
        }
    }

    assert_eq!(index.n_docs(), docs.len() as u64);
    assert_eq!(index.total_tokens(), total_tokens);
    assert_eq!(index.vocab_size(), cf.len());
    for (term, &expected_df) in &df {
        assert_eq!(index.df(term), expected_df, "df({term})");
        assert_eq!(index.cf(term), cf[term], "cf({term})");
    }
}

#[test]
fn invariants_hold_for_every_term() {
    let index = common::mini_index();
    let n = index.n_docs() as u32;
    let mut cf_sum = 0u64;
    for term in index.terms_iter() {
        let df = index.df(term);
        let cf = index.cf(term);
        assert!(df >= 1 && df <= n, "df({term}) = {df}");
        assert!(u64::from(df) <= cf, "df({term}) > cf");
        cf_sum += cf;
        let postings = index.postings(term);
        assert_eq!(postings.len() as u32, df);
    }
    assert_eq!(cf_sum, index.total_tokens());
}

#[test]
fn postings_sorted_and_spot_checked_against_grep() {
    let docs = common::load_documents();
    let analyzer = common::analyzer();
    let index = common::mini_index();

    for term in ["arthriti", "hive", "qubit", "glacier"] {
        // reference: scan every document
        let mut expected: Vec<(String, u32)> = Vec::new();
        for doc in &docs {
            let tf = analyzer
                .analyze(&doc.text)
                .into_iter()
                .filter(|t| t == term)
                .count() as u32;
            if tf > 0 {
                expected.push((doc.docno.clone(), tf));
            }
        }
        let got: Vec<(String, u32)> = index
            .postings(term)
            .into_iter()
            .map(|(d, tf)| (d.to_owned(), tf))
            .collect();
        assert_eq!(got, expected, "postings({term})");
        assert!(!got.is_empty(), "term {term} should occur in the mini corpus");
    }
    assert!(index.postings("zzznotaterm").is_empty());
}

#[test]
fn parallel_build_identical_to_serial() {
    let docs = common::load_documents();
    let analyzer = common::analyzer();

    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| build_index(&docs, &analyzer).unwrap());
    let parallel = rayon::ThreadPoolBuilder::new()
        .num_threads(8)
        .build()
        .unwrap()
        .install(|| build_index(&docs, &analyzer).unwrap());

    assert_indexes_identical(&serial, &parallel);
}

#[test]
fn save_load_round_trip_on_mini_corpus() {
    let index = common::mini_index();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mini.idx");
    index.save(&path).unwrap();
    let loaded = InvertedIndex::load(&path).unwrap();
    assert_indexes_identical(index, &loaded);
}

fn assert_indexes_identical(a: &InvertedIndex, b: &InvertedIndex) {
    assert_eq!(a.n_docs(), b.n_docs());
    assert_eq!(a.total_tokens(), b.total_tokens());
    assert_eq!(a.vocab_size(), b.vocab_size());
    for ord in 0..a.n_docs() as u32 {
        assert_eq!(a.docno(ord), b.docno(ord));
        assert_eq!(a.doc_len(ord), b.doc_len(ord));
    }
    for term in a.terms_iter() {
        assert_eq!(a.df(term), b.df(term), "df({term})");
        assert_eq!(a.cf(term), b.cf(term), "cf({term})");
        assert_eq!(a.postings(term), b.postings(term), "postings({term})");
        assert_eq!(a.surface_form(term), b.surface_form(term));
    }
}
