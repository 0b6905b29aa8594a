//! Gloss lexicon loading against the hand-built WordNet-format fixture
//! (ten synsets across the four parts of speech).

use std::collections::BTreeMap;
use std::path::PathBuf;

use qelab_core::wordnet::GlossLexicon;
use qelab_core::Analyzer;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/wn")
}

#[test]
fn fixture_loads_expected_lemma_gloss_map() {
    let lex = GlossLexicon::load_wordnet(&fixture_dir()).unwrap();

    let mut expected: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    expected.insert(
        "lyme_disease",
        vec!["an acute inflammatory disease characterized by a rash with joint swelling and fever; \"Lyme disease is transmitted by ticks\""],
    );
    expected.insert(
        "arthritis",
        vec!["inflammation of a joint or joints causing pain and swelling"],
    );
    expected.insert(
        "rheumatism",
        vec!["inflammation of a joint or joints causing pain and swelling"],
    );
    expected.insert("spondylitis", vec!["inflammation of a spinal joint"]);
    expected.insert(
        "inflammation",
        vec!["a response of body tissues to injury or irritation"],
    );
    expected.insert(
        "joint",
        vec![
            "the point of connection between two bones",
            "junction by which parts or objects are joined together",
        ],
    );
    expected.insert(
        "inflame",
        vec!["cause inflammation or swelling in a joint or tissue"],
    );
    expected.insert("arthritic", vec!["affected by inflammation of the joints"]);
    expected.insert("septic", vec!["infected by harmful bacteria"]);
    expected.insert("painfully", vec!["in a painful manner; with swelling and pain"]);

    assert_eq!(lex.len(), expected.len());
    for (lemma, glosses) in expected {
        assert_eq!(
            lex.glosses(lemma).unwrap_or_else(|| panic!("missing lemma {lemma}")),
            glosses,
            "glosses for {lemma}"
        );
    }
}

#[test]
fn lyme_disease_gloss_mentions_inflammation_and_joints() {
    let lex = GlossLexicon::load_wordnet(&fixture_dir()).unwrap();
    let analyzer = Analyzer::default();
    let words = lex.gloss_set("lyme_disease", &analyzer);
    // shares "inflammatory/inflammation" vocabulary with arthritis via
    // the analyzed gloss overlap
    assert!(words.contains("joint"), "gloss words: {words:?}");
    assert!(words.iter().any(|w| w.starts_with("inflammatori") || w.starts_with("inflamm")));

    let arthritis = lex.gloss_set("arthritis", &analyzer);
    assert!(arthritis.contains("joint"));
    assert!(arthritis.contains("inflamm"));
}

#[test]
fn unknown_lemma_is_absent() {
    let lex = GlossLexicon::load_wordnet(&fixture_dir()).unwrap();
    assert!(!lex.contains("zebra"));
    assert!(lex.glosses("zebra").is_none());
    assert!(lex.gloss_set("zebra", &Analyzer::default()).is_empty());
}

#[test]
fn multi_synset_lemma_unions_glosses() {
    let lex = GlossLexicon::load_wordnet(&fixture_dir()).unwrap();
    let words = lex.gloss_set("joint", &Analyzer::default());
    // vocabulary from both synsets
    assert!(words.contains("bone"));
    assert!(words.contains("junction"));
}
