//! Gloss lexicon: lemma -> definition texts, loaded from WordNet 3.x
//! database files or a plain TSV fallback, plus the gloss-overlap
//! relatedness measure and query phrase detection.
//!
//! Multiword lemmas use underscores ("lyme_disease"). A lemma's gloss
//! vocabulary is the union of all its synset glosses, across all parts
//! of speech, with no sense selection.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::textproc::Analyzer;

mod wndb;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("i/o error reading {file}: {source}")]
    Io {
        file: String,
        #[source]
        source: io::Error,
    },
    #[error("{file}:{line}: {reason}")]
    Parse {
        file: String,
        line: usize,
        reason: String,
    },
}

/// How gloss overlap is turned into a relatedness score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RelMode {
    Jaccard,
    #[default]
    Dice,
}

impl RelMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            RelMode::Jaccard => "jaccard",
            RelMode::Dice => "dice",
        }
    }

    pub fn parse(s: &str) -> Option<RelMode> {
        match s {
            "jaccard" => Some(RelMode::Jaccard),
            "dice" => Some(RelMode::Dice),
            _ => None,
        }
    }
}

/// Analyzed gloss vocabulary of a lemma or query unit.
pub type GlossSet = HashSet<String>;

/// lemma (lowercase, underscores for multiword) -> glosses, one per
/// synset the lemma belongs to.
#[derive(Debug, Default, Clone)]
pub struct GlossLexicon {
    entries: HashMap<String, Vec<String>>,
}

impl GlossLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, lemma: String, gloss: String) {
        self.entries.entry(lemma).or_default().push(gloss);
    }

    pub fn contains(&self, lemma: &str) -> bool {
        self.entries.contains_key(lemma)
    }

    pub fn glosses(&self, lemma: &str) -> Option<&[String]> {
        self.entries.get(lemma).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Union of the lemma's analyzed glosses; empty when the lemma is
    /// absent.
    pub fn gloss_set(&self, lemma: &str, analyzer: &Analyzer) -> GlossSet {
        let mut words = GlossSet::new();
        if let Some(glosses) = self.entries.get(lemma) {
            for gloss in glosses {
                words.extend(analyzer.analyze(gloss));
            }
        }
        words
    }

    /// Load WordNet 3.x `index.*` / `data.*` files from a directory.
    pub fn load_wordnet(dir: &Path) -> Result<Self, LexiconError> {
        wndb::load(dir)
    }

    /// Load the TSV fallback format: `lemma<TAB>gloss`, one gloss per
    /// line, repeatable lemmas.
    pub fn load_tsv(path: &Path) -> Result<Self, LexiconError> {
        let file = path.display().to_string();
        let content = fs::read_to_string(path).map_err(|source| LexiconError::Io {
            file: file.clone(),
            source,
        })?;
        let mut lex = GlossLexicon::new();
        for (i, line) in content.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (lemma, gloss) = line.split_once('\t').ok_or_else(|| LexiconError::Parse {
                file: file.clone(),
                line: i + 1,
                reason: "missing tab separator".into(),
            })?;
            lex.add(lemma.trim().to_lowercase(), gloss.trim().to_owned());
        }
        Ok(lex)
    }
}

/// A query phrase (two consecutive words with a lexicon entry) or a
/// single query word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryUnit {
    Phrase(String, String),
    Word(String),
}

impl QueryUnit {
    /// The lexicon lookup key: words joined by `_` for phrases.
    pub fn lemma(&self) -> String {
        match self {
            QueryUnit::Phrase(a, b) => format!("{a}_{b}"),
            QueryUnit::Word(w) => w.clone(),
        }
    }

    pub fn surface(&self) -> String {
        match self {
            QueryUnit::Phrase(a, b) => format!("{a} {b}"),
            QueryUnit::Word(w) => w.clone(),
        }
    }
}

/// Greedy left-to-right unit detection over stopword-filtered surface
/// words: a pair of consecutive words with a lexicon entry becomes a
/// phrase unit and both words are consumed; otherwise the word stands
/// alone.
pub fn detect_units(query_words: &[String], lexicon: &GlossLexicon) -> Vec<QueryUnit> {
    let mut units = Vec::new();
    let mut i = 0;
    while i < query_words.len() {
        if i + 1 < query_words.len() {
            let joined = format!("{}_{}", query_words[i], query_words[i + 1]);
            if lexicon.contains(&joined) {
                units.push(QueryUnit::Phrase(
                    query_words[i].clone(),
                    query_words[i + 1].clone(),
                ));
                i += 2;
                continue;
            }
        }
        units.push(QueryUnit::Word(query_words[i].clone()));
        i += 1;
    }
    units
}

/// Gloss overlap between two analyzed vocabularies. Both modes return 0
/// when either set is empty.
pub fn rel(a: &GlossSet, b: &GlossSet, mode: RelMode) -> f64 {
    let ct = a.len() as f64;
    let cq = b.len() as f64;
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let ctq = small.iter().filter(|w| large.contains(*w)).count() as f64;
    match mode {
        RelMode::Jaccard => {
            let denom = ct + cq - ctq;
            if denom == 0.0 {
                0.0
            } else {
                ctq / denom
            }
        }
        RelMode::Dice => 2.0 * ctq / (ct + cq),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(words: &[&str]) -> GlossSet {
        words.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn rel_disjoint_sets_are_zero() {
        let a = set(&["x", "y"]);
        let b = set(&["p", "q"]);
        assert_eq!(rel(&a, &b, RelMode::Jaccard), 0.0);
        assert_eq!(rel(&a, &b, RelMode::Dice), 0.0);
    }

    #[test]
    fn rel_identical_sets_are_one() {
        let a = set(&["x", "y", "z"]);
        assert_eq!(rel(&a, &a, RelMode::Jaccard), 1.0);
        assert_eq!(rel(&a, &a, RelMode::Dice), 1.0);
    }

    #[test]
    fn rel_counting_case() {
        // |a| = 8, |b| = 12, |a ∩ b| = 4: jaccard 4/16, dice 8/20
        let a: GlossSet = (0..8).map(|i| format!("w{i}")).collect();
        let b: GlossSet = (0..4)
            .map(|i| format!("w{i}"))
            .chain((0..8).map(|i| format!("x{i}")))
            .collect();
        assert_eq!((a.len(), b.len()), (8, 12));
        assert!((rel(&a, &b, RelMode::Jaccard) - 0.25).abs() < 1e-15);
        assert!((rel(&a, &b, RelMode::Dice) - 0.40).abs() < 1e-15);
    }

    #[test]
    fn rel_is_symmetric() {
        let a = set(&["one", "two", "three"]);
        let b = set(&["two", "four"]);
        for mode in [RelMode::Jaccard, RelMode::Dice] {
            assert_eq!(rel(&a, &b, mode), rel(&b, &a, mode));
        }
    }

    #[test]
    fn rel_both_empty_is_zero() {
        let e = GlossSet::new();
        assert_eq!(rel(&e, &e, RelMode::Jaccard), 0.0);
        assert_eq!(rel(&e, &e, RelMode::Dice), 0.0);
    }

    #[test]
    fn tsv_lexicon_basics() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("gloss.tsv");
        std::fs::write(&path, "dog\ta domesticated canine\ndog\ta scoundrel\ncat\ta feline\n")
            .unwrap();
        let lex = GlossLexicon::load_tsv(&path).unwrap();
        assert_eq!(lex.glosses("dog").unwrap().len(), 2);
        assert_eq!(lex.glosses("cat").unwrap().len(), 1);
        assert!(!lex.contains("fish"));
    }

    #[test]
    fn tsv_missing_tab_reports_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.tsv");
        std::fs::write(&path, "dog\tfine\nbroken line\n").unwrap();
        match GlossLexicon::load_tsv(&path) {
            Err(LexiconError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tsv_empty_file_is_empty_lexicon() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.tsv");
        std::fs::write(&path, "").unwrap();
        assert!(GlossLexicon::load_tsv(&path).unwrap().is_empty());
    }

    #[test]
    fn gloss_set_analyzes_and_unions() {
        let mut lex = GlossLexicon::new();
        lex.add("dog".into(), "a domesticated canine".into());
        lex.add("dog".into(), "a treacherous person".into());
        let a = Analyzer::default();
        let words = lex.gloss_set("dog", &a);
        assert!(words.contains("domest"));
        assert!(words.contains("canin"));
        assert!(words.contains("person"));
        assert!(!words.contains("a"));
    }

    #[test]
    fn gloss_set_absent_lemma_is_empty() {
        let lex = GlossLexicon::new();
        assert!(lex.gloss_set("absent", &Analyzer::default()).is_empty());
    }

    #[test]
    fn detect_units_pairs_phrases_first() {
        let mut lex = GlossLexicon::new();
        lex.add("lyme_disease".into(), "an inflammatory disease".into());
        let words: Vec<String> = ["lyme", "disease", "arthritis"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let units = detect_units(&words, &lex);
        assert_eq!(
            units,
            vec![
                QueryUnit::Phrase("lyme".into(), "disease".into()),
                QueryUnit::Word("arthritis".into()),
            ]
        );
        assert_eq!(units[0].lemma(), "lyme_disease");
    }

    #[test]
    fn detect_units_single_word() {
        let lex = GlossLexicon::new();
        let words = vec!["alpha".to_string()];
        assert_eq!(detect_units(&words, &lex), vec![QueryUnit::Word("alpha".into())]);
    }

    #[test]
    fn detect_units_greedy_non_overlapping() {
        let mut lex = GlossLexicon::new();
        lex.add("a_b".into(), "first pair".into());
        lex.add("b_c".into(), "second pair".into());
        let words: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert_eq!(
            detect_units(&words, &lex),
            vec![
                QueryUnit::Phrase("a".into(), "b".into()),
                QueryUnit::Word("c".into()),
            ]
        );
    }
}
