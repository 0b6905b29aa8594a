//! WordNet 3.x database file parsing.
//!
//! For each part of speech, `data.{pos}` maps a synset offset to its
//! gloss (the text after the `|` separator, example sentences included),
//! and `index.{pos}` maps a lemma to the offsets of the synsets it
//! belongs to. Header lines (leading whitespace) are skipped.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use super::{GlossLexicon, LexiconError};

const PARTS_OF_SPEECH: [&str; 4] = ["noun", "verb", "adj", "adv"];

pub fn load(dir: &Path) -> Result<GlossLexicon, LexiconError> {
    let mut lexicon = GlossLexicon::new();
    for pos in PARTS_OF_SPEECH {
        let glosses = load_data(&dir.join(format!("data.{pos}")))?;
        load_index(&dir.join(format!("index.{pos}")), &glosses, &mut lexicon)?;
    }
    Ok(lexicon)
}

fn read_file(path: &Path) -> Result<String, LexiconError> {
    fs::read_to_string(path).map_err(|source| LexiconError::Io {
        file: path.display().to_string(),
        source,
    })
}

fn is_header(line: &str) -> bool {
    line.is_empty() || line.starts_with(' ') || line.starts_with('\t')
}

/// Parse `data.{pos}`: synset offset -> gloss.
fn load_data(path: &Path) -> Result<HashMap<u64, String>, LexiconError> {
    let file = path.display().to_string();
    let content = read_file(path)?;
    let mut glosses = HashMap::new();
    for (i, line) in content.lines().enumerate() {
        if is_header(line) {
            continue;
        }
        let lineno = i + 1;
        let offset_field = line.split_whitespace().next().unwrap_or("");
        let offset: u64 = offset_field.parse().map_err(|_| LexiconError::Parse {
            file: file.clone(),
            line: lineno,
            reason: format!("invalid synset offset {offset_field:?}"),
        })?;
        let gloss = line
            .split_once('|')
            .map(|(_, g)| g.trim())
            .ok_or_else(|| LexiconError::Parse {
                file: file.clone(),
                line: lineno,
                reason: "missing gloss separator '|'".into(),
            })?;
        glosses.insert(offset, gloss.to_owned());
    }
    Ok(glosses)
}

/// Parse `index.{pos}` and append each lemma's glosses to the lexicon.
///
/// Line layout: `lemma pos synset_cnt p_cnt [ptr_symbol...] sense_cnt
/// tagsense_cnt synset_offset [synset_offset...]`.
fn load_index(
    path: &Path,
    glosses: &HashMap<u64, String>,
    lexicon: &mut GlossLexicon,
) -> Result<(), LexiconError> {
    let file = path.display().to_string();
    let content = read_file(path)?;
    for (i, line) in content.lines().enumerate() {
        if is_header(line) {
            continue;
        }
        let lineno = i + 1;
        let parse_err = |reason: String| LexiconError::Parse {
            file: file.clone(),
            line: lineno,
            reason,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 6 {
            return Err(parse_err(format!("expected at least 6 fields, found {}", fields.len())));
        }
        let lemma = fields[0].to_lowercase();
        let synset_cnt: usize = fields[2]
            .parse()
            .map_err(|_| parse_err(format!("invalid synset_cnt {:?}", fields[2])))?;
        let p_cnt: usize = fields[3]
            .parse()
            .map_err(|_| parse_err(format!("invalid p_cnt {:?}", fields[3])))?;
        let offsets_start = 4 + p_cnt + 2; // skip ptr symbols, sense_cnt, tagsense_cnt
        if fields.len() != offsets_start + synset_cnt {
            return Err(parse_err(format!(
                "expected {} synset offsets, found {}",
                synset_cnt,
                fields.len().saturating_sub(offsets_start)
            )));
        }
        for offset_field in &fields[offsets_start..] {
            let offset: u64 = offset_field
                .parse()
                .map_err(|_| parse_err(format!("invalid synset offset {offset_field:?}")))?;
            let gloss = glosses.get(&offset).ok_or_else(|| {
                parse_err(format!("synset offset {offset} not present in data file"))
            })?;
            lexicon.add(lemma.clone(), gloss.clone());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_minimal_pos(dir: &Path, pos: &str, data: &str, index: &str) {
        fs::write(dir.join(format!("data.{pos}")), data).unwrap();
        fs::write(dir.join(format!("index.{pos}")), index).unwrap();
    }

    fn write_empty_pos(dir: &Path, pos: &str) {
        write_minimal_pos(dir, pos, "  1 header\n", "  1 header\n");
    }

    #[test]
    fn missing_file_names_the_file() {
        let dir = tempfile::tempdir().unwrap();
        match load(dir.path()) {
            Err(LexiconError::Io { file, .. }) => assert!(file.contains("data.noun")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dangling_offset_names_file_and_line() {
        let dir = tempfile::tempdir().unwrap();
        write_minimal_pos(
            dir.path(),
            "noun",
            "00000001 26 n 01 cat 0 000 | a feline\n",
            "  1 header\ncat n 1 0 1 0 00000099\n",
        );
        for pos in ["verb", "adj", "adv"] {
            write_empty_pos(dir.path(), pos);
        }
        match load(dir.path()) {
            Err(LexiconError::Parse { file, line, reason }) => {
                assert!(file.contains("index.noun"));
                assert_eq!(line, 2);
                assert!(reason.contains("99"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn multi_synset_lemma_collects_all_glosses() {
        let dir = tempfile::tempdir().unwrap();
        write_minimal_pos(
            dir.path(),
            "noun",
            "00000001 26 n 01 bank 0 000 | a financial institution\n\
             00000002 26 n 01 bank 1 000 | sloping land beside a river\n",
            "bank n 2 0 2 1 00000001 00000002\n",
        );
        for pos in ["verb", "adj", "adv"] {
            write_empty_pos(dir.path(), pos);
        }
        let lex = load(dir.path()).unwrap();
        assert_eq!(lex.glosses("bank").unwrap().len(), 2);
    }
}
