//! Relevance judgment (qrels) parsing: whitespace-separated
//! `topic iteration docno grade` lines.

use std::io::{BufRead, BufReader, Read};

use super::{CorpusError, QrelSet};

pub fn parse_qrels(stream: impl Read) -> Result<QrelSet, CorpusError> {
    let mut qrels = QrelSet::new();
    for (i, line) in BufReader::new(stream).lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(CorpusError::Qrels {
                line: lineno,
                reason: format!("expected 4 fields, found {}", fields.len()),
            });
        }
        let topic: u32 = fields[0].parse().map_err(|_| CorpusError::Qrels {
            line: lineno,
            reason: format!("non-integer topic {:?}", fields[0]),
        })?;
        let grade: u32 = fields[3].parse().map_err(|_| CorpusError::Qrels {
            line: lineno,
            reason: format!("invalid relevance grade {:?}", fields[3]),
        })?;
        qrels.insert(topic, fields[2].to_owned(), grade);
    }
    Ok(qrels)
}
