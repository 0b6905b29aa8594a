//! TREC run files: `topic Q0 docno rank score tag` lines, topics
//! ascending, ranks 1..k consecutive, scores non-increasing.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read};

use super::CorpusError;

#[derive(Debug, Clone, PartialEq)]
pub struct RunEntry {
    pub docno: String,
    pub score: f64,
}

/// A ranked result list per topic. Ranks are implicit: position `i` in a
/// topic's entry list is rank `i + 1`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunFile {
    topics: BTreeMap<u32, Vec<RunEntry>>,
}

impl RunFile {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add a topic's ranked list; scores must be non-increasing.
    pub fn insert_topic(
        &mut self,
        topic: u32,
        entries: Vec<RunEntry>,
    ) -> Result<(), CorpusError> {
        for pair in entries.windows(2) {
            if pair[1].score > pair[0].score {
                return Err(CorpusError::InvalidRun {
                    topic,
                    reason: format!(
                        "score inversion: {} before {}",
                        pair[0].score, pair[1].score
                    ),
                });
            }
        }
        self.topics.insert(topic, entries);
        Ok(())
    }

    pub fn topics(&self) -> impl Iterator<Item = u32> + '_ {
        self.topics.keys().copied()
    }

    pub fn entries(&self, topic: u32) -> Option<&[RunEntry]> {
        self.topics.get(&topic).map(Vec::as_slice)
    }

    pub fn is_empty(&self) -> bool {
        self.topics.is_empty()
    }

    /// Render the standard six-column format.
    pub fn to_trec_string(&self, tag: &str) -> String {
        let mut out = String::new();
        for (&topic, entries) in &self.topics {
            for (i, e) in entries.iter().enumerate() {
                writeln!(out, "{} Q0 {} {} {:.6} {}", topic, e.docno, i + 1, e.score, tag)
                    .expect("writing to string cannot fail");
            }
        }
        out
    }
}

/// Parse a six-column run file, validating rank continuity and score
/// ordering.
pub fn parse_run(stream: impl Read) -> Result<RunFile, CorpusError> {
    let mut per_topic: BTreeMap<u32, Vec<(u32, RunEntry)>> = BTreeMap::new();
    for (i, line) in BufReader::new(stream).lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 6 {
            return Err(CorpusError::Run {
                line: lineno,
                reason: format!("expected 6 fields, found {}", fields.len()),
            });
        }
        let topic: u32 = fields[0].parse().map_err(|_| CorpusError::Run {
            line: lineno,
            reason: format!("non-integer topic {:?}", fields[0]),
        })?;
        let rank: u32 = fields[3].parse().map_err(|_| CorpusError::Run {
            line: lineno,
            reason: format!("non-integer rank {:?}", fields[3]),
        })?;
        let score: f64 = fields[4].parse().map_err(|_| CorpusError::Run {
            line: lineno,
            reason: format!("invalid score {:?}", fields[4]),
        })?;
        per_topic.entry(topic).or_default().push((
            rank,
            RunEntry {
                docno: fields[2].to_owned(),
                score,
            },
        ));
    }

    let mut run = RunFile::new();
    for (topic, mut ranked) in per_topic {
        ranked.sort_by_key(|(rank, _)| *rank);
        for (i, (rank, _)) in ranked.iter().enumerate() {
            if *rank as usize != i + 1 {
                return Err(CorpusError::InvalidRun {
                    topic,
                    reason: format!("rank gap: expected {}, found {}", i + 1, rank),
                });
            }
        }
        run.insert_topic(topic, ranked.into_iter().map(|(_, e)| e).collect())?;
    }
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_entry_format() {
        let mut run = RunFile::new();
        run.insert_topic(
            604,
            vec![RunEntry {
                docno: "A1".into(),
                score: 2.5,
            }],
        )
        .unwrap();
        assert_eq!(run.to_trec_string("pwnet"), "604 Q0 A1 1 2.500000 pwnet\n");
    }

    #[test]
    fn empty_run_is_empty_stream() {
        assert_eq!(RunFile::new().to_trec_string("x"), "");
    }

    #[test]
    fn score_inversion_refused() {
        let mut run = RunFile::new();
        let err = run
            .insert_topic(
                1,
                vec![
                    RunEntry {
                        docno: "A".into(),
                        score: 1.0,
                    },
                    RunEntry {
                        docno: "B".into(),
                        score: 2.0,
                    },
                ],
            )
            .unwrap_err();
        assert!(matches!(err, CorpusError::InvalidRun { topic: 1, .. }));
    }

    #[test]
    fn rank_gap_refused() {
        let input = "1 Q0 A 1 2.000000 t\n1 Q0 B 3 1.000000 t\n";
        assert!(matches!(
            parse_run(input.as_bytes()),
            Err(CorpusError::InvalidRun { .. })
        ));
    }

    #[test]
    fn round_trip() {
        let mut run = RunFile::new();
        run.insert_topic(
            604,
            vec![
                RunEntry {
                    docno: "B".into(),
                    score: 2.5,
                },
                RunEntry {
                    docno: "A".into(),
                    score: 1.25,
                },
            ],
        )
        .unwrap();
        run.insert_topic(
            700,
            vec![RunEntry {
                docno: "C".into(),
                score: 0.5,
            }],
        )
        .unwrap();
        let text = run.to_trec_string("tag");
        let parsed = parse_run(text.as_bytes()).unwrap();
        assert_eq!(parsed, run);
    }
}
