//! On-disk index format.
//!
//! Single little-endian binary file:
//!
//! ```text
//! magic     8 bytes   "QELABIDX"
//! version   u32       FORMAT_VERSION
//! n_docs    u64
//! tokens    u64       total token count
//! docs      n_docs *  { docno: u32 len + bytes, doc_len: u64 }
//! n_terms   u64
//! terms     n_terms * { term: u32 len + bytes,
//!                       surface: u32 len + bytes,
//!                       cf: u64,
//!                       n_postings: u64,
//!                       postings: n_postings * { doc_delta: u32, tf: u32 } }
//! ```
//!
//! Postings store the ordinal as a delta from the previous entry (the
//! first entry stores the ordinal itself). Strings are UTF-8.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::sync::OnceLock;

use super::{DocEntry, IndexError, InvertedIndex, TermEntry};

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &[u8; 8] = b"QELABIDX";

fn write_str(w: &mut impl Write, s: &str) -> io::Result<()> {
    w.write_all(&(s.len() as u32).to_le_bytes())?;
    w.write_all(s.as_bytes())
}

fn read_exact_or_truncated(r: &mut impl Read, buf: &mut [u8]) -> Result<(), IndexError> {
    r.read_exact(buf).map_err(|e| {
        if e.kind() == io::ErrorKind::UnexpectedEof {
            IndexError::Truncated
        } else {
            IndexError::Io(e)
        }
    })
}

fn read_u32(r: &mut impl Read) -> Result<u32, IndexError> {
    let mut buf = [0u8; 4];
    read_exact_or_truncated(r, &mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn read_u64(r: &mut impl Read) -> Result<u64, IndexError> {
    let mut buf = [0u8; 8];
    read_exact_or_truncated(r, &mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

fn read_str(r: &mut impl Read, what: &str) -> Result<String, IndexError> {
    let len = read_u32(r)? as usize;
    let mut buf = vec![0u8; len];
    read_exact_or_truncated(r, &mut buf)?;
    String::from_utf8(buf).map_err(|_| IndexError::Corrupt(format!("{what} is not UTF-8")))
}

impl InvertedIndex {
    pub fn save(&self, path: &Path) -> Result<(), IndexError> {
        let mut w = BufWriter::new(File::create(path)?);
        w.write_all(MAGIC)?;
        w.write_all(&FORMAT_VERSION.to_le_bytes())?;
        w.write_all(&(self.docs.len() as u64).to_le_bytes())?;
        w.write_all(&self.total_tokens.to_le_bytes())?;
        for doc in &self.docs {
            write_str(&mut w, &doc.docno)?;
            w.write_all(&doc.len.to_le_bytes())?;
        }
        w.write_all(&(self.terms.len() as u64).to_le_bytes())?;
        for term in &self.terms {
            write_str(&mut w, &term.text)?;
            write_str(&mut w, &term.surface)?;
            w.write_all(&term.cf.to_le_bytes())?;
            w.write_all(&(term.postings.len() as u64).to_le_bytes())?;
            let mut prev = 0u32;
            for &(doc, tf) in &term.postings {
                w.write_all(&(doc - prev).to_le_bytes())?;
                w.write_all(&tf.to_le_bytes())?;
                prev = doc;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<InvertedIndex, IndexError> {
        let mut r = BufReader::new(File::open(path)?);
        let mut magic = [0u8; 8];
        read_exact_or_truncated(&mut r, &mut magic)?;
        if &magic != MAGIC {
            return Err(IndexError::BadMagic);
        }
        let version = read_u32(&mut r)?;
        if version != FORMAT_VERSION {
            return Err(IndexError::VersionMismatch {
                found: version,
                expected: FORMAT_VERSION,
            });
        }
        let n_docs = read_u64(&mut r)?;
        let total_tokens = read_u64(&mut r)?;
        let mut docs = Vec::with_capacity(n_docs as usize);
        for _ in 0..n_docs {
            let docno = read_str(&mut r, "docno")?;
            let len = read_u64(&mut r)?;
            docs.push(DocEntry { docno, len });
        }
        let n_terms = read_u64(&mut r)?;
        let mut terms = Vec::with_capacity(n_terms as usize);
        let mut term_ids = HashMap::with_capacity(n_terms as usize);
        for id in 0..n_terms {
            let text = read_str(&mut r, "term")?;
            let surface = read_str(&mut r, "surface form")?;
            let cf = read_u64(&mut r)?;
            let n_postings = read_u64(&mut r)?;
            let mut postings = Vec::with_capacity(n_postings as usize);
            let mut ord = 0u32;
            for i in 0..n_postings {
                let delta = read_u32(&mut r)?;
                let tf = read_u32(&mut r)?;
                ord = if i == 0 { delta } else { ord + delta };
                if u64::from(ord) >= n_docs {
                    return Err(IndexError::Corrupt(format!(
                        "posting for term {text:?} references ordinal {ord} >= {n_docs}"
                    )));
                }
                postings.push((ord, tf));
            }
            term_ids.insert(text.clone(), id as u32);
            terms.push(TermEntry {
                text,
                surface,
                cf,
                postings,
            });
        }
        // trailing bytes mean the file was not written by save()
        let mut probe = [0u8; 1];
        if r.read(&mut probe)? != 0 {
            return Err(IndexError::Corrupt("trailing bytes after index data".into()));
        }
        Ok(InvertedIndex {
            terms,
            term_ids,
            docs,
            total_tokens,
            forward: OnceLock::new(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::build_index;
    use super::*;
    use crate::corpus::Document;
    use crate::textproc::{parse_stopwords, Analyzer};

    fn sample_index() -> InvertedIndex {
        let docs = vec![
            Document {
                docno: "d1".into(),
                text: "alpha beta alpha gamma".into(),
            },
            Document {
                docno: "d2".into(),
                text: "beta delta".into(),
            },
            Document {
                docno: "d3".into(),
                text: "gamma gamma gamma".into(),
            },
        ];
        build_index(&docs, &Analyzer::new(parse_stopwords(""), true)).unwrap()
    }

    #[test]
    fn round_trip_preserves_accessors() {
        let idx = sample_index();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("test.idx");
        idx.save(&path).unwrap();
        let loaded = InvertedIndex::load(&path).unwrap();

        assert_eq!(loaded.n_docs(), idx.n_docs());
        assert_eq!(loaded.total_tokens(), idx.total_tokens());
        for term in idx.terms_iter() {
            assert_eq!(loaded.df(term), idx.df(term));
            assert_eq!(loaded.cf(term), idx.cf(term));
            assert_eq!(loaded.postings(term), idx.postings(term));
            assert_eq!(loaded.surface_form(term), idx.surface_form(term));
        }
        for ord in 0..idx.n_docs() as u32 {
            assert_eq!(loaded.docno(ord), idx.docno(ord));
            assert_eq!(loaded.doc_len(ord), idx.doc_len(ord));
        }
    }

    #[test]
    fn truncated_file_is_error() {
        let idx = sample_index();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("test.idx");
        idx.save(&path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        std::fs::write(&path, &bytes[..bytes.len() / 2]).unwrap();
        assert!(matches!(
            InvertedIndex::load(&path),
            Err(IndexError::Truncated)
        ));
    }

    #[test]
    fn version_mismatch_names_expected() {
        let idx = sample_index();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("test.idx");
        idx.save(&path).unwrap();
        let mut bytes = std::fs::read(&path).unwrap();
        bytes[8] = 99;
        std::fs::write(&path, &bytes).unwrap();
        match InvertedIndex::load(&path) {
            Err(IndexError::VersionMismatch { found, expected }) => {
                assert_eq!(found, 99);
                assert_eq!(expected, FORMAT_VERSION);
                let msg = IndexError::VersionMismatch { found, expected }.to_string();
                assert!(msg.contains(&FORMAT_VERSION.to_string()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_magic_is_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("junk.idx");
        std::fs::write(&path, b"NOTANIDXNOPE").unwrap();
        assert!(matches!(
            InvertedIndex::load(&path),
            Err(IndexError::BadMagic)
        ));
    }

    #[test]
    fn empty_index_round_trips() {
        let idx = build_index(&[], &Analyzer::new(parse_stopwords(""), true)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.idx");
        idx.save(&path).unwrap();
        let loaded = InvertedIndex::load(&path).unwrap();
        assert_eq!(loaded.n_docs(), 0);
        assert_eq!(loaded.vocab_size(), 0);
    }
}
