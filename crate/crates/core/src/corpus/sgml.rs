//! TREC SGML document collection parsing.
//!
//! A collection file is a sequence of `<DOC>...</DOC>` blocks, each
//! containing a `<DOCNO>...</DOCNO>` element. Everything else inside the
//! block becomes document text with tags stripped and the three standard
//! entities (`&amp; &lt; &gt;`) decoded.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use flate2::read::GzDecoder;

use super::{CorpusError, Document};

/// Parse a whole collection stream.
pub fn parse_trec_docs(mut stream: impl Read) -> Result<Vec<Document>, CorpusError> {
    let mut raw = Vec::new();
    stream.read_to_end(&mut raw)?;
    let content = String::from_utf8_lossy(&raw);
    parse_str(&content)
}

/// Read a collection file from disk; `.gz` files are decompressed on the
/// fly.
pub fn read_trec_docs_file(path: &Path) -> Result<Vec<Document>, CorpusError> {
    let file = File::open(path)?;
    if path.extension().is_some_and(|e| e == "gz") {
        parse_trec_docs(GzDecoder::new(file))
    } else {
        parse_trec_docs(file)
    }
}

fn parse_str(content: &str) -> Result<Vec<Document>, CorpusError> {
    let mut docs = Vec::new();
    let mut pos = 0;
    while let Some(rel) = content[pos..].find("<DOC>") {
        let block_start = pos + rel;
        let body_start = block_start + "<DOC>".len();
        let body_len = content[body_start..].find("</DOC>").ok_or_else(|| {
            CorpusError::MalformedDoc {
                offset: block_start,
                reason: "unclosed <DOC> block".into(),
            }
        })?;
        let body = &content[body_start..body_start + body_len];

        let no_start = body
            .find("<DOCNO>")
            .ok_or_else(|| CorpusError::MalformedDoc {
                offset: block_start,
                reason: "missing <DOCNO>".into(),
            })?;
        let no_text_start = no_start + "<DOCNO>".len();
        let no_len =
            body[no_text_start..]
                .find("</DOCNO>")
                .ok_or_else(|| CorpusError::MalformedDoc {
                    offset: block_start + no_start,
                    reason: "unclosed <DOCNO>".into(),
                })?;
        let docno = body[no_text_start..no_text_start + no_len].trim().to_owned();
        if docno.is_empty() {
            return Err(CorpusError::MalformedDoc {
                offset: block_start + no_start,
                reason: "empty DOCNO".into(),
            });
        }

        let mut text_src = String::with_capacity(body.len());
        text_src.push_str(&body[..no_start]);
        text_src.push(' ');
        text_src.push_str(&body[no_text_start + no_len + "</DOCNO>".len()..]);
        let text = strip_markup(&text_src);

        docs.push(Document { docno, text });
        pos = body_start + body_len + "</DOC>".len();
    }
    Ok(docs)
}

/// Replace SGML-like tags with whitespace and decode `&amp; &lt; &gt;`.
fn strip_markup(src: &str) -> String {
    let mut out = String::with_capacity(src.len());
    let mut rest = src;
    while let Some(lt) = rest.find('<') {
        out.push_str(&rest[..lt]);
        match rest[lt..].find('>') {
            Some(gt) => {
                out.push(' ');
                rest = &rest[lt + gt + 1..];
            }
            None => {
                // stray '<' with no closing '>': keep it as text
                out.push_str(&rest[lt..]);
                rest = "";
            }
        }
    }
    out.push_str(rest);
    decode_entities(out.trim())
}

fn decode_entities(src: &str) -> String {
    let mut out = String::with_capacity(src.len());
    let mut rest = src;
    while let Some(amp) = rest.find('&') {
        out.push_str(&rest[..amp]);
        let tail = &rest[amp..];
        let (repl, used) = if tail.starts_with("&amp;") {
            ("&", 5)
        } else if tail.starts_with("&lt;") {
            ("<", 4)
        } else if tail.starts_with("&gt;") {
            (">", 4)
        } else {
            ("&", 1)
        };
        out.push_str(repl);
        rest = &tail[used..];
    }
    out.push_str(rest);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_block() {
        let docs = parse_trec_docs("<DOC><DOCNO>A1</DOCNO><TEXT>hello</TEXT></DOC>".as_bytes())
            .unwrap();
        assert_eq!(
            docs,
            vec![Document {
                docno: "A1".into(),
                text: "hello".into()
            }]
        );
    }

    #[test]
    fn empty_stream() {
        assert!(parse_trec_docs("".as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn two_blocks_in_order() {
        let input = "<DOC>\n<DOCNO> B2 </DOCNO>\n<HEAD>first</HEAD>\n<TEXT>one two</TEXT>\n</DOC>\n\
                     <DOC><DOCNO>A1</DOCNO><TEXT>three</TEXT></DOC>";
        let docs = parse_trec_docs(input.as_bytes()).unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!(docs[0].docno, "B2");
        assert_eq!(docs[1].docno, "A1");
        let words: Vec<&str> = docs[0].text.split_whitespace().collect();
        assert_eq!(words, ["first", "one", "two"]);
    }

    #[test]
    fn missing_docno_is_error() {
        let err = parse_trec_docs("<DOC><TEXT>x</TEXT></DOC>".as_bytes()).unwrap_err();
        match err {
            CorpusError::MalformedDoc { offset, .. } => assert_eq!(offset, 0),
            e => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn unclosed_doc_is_error_with_offset() {
        let input = "<DOC><DOCNO>A1</DOCNO><TEXT>x</TEXT></DOC>  <DOC><DOCNO>A2</DOCNO>";
        let err = parse_trec_docs(input.as_bytes()).unwrap_err();
        match err {
            CorpusError::MalformedDoc { offset, reason } => {
                assert_eq!(offset, 44);
                assert!(reason.contains("unclosed"));
            }
            e => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn entities_decoded() {
        let docs =
            parse_trec_docs("<DOC><DOCNO>A</DOCNO><TEXT>AT&amp;T &lt;x&gt; &quot;</TEXT></DOC>".as_bytes())
                .unwrap();
        assert_eq!(docs[0].text, "AT&T <x> &quot;");
    }

    #[test]
    fn gzip_round_trip() {
        use flate2::write::GzEncoder;
        use flate2::Compression;
        use std::io::Write;

        let mut enc = GzEncoder::new(Vec::new(), Compression::default());
        enc.write_all(b"<DOC><DOCNO>G1</DOCNO><TEXT>zipped text</TEXT></DOC>")
            .unwrap();
        let gz = enc.finish().unwrap();

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("docs.gz");
        std::fs::write(&path, gz).unwrap();
        let docs = read_trec_docs_file(&path).unwrap();
        assert_eq!(docs[0].docno, "G1");
        assert_eq!(docs[0].text, "zipped text");
    }
}
