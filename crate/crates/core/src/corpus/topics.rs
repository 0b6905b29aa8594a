//! TREC topic file parsing: `<top>` blocks with `<num>` and `<title>`.
//! Only the number and title are retained; `<desc>` and `<narr>` are
//! ignored.

use std::io::Read;

use super::{CorpusError, Topic};

pub fn parse_topics(mut stream: impl Read) -> Result<Vec<Topic>, CorpusError> {
    let mut raw = Vec::new();
    stream.read_to_end(&mut raw)?;
    let content = String::from_utf8_lossy(&raw);
    parse_str(&content)
}

fn parse_str(content: &str) -> Result<Vec<Topic>, CorpusError> {
    let mut topics = Vec::new();
    let mut pos = 0;
    while let Some(rel) = content[pos..].find("<top>") {
        let start = pos + rel + "<top>".len();
        let len = content[start..]
            .find("</top>")
            .ok_or_else(|| CorpusError::Topic(format!("unclosed <top> block at byte {}", pos + rel)))?;
        let body = &content[start..start + len];
        topics.push(parse_block(body)?);
        pos = start + len + "</top>".len();
    }
    Ok(topics)
}

fn parse_block(body: &str) -> Result<Topic, CorpusError> {
    let num_raw = field(body, "<num>")
        .ok_or_else(|| CorpusError::Topic("topic block missing <num>".into()))?;
    let num_text = num_raw.trim().trim_start_matches("Number:").trim();
    let id: u32 = num_text
        .parse()
        .map_err(|_| CorpusError::Topic(format!("invalid topic number {num_text:?}")))?;

    let title_raw = field(body, "<title>")
        .ok_or_else(|| CorpusError::Topic(format!("topic {id} missing <title>")))?;
    let title_text = title_raw.trim().trim_start_matches("Topic:").trim();
    // normalize internal whitespace; titles may wrap across lines
    let title = title_text.split_whitespace().collect::<Vec<_>>().join(" ");
    if title.is_empty() {
        return Err(CorpusError::Topic(format!("topic {id} has an empty title")));
    }
    Ok(Topic { id, title })
}

/// Content of a field: text between the opening tag and the next `<`.
fn field<'a>(body: &'a str, tag: &str) -> Option<&'a str> {
    let start = body.find(tag)? + tag.len();
    let rest = &body[start..];
    match rest.find('<') {
        Some(end) => Some(&rest[..end]),
        None => Some(rest),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = "\
<top>
<num> Number: 604
<title> Lyme disease arthritis

<desc> Description:
What are the symptoms?
<narr> Narrative:
Relevant documents discuss the link.
</top>
";

    #[test]
    fn number_and_title_extracted() {
        let topics = parse_topics(FIXTURE.as_bytes()).unwrap();
        assert_eq!(
            topics,
            vec![Topic {
                id: 604,
                title: "Lyme disease arthritis".into()
            }]
        );
    }

    #[test]
    fn empty_stream() {
        assert!(parse_topics("".as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn desc_and_narr_ignored() {
        let topics = parse_topics(FIXTURE.as_bytes()).unwrap();
        assert!(!topics[0].title.contains("symptoms"));
    }

    #[test]
    fn old_style_topic_prefix() {
        let input = "<top>\n<num> Number: 051\n<title> Topic:  Airbus Subsidies\n</top>";
        let topics = parse_topics(input.as_bytes()).unwrap();
        assert_eq!(topics[0].id, 51);
        assert_eq!(topics[0].title, "Airbus Subsidies");
    }

    #[test]
    fn multiline_title_normalized() {
        let input = "<top>\n<num> Number: 9\n<title> first line\n  second line\n<desc> d\n</top>";
        let topics = parse_topics(input.as_bytes()).unwrap();
        assert_eq!(topics[0].title, "first line second line");
    }

    #[test]
    fn missing_num_is_error() {
        let input = "<top>\n<title> no number here\n</top>";
        assert!(parse_topics(input.as_bytes()).is_err());
    }

    #[test]
    fn missing_title_is_error() {
        let input = "<top>\n<num> Number: 12\n</top>";
        assert!(parse_topics(input.as_bytes()).is_err());
    }
}
