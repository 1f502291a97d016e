//! Canonical one-document-per-line JSON format.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::{validate_corpus, AnnotatedDocument, CorpusError};

fn parse_line(line: &str, line_no: usize) -> Result<AnnotatedDocument, CorpusError> {
    let mut de = serde_json::Deserializer::from_str(line);
    serde_path_to_error::deserialize(&mut de).map_err(|err| {
        let field = err.path().to_string();
        CorpusError::Schema {
            line: line_no,
            field: if field == "." { "<document>".to_string() } else { field },
            message: err.into_inner().to_string(),
        }
    })
}

/// Reads one document per non-blank line. Documents keep input order and are
/// validated exactly as [`super::parse_timeml`] output is.
pub fn parse_corpus_jsonl<R: BufRead>(reader: R) -> Result<Vec<AnnotatedDocument>, CorpusError> {
    let mut docs = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        docs.push(parse_line(&line, n + 1)?);
    }
    validate_corpus(&docs)?;
    Ok(docs)
}

pub fn read_corpus_jsonl(path: &Path) -> Result<Vec<AnnotatedDocument>, CorpusError> {
    parse_corpus_jsonl(BufReader::new(File::open(path)?))
}

pub fn write_corpus_jsonl<W: Write>(
    mut writer: W,
    docs: &[AnnotatedDocument],
) -> std::io::Result<()> {
    for doc in docs {
        serde_json::to_writer(&mut writer, doc)?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}

pub fn serialize_jsonl(docs: &[AnnotatedDocument]) -> String {
    let mut out = Vec::new();
    write_corpus_jsonl(&mut out, docs).expect("writing to a Vec cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}
