use std::collections::HashSet;

use super::{AnnotatedDocument, CorpusError, TokenSpan, DCT_ID};

struct Checker<'a> {
    doc: &'a AnnotatedDocument,
}

impl Checker<'_> {
    fn fail(&self, element: String, message: impl Into<String>) -> CorpusError {
        CorpusError::validation(&self.doc.doc_id, element, message)
    }

    fn span(&self, element: &str, sentence: u32, span: TokenSpan) -> Result<(), CorpusError> {
        let s = self
            .doc
            .sentence(sentence)
            .ok_or_else(|| self.fail(element.to_string(), format!("unknown sentence {sentence}")))?;
        if span.first > span.last || span.last as usize >= s.tokens.len() {
            return Err(self.fail(
                element.to_string(),
                format!(
                    "token span {}..{} outside sentence {} ({} tokens)",
                    span.first,
                    span.last,
                    sentence,
                    s.tokens.len()
                ),
            ));
        }
        Ok(())
    }
}

fn is_lowercase(s: &str) -> bool {
    s.to_lowercase() == s
}

/// Checks every structural invariant of `doc`: contiguous sentence and token
/// numbering, spans inside their sentences, unique ids, and resolvable
/// references from temporal links and coreference chains.
pub fn validate(doc: &AnnotatedDocument) -> Result<(), CorpusError> {
    let c = Checker { doc };
    if doc.doc_id.is_empty() || doc.doc_id.chars().any(char::is_whitespace) {
        return Err(c.fail("DOCID".into(), "document id must be non-empty without whitespace"));
    }
    for (pos, sentence) in doc.sentences.iter().enumerate() {
        if sentence.index as usize != pos {
            return Err(c.fail(
                format!("sentence {}", sentence.index),
                format!("expected index {pos}"),
            ));
        }
        for (tpos, token) in sentence.tokens.iter().enumerate() {
            if token.0 as usize != tpos {
                return Err(c.fail(
                    format!("sentence {pos} token {}", token.0),
                    format!("expected token id {tpos}"),
                ));
            }
            if token.1.is_empty() || token.1.chars().any(char::is_whitespace) {
                return Err(c.fail(
                    format!("sentence {pos} token {tpos}"),
                    "token text must be non-empty without whitespace",
                ));
            }
        }
    }

    // Events, timexes and the DCT share the temporal-node namespace.
    let mut nodes: HashSet<&str> = HashSet::from([DCT_ID]);
    for event in &doc.events {
        let element = format!("EVENT {}", event.event_id);
        if event.event_id.is_empty() || !nodes.insert(&event.event_id) {
            return Err(c.fail(element, "empty or duplicate id"));
        }
        if event.head_lemma.is_empty() || !is_lowercase(&event.head_lemma) {
            return Err(c.fail(element, "head lemma must be non-empty and lowercase"));
        }
        c.span(&element, event.sentence_index, event.token_span)?;
        for arg in &event.arguments {
            let arg_element = format!("ARG {:?} of {}", arg.role, event.event_id);
            c.span(&arg_element, event.sentence_index, arg.token_span)?;
            if arg.noun_tokens.iter().any(|n| n.is_empty() || !is_lowercase(n)) {
                return Err(c.fail(arg_element, "noun tokens must be non-empty and lowercase"));
            }
        }
    }
    for timex in &doc.timexes {
        let element = format!("TIMEX3 {}", timex.timex_id);
        if timex.timex_id.is_empty() || !nodes.insert(&timex.timex_id) {
            return Err(c.fail(element, "empty, duplicate or reserved id"));
        }
        c.span(&element, timex.sentence_index, timex.token_span)?;
    }

    let mut links = HashSet::new();
    for link in &doc.tlinks {
        let element = format!("TLINK {}", link.link_id);
        if link.link_id.is_empty() || !links.insert(&link.link_id) {
            return Err(c.fail(element, "empty or duplicate id"));
        }
        for endpoint in [&link.source_id, &link.target_id] {
            if !nodes.contains(endpoint.as_str()) {
                return Err(c.fail(element, format!("dangling reference to `{endpoint}`")));
            }
        }
        if link.source_id == link.target_id {
            return Err(c.fail(element, "source and target are the same node"));
        }
    }

    let mut mentions = HashSet::new();
    for entity in &doc.entities {
        let element = format!("ENTITY {}", entity.entity_mention_id);
        if entity.entity_mention_id.is_empty() || !mentions.insert(&entity.entity_mention_id) {
            return Err(c.fail(element, "empty or duplicate id"));
        }
        c.span(&element, entity.sentence_index, entity.token_span)?;
    }
    for (n, chain) in doc.coref_chains.iter().enumerate() {
        let element = format!("COREF #{n}");
        let mut seen = HashSet::new();
        for id in chain {
            if !mentions.contains(id) {
                return Err(c.fail(element, format!("dangling reference to `{id}`")));
            }
            if !seen.insert(id) {
                return Err(c.fail(element, format!("mention `{id}` listed twice")));
            }
        }
    }
    Ok(())
}

/// Validates each document and checks that document ids are unique.
pub fn validate_corpus(docs: &[AnnotatedDocument]) -> Result<(), CorpusError> {
    let mut ids = HashSet::new();
    for doc in docs {
        validate(doc)?;
        if !ids.insert(doc.doc_id.as_str()) {
            return Err(CorpusError::DuplicateDocument(doc.doc_id.clone()));
        }
    }
    Ok(())
}
