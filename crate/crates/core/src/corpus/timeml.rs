//! Parser for the simplified TimeML dialect described in `docs/formats.md`.
//!
//! Sentences are `<s>` elements whose text is split on whitespace into
//! tokens; element boundaries also end a token. `EVENT`, `TIMEX3`, `ENTITY`
//! and `ARG` may wrap tokens inline, and their token span is whatever they
//! enclose. `TLINK`, `COREF` and stand-off `ARG` elements may appear anywhere.
//! Any other element is transparent: its text still yields tokens but it
//! carries no annotation.

use std::collections::HashMap;

use roxmltree::{Document, Node};

use super::lemma::fallback_lemma;
use super::{
    validate, AnnotatedDocument, CalendarValue, CorpusError, EntityMention, EventMention,
    PartOfSpeech, RelationType, Role, SemanticClass, Sentence, SrlArgument, TemporalExpression,
    TemporalLink, Token, TokenSpan,
};
use crate::text::is_stopword;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Derive noun tokens for `ARG` elements without a `nouns` attribute from
    /// every non-function-word token in the argument span.
    pub noun_fallback: bool,
}

struct PendingArg {
    event_id: String,
    role: Role,
    sentence_index: Option<u32>,
    span: TokenSpan,
    nouns: Option<Vec<String>>,
    line: u32,
}

struct Builder<'a, 'input> {
    xml: &'a Document<'input>,
    doc_id: String,
    sentences: Vec<Sentence>,
    events: Vec<EventMention>,
    timexes: Vec<TemporalExpression>,
    entities: Vec<EntityMention>,
    args: Vec<PendingArg>,
}

fn is_element(node: &Node, names: &[&str]) -> bool {
    node.is_element() && names.contains(&node.tag_name().name())
}

impl<'input> Builder<'_, 'input> {
    fn line(&self, node: Node) -> u32 {
        self.xml.text_pos_at(node.range().start).row
    }

    fn element_error(&self, node: Node, what: &str, message: impl Into<String>) -> CorpusError {
        CorpusError::validation(
            &self.doc_id,
            format!("{what} (line {})", self.line(node)),
            message,
        )
    }

    fn required<'n>(&self, node: Node<'n, 'input>, attr: &str) -> Result<&'n str, CorpusError> {
        node.attribute(attr).ok_or_else(|| {
            self.element_error(
                node,
                node.tag_name().name(),
                format!("missing attribute `{attr}`"),
            )
        })
    }

    fn sentence(&mut self, node: Node<'_, 'input>) -> Result<(), CorpusError> {
        let index = self.sentences.len() as u32;
        let mut tokens = Vec::new();
        self.walk(node, index, &mut tokens)?;
        self.sentences.push(Sentence { index, tokens });
        Ok(())
    }

    fn walk(
        &mut self,
        node: Node<'_, 'input>,
        sentence: u32,
        tokens: &mut Vec<Token>,
    ) -> Result<(), CorpusError> {
        for child in node.children() {
            if child.is_text() {
                for word in child.text().unwrap_or_default().split_whitespace() {
                    tokens.push(Token(tokens.len() as u32, word.to_string()));
                }
            } else if child.is_element() {
                let start = tokens.len() as u32;
                self.walk(child, sentence, tokens)?;
                let end = tokens.len() as u32;
                self.annotate(child, sentence, start, end, tokens)?;
            }
        }
        Ok(())
    }

    fn annotate(
        &mut self,
        node: Node<'_, 'input>,
        sentence: u32,
        start: u32,
        end: u32,
        tokens: &[Token],
    ) -> Result<(), CorpusError> {
        let name = node.tag_name().name();
        if !matches!(name, "EVENT" | "TIMEX3" | "ENTITY" | "ARG") {
            return Ok(());
        }
        if end == start {
            return Err(self.element_error(node, name, "element covers no tokens"));
        }
        let span = TokenSpan::new(start, end - 1);
        let text = || {
            tokens[start as usize..end as usize]
                .iter()
                .map(|t| t.1.as_str())
                .collect::<Vec<_>>()
                .join(" ")
        };
        match name {
            "EVENT" => {
                let event_id = self.required(node, "eid")?.to_string();
                let head_lemma = match node.attribute("lemma") {
                    Some(lemma) if !lemma.trim().is_empty() => lemma.trim().to_lowercase(),
                    _ => fallback_lemma(&tokens[span.last as usize].1),
                };
                let pos = node.attribute("pos").map_or(PartOfSpeech::Other, PartOfSpeech::from_timeml);
                self.events.push(EventMention {
                    event_id,
                    sentence_index: sentence,
                    token_span: span,
                    head_lemma,
                    pos,
                    arguments: Vec::new(),
                });
            }
            "TIMEX3" => {
                let timex_id = self.required(node, "tid")?.to_string();
                let raw = self.required(node, "value")?;
                let value = CalendarValue::parse(raw).map_err(|e| {
                    self.element_error(node, &format!("TIMEX3 {timex_id}"), e.to_string())
                })?;
                self.timexes.push(TemporalExpression {
                    timex_id,
                    sentence_index: sentence,
                    token_span: span,
                    value,
                });
            }
            "ENTITY" => {
                let id = self.required(node, "id")?.to_string();
                let class = node.attribute("class").map_or(SemanticClass::Misc, SemanticClass::from_label);
                self.entities.push(EntityMention {
                    entity_mention_id: id,
                    sentence_index: sentence,
                    token_span: span,
                    surface: text(),
                    semantic_class: class,
                });
            }
            _ => self.arg(node, Some(sentence), Some(span))?,
        }
        Ok(())
    }

    fn arg(
        &mut self,
        node: Node<'_, 'input>,
        sentence: Option<u32>,
        inline_span: Option<TokenSpan>,
    ) -> Result<(), CorpusError> {
        let event_id = self.required(node, "eventID")?.to_string();
        let Some(role) = Role::from_label(self.required(node, "role")?) else {
            return Ok(());
        };
        let span = match inline_span {
            Some(span) => span,
            None => {
                let raw = self.required(node, "span")?;
                parse_span(raw).ok_or_else(|| {
                    self.element_error(node, "ARG", format!("bad span `{raw}`, expected `first-last`"))
                })?
            }
        };
        let nouns = node
            .attribute("nouns")
            .map(|n| n.split_whitespace().map(str::to_lowercase).collect());
        self.args.push(PendingArg {
            event_id,
            role,
            sentence_index: sentence,
            span,
            nouns,
            line: self.line(node),
        });
        Ok(())
    }

    fn tlink(&self, node: Node) -> Result<Option<TemporalLink>, CorpusError> {
        let link_id = self.required(node, "lid")?.to_string();
        let what = format!("TLINK {link_id}");
        let rel = self.required(node, "relType")?;
        let Some(relation) = RelationType::from_timeml(rel) else {
            log::warn!("{}: {what}: relation `{rel}` outside the supported set, ignored", self.doc_id);
            return Ok(None);
        };
        let endpoint = |names: &[&str]| {
            names.iter().find_map(|n| node.attribute(*n)).map(str::to_string).ok_or_else(|| {
                self.element_error(node, &what, format!("missing endpoint, one of {names:?}"))
            })
        };
        let source_id = endpoint(&["eventID", "eventInstanceID", "timeID"])?;
        let target_id = endpoint(&["relatedToEventInstance", "relatedToEvent", "relatedToTime"])?;
        Ok(Some(TemporalLink { link_id, source_id, target_id, relation }))
    }

    fn attach_args(&mut self, noun_fallback: bool) -> Result<(), CorpusError> {
        let index: HashMap<String, usize> = self
            .events
            .iter()
            .enumerate()
            .map(|(i, e)| (e.event_id.clone(), i))
            .collect();
        for arg in std::mem::take(&mut self.args) {
            let element = format!("ARG for {} (line {})", arg.event_id, arg.line);
            let Some(&ev) = index.get(&arg.event_id) else {
                return Err(CorpusError::validation(
                    &self.doc_id,
                    element,
                    format!("dangling reference to `{}`", arg.event_id),
                ));
            };
            let event_sentence = self.events[ev].sentence_index;
            if arg.sentence_index.is_some_and(|s| s != event_sentence) {
                return Err(CorpusError::validation(
                    &self.doc_id,
                    element,
                    "argument lies outside its event's sentence",
                ));
            }
            let noun_tokens = match arg.nouns {
                Some(nouns) => nouns,
                None if noun_fallback => self
                    .sentences
                    .get(event_sentence as usize)
                    .map(|s| noun_candidates(s, arg.span))
                    .unwrap_or_default(),
                None => Vec::new(),
            };
            self.events[ev].arguments.push(SrlArgument {
                role: arg.role,
                token_span: arg.span,
                noun_tokens,
            });
        }
        Ok(())
    }
}

fn parse_span(raw: &str) -> Option<TokenSpan> {
    let raw = raw.trim();
    let (first, last) = raw.split_once('-').unwrap_or((raw, raw));
    let span = TokenSpan::new(first.trim().parse().ok()?, last.trim().parse().ok()?);
    (span.first <= span.last).then_some(span)
}

fn noun_candidates(sentence: &Sentence, span: TokenSpan) -> Vec<String> {
    sentence
        .tokens
        .iter()
        .filter(|t| span.contains(t.0))
        .map(|t| t.1.to_lowercase())
        .filter(|w| w.chars().any(char::is_alphabetic) && !is_stopword(w))
        .collect()
}

pub fn parse_timeml(xml_text: &str) -> Result<AnnotatedDocument, CorpusError> {
    parse_timeml_with(xml_text, ParseOptions::default())
}

pub fn parse_timeml_with(
    xml_text: &str,
    options: ParseOptions,
) -> Result<AnnotatedDocument, CorpusError> {
    let xml = Document::parse(xml_text).map_err(|e| CorpusError::Xml {
        line: e.pos().row,
        message: e.to_string(),
    })?;
    let root = xml.root_element();
    let doc_id = root
        .descendants()
        .find(|n| is_element(n, &["DOCID"]))
        .and_then(|n| n.text())
        .map(|t| t.trim().to_string())
        .unwrap_or_default();
    let mut builder = Builder {
        xml: &xml,
        doc_id,
        sentences: Vec::new(),
        events: Vec::new(),
        timexes: Vec::new(),
        entities: Vec::new(),
        args: Vec::new(),
    };
    if builder.doc_id.is_empty() {
        return Err(CorpusError::validation("<unknown>", "DOCID", "missing or empty"));
    }

    let dct_node = root
        .descendants()
        .find(|n| is_element(n, &["DCT"]))
        .ok_or_else(|| CorpusError::validation(&builder.doc_id, "DCT", "missing"))?;
    let dct_value = dct_node
        .attribute("value")
        .or_else(|| {
            dct_node
                .descendants()
                .find(|n| is_element(n, &["TIMEX3"]))
                .and_then(|n| n.attribute("value"))
        })
        .ok_or_else(|| builder.element_error(dct_node, "DCT", "missing `value`"))?;
    let dct = CalendarValue::parse(dct_value)
        .map_err(|e| builder.element_error(dct_node, "DCT", e.to_string()))?;

    let mut tlinks = Vec::new();
    let mut coref_chains = Vec::new();
    for node in root.descendants().filter(|n| n.is_element()) {
        let inside_sentence = node.ancestors().skip(1).any(|a| is_element(&a, &["s"]));
        match node.tag_name().name() {
            "s" if !inside_sentence => builder.sentence(node)?,
            "TLINK" => tlinks.extend(builder.tlink(node)?),
            "COREF" => coref_chains.push(
                builder
                    .required(node, "mentions")?
                    .split_whitespace()
                    .map(str::to_string)
                    .collect(),
            ),
            "ARG" if !inside_sentence => builder.arg(node, None, None)?,
            _ => {}
        }
    }
    builder.attach_args(options.noun_fallback)?;

    let doc = AnnotatedDocument {
        doc_id: builder.doc_id,
        dct,
        sentences: builder.sentences,
        events: builder.events,
        timexes: builder.timexes,
        tlinks,
        entities: builder.entities,
        coref_chains,
    };
    validate(&doc)?;
    Ok(doc)
}
