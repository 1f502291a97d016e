//! Annotated news documents and their two ingestion formats.
//!
//! Documents arrive either as a simplified TimeML dialect ([`parse_timeml`])
//! or as canonical JSONL ([`parse_corpus_jsonl`] / [`serialize_jsonl`]). Both
//! paths finish with [`validate`], so every id reference in a returned
//! document resolves.

mod calendar;
mod jsonl;
pub mod lemma;
mod timeml;
mod validate;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use calendar::{days_in_month, is_leap_year, CalendarError, CalendarValue, Granularity};
pub use jsonl::{parse_corpus_jsonl, read_corpus_jsonl, serialize_jsonl, write_corpus_jsonl};
pub use timeml::{parse_timeml, parse_timeml_with, ParseOptions};
pub use validate::{validate, validate_corpus};

/// Reserved node id of the document creation time in temporal links.
pub const DCT_ID: &str = "t0";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("XML error at line {line}: {message}")]
    Xml { line: u32, message: String },
    #[error("document `{doc_id}`: {element}: {message}")]
    Validation { doc_id: String, element: String, message: String },
    #[error("line {line}: field `{field}`: {message}")]
    Schema { line: usize, field: String, message: String },
    #[error("duplicate document id `{0}` in corpus")]
    DuplicateDocument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CorpusError {
    pub(crate) fn validation(
        doc_id: &str,
        element: impl Into<String>,
        message: impl Into<String>,
    ) -> Self {
        Self::Validation {
            doc_id: doc_id.to_string(),
            element: element.into(),
            message: message.into(),
        }
    }
}

/// Inclusive token-id range within one sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[u32; 2]", into = "[u32; 2]")]
pub struct TokenSpan {
    pub first: u32,
    pub last: u32,
}

impl TokenSpan {
    pub fn new(first: u32, last: u32) -> Self {
        Self { first, last }
    }

    pub fn single(token: u32) -> Self {
        Self { first: token, last: token }
    }

    pub fn contains(&self, token: u32) -> bool {
        self.first <= token && token <= self.last
    }
}

impl From<[u32; 2]> for TokenSpan {
    fn from([first, last]: [u32; 2]) -> Self {
        Self { first, last }
    }
}

impl From<TokenSpan> for [u32; 2] {
    fn from(span: TokenSpan) -> Self {
        [span.first, span.last]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token(pub u32, pub String);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub index: u32,
    pub tokens: Vec<Token>,
}

impl Sentence {
    /// Surface text of `span`, tokens joined by single spaces.
    pub fn surface(&self, span: TokenSpan) -> Option<String> {
        let first = span.first as usize;
        let last = span.last as usize;
        if first > last || last >= self.tokens.len() {
            return None;
        }
        Some(
            self.tokens[first..=last]
                .iter()
                .map(|t| t.1.as_str())
                .collect::<Vec<_>>()
                .join(" "),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartOfSpeech {
    Verb,
    Noun,
    Other,
}

impl PartOfSpeech {
    /// Maps TimeML `pos` values; anything unrecognised is `Other`.
    pub fn from_timeml(value: &str) -> Self {
        match value.to_ascii_uppercase().as_str() {
            "VERB" | "V" => Self::Verb,
            "NOUN" | "N" => Self::Noun,
            _ => Self::Other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    A0,
    A1,
}

impl Role {
    /// Only the two core roles are kept; `None` for every other label.
    pub fn from_label(label: &str) -> Option<Self> {
        match label.trim().to_ascii_uppercase().as_str() {
            "A0" | "ARG0" => Some(Self::A0),
            "A1" | "ARG1" => Some(Self::A1),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrlArgument {
    pub role: Role,
    pub token_span: TokenSpan,
    pub noun_tokens: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventMention {
    pub event_id: String,
    pub sentence_index: u32,
    pub token_span: TokenSpan,
    pub head_lemma: String,
    pub pos: PartOfSpeech,
    #[serde(default)]
    pub arguments: Vec<SrlArgument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemporalExpression {
    pub timex_id: String,
    pub sentence_index: u32,
    pub token_span: TokenSpan,
    pub value: CalendarValue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RelationType {
    Before,
    After,
    Simultaneous,
    IsIncluded,
    Includes,
}

impl RelationType {
    pub fn from_timeml(value: &str) -> Option<Self> {
        match value.trim().to_ascii_uppercase().as_str() {
            "BEFORE" => Some(Self::Before),
            "AFTER" => Some(Self::After),
            "SIMULTANEOUS" => Some(Self::Simultaneous),
            "IS_INCLUDED" => Some(Self::IsIncluded),
            "INCLUDES" => Some(Self::Includes),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Before => "BEFORE",
            Self::After => "AFTER",
            Self::Simultaneous => "SIMULTANEOUS",
            Self::IsIncluded => "IS_INCLUDED",
            Self::Includes => "INCLUDES",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemporalLink {
    pub link_id: String,
    pub source_id: String,
    pub target_id: String,
    pub relation: RelationType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SemanticClass {
    Person,
    Location,
    Organization,
    Misc,
}

impl SemanticClass {
    pub fn from_label(value: &str) -> Self {
        match value.trim().to_ascii_uppercase().as_str() {
            "PERSON" | "PER" => Self::Person,
            "LOCATION" | "LOC" => Self::Location,
            "ORGANIZATION" | "ORGANISATION" | "ORG" => Self::Organization,
            _ => Self::Misc,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntityMention {
    pub entity_mention_id: String,
    pub sentence_index: u32,
    pub token_span: TokenSpan,
    pub surface: String,
    pub semantic_class: SemanticClass,
}

/// One news article with all the annotation the pipeline consumes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedDocument {
    pub doc_id: String,
    pub dct: CalendarValue,
    pub sentences: Vec<Sentence>,
    #[serde(default)]
    pub events: Vec<EventMention>,
    #[serde(default)]
    pub timexes: Vec<TemporalExpression>,
    #[serde(default)]
    pub tlinks: Vec<TemporalLink>,
    #[serde(default)]
    pub entities: Vec<EntityMention>,
    #[serde(default)]
    pub coref_chains: Vec<Vec<String>>,
}

impl AnnotatedDocument {
    pub fn event(&self, event_id: &str) -> Option<&EventMention> {
        self.events.iter().find(|e| e.event_id == event_id)
    }

    pub fn sentence(&self, index: u32) -> Option<&Sentence> {
        self.sentences.get(index as usize)
    }
}
