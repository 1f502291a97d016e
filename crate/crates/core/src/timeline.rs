//! Date-ordered timelines and their text format.
//!
//! ```text
//! Acme
//! 1	2015-03-02	a-0-1..1 b-0-1..1
//! 2	2015-03	a-2-4..5
//! ```
//!
//! The first line names the target. Each entry line holds the ordinal, the
//! date and the space-separated mentions as `doc_id-sentence-first..last`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::clustering::{Cluster, PreparedCorpus};
use crate::corpus::{CalendarValue, TokenSpan};
use crate::entity::TargetEntity;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TimelineError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn parse_error(line: usize, message: impl Into<String>) -> TimelineError {
    TimelineError::Parse { line, message: message.into() }
}

/// An event mention located by document, sentence and token span.
///
/// Equality, ordering and hashing use the location only. `surface` is not
/// part of the text format and is empty after [`read_timeline`].
#[derive(Debug, Clone)]
pub struct MentionRef {
    pub doc_id: String,
    pub sentence_index: u32,
    pub token_span: TokenSpan,
    pub surface: String,
}

impl MentionRef {
    pub fn new(doc_id: impl Into<String>, sentence_index: u32, token_span: TokenSpan) -> Self {
        Self {
            doc_id: doc_id.into(),
            sentence_index,
            token_span,
            surface: String::new(),
        }
    }

    fn key(&self) -> (&str, u32, TokenSpan) {
        (&self.doc_id, self.sentence_index, self.token_span)
    }

    /// Parses `doc_id-sentence-first..last`. The doc id may itself contain
    /// hyphens; the last two fields are split off from the right.
    pub fn parse(field: &str) -> Option<Self> {
        let mut parts = field.rsplitn(3, '-');
        let span = parts.next()?;
        let sentence = parts.next()?;
        let doc_id = parts.next().filter(|d| !d.is_empty())?;
        let (first, last) = span.split_once("..")?;
        let number = |s: &str| -> Option<u32> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            s.parse().ok()
        };
        let (first, last) = (number(first)?, number(last)?);
        if first > last {
            return None;
        }
        Some(Self::new(doc_id, number(sentence)?, TokenSpan::new(first, last)))
    }
}

impl std::fmt::Display for MentionRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}-{}-{}..{}",
            self.doc_id, self.sentence_index, self.token_span.first, self.token_span.last
        )
    }
}

impl PartialEq for MentionRef {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for MentionRef {}

impl Hash for MentionRef {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for MentionRef {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MentionRef {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimelineEntry {
    pub ordinal: u32,
    pub date: CalendarValue,
    pub mentions: Vec<MentionRef>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Timeline {
    pub target: String,
    pub entries: Vec<TimelineEntry>,
}

impl Timeline {
    pub fn new(target: impl Into<String>) -> Self {
        Self { target: target.into(), entries: Vec::new() }
    }

    pub fn mentions(&self) -> impl Iterator<Item = (&TimelineEntry, &MentionRef)> {
        self.entries.iter().flat_map(|e| e.mentions.iter().map(move |m| (e, m)))
    }

    /// First mention that occurs more than once, if any.
    pub fn duplicate_mention(&self) -> Option<&MentionRef> {
        let mut seen = BTreeSet::new();
        self.mentions().map(|(_, m)| m).find(|m| !seen.insert(*m))
    }
}

/// One entry per cluster, ordered by date, then lemma, then first member.
/// Mentions within an entry are sorted by location. Members that do not
/// resolve in `corpus`, or whose location was already used by an earlier
/// entry, are dropped, and entries left empty are skipped.
pub fn assemble(clusters: &[Cluster], target: &TargetEntity, corpus: &PreparedCorpus) -> Timeline {
    let mut ordered: Vec<&Cluster> = clusters.iter().collect();
    ordered.sort_by(|a, b| Cluster::order(a, b));

    let mut used = BTreeSet::new();
    let mut entries = Vec::new();
    for cluster in ordered {
        let mut mentions: Vec<MentionRef> = cluster
            .members
            .iter()
            .filter_map(|key| {
                let (doc, event) = corpus.event(key)?;
                let mut mention = MentionRef::new(&doc.doc_id, event.sentence_index, event.token_span);
                mention.surface = doc
                    .sentence(event.sentence_index)
                    .and_then(|s| s.surface(event.token_span))
                    .unwrap_or_default();
                Some(mention)
            })
            .filter(|m| used.insert(m.clone()))
            .collect();
        if mentions.is_empty() {
            continue;
        }
        mentions.sort();
        entries.push(TimelineEntry {
            ordinal: entries.len() as u32 + 1,
            date: cluster.date,
            mentions,
        });
    }
    Timeline { target: target.name.clone(), entries }
}

pub fn write_timeline(timeline: &Timeline) -> String {
    let mut out = String::new();
    out.push_str(&timeline.target);
    out.push('\n');
    for entry in &timeline.entries {
        let _ = write!(out, "{}\t{}\t", entry.ordinal, entry.date);
        for (i, m) in entry.mentions.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{m}");
        }
        out.push('\n');
    }
    out
}

/// Parses the text format. Ordinals must run 1, 2, 3, ... and dates must not
/// decrease. Duplicate mentions are accepted here; the scorer rejects them.
pub fn read_timeline(text: &str) -> Result<Timeline, TimelineError> {
    let mut lines = text.split('\n').enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().unwrap_or((1, ""));
    if header.trim().is_empty() {
        return Err(parse_error(1, "missing target name"));
    }
    let mut timeline = Timeline::new(header);
    let body: Vec<(usize, &str)> = lines.collect();
    for (pos, &(line, content)) in body.iter().enumerate() {
        if content.is_empty() && pos + 1 == body.len() {
            break;
        }
        let fields: Vec<&str> = content.split('\t').collect();
        let [ordinal, date, mentions] = fields[..] else {
            return Err(parse_error(line, format!("expected 3 tab-separated fields, found {}", fields.len())));
        };
        let expected = timeline.entries.len() as u32 + 1;
        if ordinal.parse::<u32>().ok() != Some(expected) || ordinal.starts_with(['+', '0']) {
            return Err(parse_error(line, format!("ordinal `{ordinal}`, expected {expected}")));
        }
        let date = CalendarValue::parse(date)
            .ok()
            .filter(|d| d.to_string() == date)
            .ok_or_else(|| parse_error(line, format!("bad date `{date}`")))?;
        if timeline.entries.last().is_some_and(|prev| prev.date > date) {
            return Err(parse_error(line, format!("date {date} precedes the previous entry")));
        }
        if mentions.is_empty() {
            return Err(parse_error(line, "entry has no mentions"));
        }
        let mentions = mentions
            .split(' ')
            .map(|f| MentionRef::parse(f).ok_or_else(|| parse_error(line, format!("bad mention `{f}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        timeline.entries.push(TimelineEntry { ordinal: expected, date, mentions });
    }
    Ok(timeline)
}

/// File stem for a target: lowercase alphanumeric runs joined by `-`.
pub fn target_slug(name: &str) -> String {
    let slug = name
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join("-");
    if slug.is_empty() {
        "target".to_string()
    } else {
        slug
    }
}
