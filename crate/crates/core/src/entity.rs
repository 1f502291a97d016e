//! Target-entity event selection.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::corpus::{AnnotatedDocument, EntityMention};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetEntity {
    pub name: String,
    #[serde(default)]
    pub aliases: Vec<String>,
}

impl TargetEntity {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), aliases: Vec::new() }
    }

    pub fn with_aliases<I, S>(mut self, aliases: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.aliases = aliases.into_iter().map(Into::into).collect();
        self
    }

    fn names(&self) -> impl Iterator<Item = &str> {
        std::iter::once(self.name.as_str()).chain(self.aliases.iter().map(String::as_str))
    }

    /// Case-insensitive exact match against the name or an alias; a
    /// multiword name also matches any mention containing its tokens as a
    /// contiguous run.
    pub fn matches(&self, surface: &str) -> bool {
        let mention = words(surface);
        self.names().any(|name| {
            let name = words(name);
            if name.is_empty() {
                return false;
            }
            if name == mention {
                return true;
            }
            name.len() > 1 && mention.windows(name.len()).any(|w| w == name.as_slice())
        })
    }
}

fn words(text: &str) -> Vec<String> {
    text.split_whitespace().map(str::to_lowercase).collect()
}

/// Ids of the entity mentions that denote `target`, directly or through a
/// coreference chain.
pub fn target_mentions<'a>(doc: &'a AnnotatedDocument, target: &TargetEntity) -> HashSet<&'a str> {
    let mut selected: HashSet<&str> = doc
        .entities
        .iter()
        .filter(|m| target.matches(&m.surface))
        .map(|m| m.entity_mention_id.as_str())
        .collect();
    let linked: Vec<&str> = doc
        .coref_chains
        .iter()
        .filter(|chain| chain.iter().any(|id| selected.contains(id.as_str())))
        .flatten()
        .map(String::as_str)
        .collect();
    selected.extend(linked);
    selected
}

/// Events whose sentence contains a mention of `target` (or a mention
/// coreferent with one), in document order.
pub fn filter_events(doc: &AnnotatedDocument, target: &TargetEntity) -> Vec<String> {
    let mentions = target_mentions(doc, target);
    let sentences: HashSet<u32> = doc
        .entities
        .iter()
        .filter(|m: &&EntityMention| mentions.contains(m.entity_mention_id.as_str()))
        .map(|m| m.sentence_index)
        .collect();
    let mut seen = HashSet::new();
    doc.events
        .iter()
        .filter(|e| sentences.contains(&e.sentence_index))
        .filter(|e| seen.insert(e.event_id.as_str()))
        .map(|e| e.event_id.clone())
        .collect()
}
