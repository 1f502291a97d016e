//! Event-topic matrix rows built from A0/A1 argument nouns.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::corpus::{EventMention, Role};
use crate::topic::TopicModel;

/// How repeated argument nouns are counted.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NounCounting {
    /// Every occurrence adds its weights.
    #[default]
    Multiset,
    /// Each distinct noun adds its weights once.
    Set,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorizerOptions {
    #[serde(default)]
    pub counting: NounCounting,
    /// Scale each non-zero vector to unit Euclidean length.
    #[serde(default)]
    pub normalize: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventVector {
    pub event_id: String,
    pub values: Vec<f64>,
}

/// Lowercased nouns of the event's A0 and A1 arguments, in argument order,
/// duplicates kept.
pub fn argument_nouns(event: &EventMention) -> Vec<String> {
    event
        .arguments
        .iter()
        .filter(|a| matches!(a.role, Role::A0 | Role::A1))
        .flat_map(|a| a.noun_tokens.iter().map(|n| n.to_lowercase()))
        .collect()
}

/// Sums, per topic, the knowledge-base weight of each noun. Only nouns in a
/// topic's top-word list contribute to that topic.
pub fn vectorize_nouns<S: AsRef<str>>(event_id: &str, nouns: &[S], model: &TopicModel) -> EventVector {
    let mut values = vec![0.0; model.topics()];
    for noun in nouns {
        for &(topic, weight) in model.topic_weights(noun.as_ref()) {
            values[topic as usize] += weight;
        }
    }
    EventVector { event_id: event_id.to_string(), values }
}

pub fn vectorize(event: &EventMention, model: &TopicModel) -> EventVector {
    vectorize_with(event, model, VectorizerOptions::default())
}

pub fn vectorize_with(event: &EventMention, model: &TopicModel, options: VectorizerOptions) -> EventVector {
    let mut nouns = argument_nouns(event);
    if options.counting == NounCounting::Set {
        let mut seen = HashSet::new();
        nouns.retain(|n| seen.insert(n.clone()));
    }
    let mut vector = vectorize_nouns(&event.event_id, &nouns, model);
    if options.normalize {
        let norm = vector.values.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            vector.values.iter_mut().for_each(|x| *x /= norm);
        }
    }
    vector
}

/// TSV dump: event id followed by the topic values, one row per line.
pub fn matrix_tsv(vectors: &[EventVector]) -> String {
    let mut out = String::new();
    for v in vectors {
        out.push_str(&v.event_id);
        for x in &v.values {
            let _ = write!(out, "\t{x}");
        }
        out.push('\n');
    }
    out
}
