//! Three-stage event coreference clustering: by anchored date, then by head
//! lemma, then by k-means over topic vectors.

mod kmeans;
mod pipeline;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{CalendarValue, Granularity};
use crate::temporal::{AnchorStatus, TimeAnchor};
use crate::vectorizer::EventVector;

pub use kmeans::{inertia, kmeans, nearest, squared_distance, KMeansResult};
pub use pipeline::{run_pipeline, run_stages, PipelineConfig, PipelineStages, PreparedCorpus, RunMode};

#[derive(Debug, Error, PartialEq)]
pub enum ClusterError {
    #[error("invalid clustering input: {0}")]
    InvalidInput(String),
    #[error("run2 needs a topic model")]
    MissingModel,
}

/// Corpus-wide identity of an event mention.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EventKey {
    pub doc_id: String,
    pub event_id: String,
}

impl EventKey {
    pub fn new(doc_id: impl Into<String>, event_id: impl Into<String>) -> Self {
        Self { doc_id: doc_id.into(), event_id: event_id.into() }
    }
}

/// A set of coreferent event mentions sharing a date (and, after the lemma
/// stage, a head lemma).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub members: BTreeSet<EventKey>,
    pub date: CalendarValue,
    pub lemma: Option<String>,
}

impl Cluster {
    /// Ascending by date, then lemma, then first member.
    pub fn order(a: &Cluster, b: &Cluster) -> std::cmp::Ordering {
        a.date
            .cmp(&b.date)
            .then_with(|| a.lemma.cmp(&b.lemma))
            .then_with(|| a.members.first().cmp(&b.members.first()))
    }
}

/// How anchored dates are compared when forming temporal clusters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DateCoarsening {
    /// Exact on granularity and fields: `2015-01` and `2015-01-05` differ.
    #[default]
    Exact,
    /// Truncate anchors finer than a day.
    Day,
    /// Truncate day anchors to their month.
    Month,
}

impl DateCoarsening {
    pub fn apply(self, value: CalendarValue) -> CalendarValue {
        match self {
            DateCoarsening::Exact => value,
            DateCoarsening::Day => value.truncate(Granularity::Day),
            DateCoarsening::Month => value.truncate(Granularity::Month),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TemporalClustering {
    pub clusters: Vec<Cluster>,
    /// Events left out because they carry no date.
    pub excluded: Vec<(EventKey, AnchorStatus)>,
}

/// One cluster per distinct anchored date, ascending. `ORDERED_ONLY` and
/// `UNRESOLVED` events are reported in `excluded`.
pub fn temporal_cluster(events: &[(EventKey, TimeAnchor)], coarsening: DateCoarsening) -> TemporalClustering {
    let mut by_date: BTreeMap<CalendarValue, BTreeSet<EventKey>> = BTreeMap::new();
    let mut excluded = Vec::new();
    for (key, anchor) in events {
        match anchor.value() {
            Some(value) => {
                by_date.entry(coarsening.apply(value)).or_default().insert(key.clone());
            }
            None => excluded.push((key.clone(), anchor.status())),
        }
    }
    let clusters = by_date
        .into_iter()
        .map(|(date, members)| Cluster { members, date, lemma: None })
        .collect();
    TemporalClustering { clusters, excluded }
}

/// Splits a cluster by exact head lemma; output is ordered by lemma.
pub fn lemma_cluster<'a, F>(cluster: &Cluster, lemma_of: F) -> Vec<Cluster>
where
    F: Fn(&EventKey) -> &'a str,
{
    let mut by_lemma: BTreeMap<&str, BTreeSet<EventKey>> = BTreeMap::new();
    for member in &cluster.members {
        by_lemma.entry(lemma_of(member)).or_default().insert(member.clone());
    }
    by_lemma
        .into_iter()
        .map(|(lemma, members)| Cluster {
            members,
            date: cluster.date,
            lemma: Some(lemma.to_string()),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopicClusterParams {
    pub k: usize,
    /// Clusters smaller than this pass through unsplit.
    pub min_split_size: usize,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for TopicClusterParams {
    fn default() -> Self {
        Self { k: 2, min_split_size: 3, max_iter: 100, seed: 0 }
    }
}

/// Re-partitions a lemma cluster by k-means over its members' topic vectors.
/// Members without a vector count as the zero vector.
pub fn topic_cluster(
    cluster: &Cluster,
    vectors: &HashMap<EventKey, EventVector>,
    params: &TopicClusterParams,
) -> Result<Vec<Cluster>, ClusterError> {
    if cluster.members.len() < params.min_split_size.max(1) {
        return Ok(vec![cluster.clone()]);
    }
    let members: Vec<&EventKey> = cluster.members.iter().collect();
    let Some(dims) = members.iter().find_map(|m| vectors.get(*m)).map(|v| v.values.len()) else {
        return Ok(vec![cluster.clone()]);
    };
    let zero = vec![0.0; dims];
    let points: Vec<&[f64]> = members
        .iter()
        .map(|m| vectors.get(*m).map_or(zero.as_slice(), |v| v.values.as_slice()))
        .collect();
    let result = kmeans(&points, params.k, params.seed, params.max_iter)?;
    let mut groups: Vec<BTreeSet<EventKey>> = vec![BTreeSet::new(); params.k];
    for (member, &a) in members.iter().zip(&result.assignments) {
        groups[a].insert((*member).clone());
    }
    let mut out: Vec<Cluster> = groups
        .into_iter()
        .filter(|g| !g.is_empty())
        .map(|members| Cluster { members, date: cluster.date, lemma: cluster.lemma.clone() })
        .collect();
    out.sort_by(Cluster::order);
    Ok(out)
}
