use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{
    lemma_cluster, temporal_cluster, topic_cluster, Cluster, ClusterError, DateCoarsening,
    EventKey, TopicClusterParams,
};
use crate::corpus::{AnnotatedDocument, EventMention};
use crate::entity::{filter_events, TargetEntity};
use crate::temporal::{anchor_events, build_graph, close, AnchorStatus, Anchoring};
use crate::topic::TopicModel;
use crate::vectorizer::{vectorize_with, EventVector, VectorizerOptions};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunMode {
    /// Date clusters refined by head lemma.
    #[default]
    Run1,
    /// Run 1 refined by k-means over argument topic vectors.
    Run2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub mode: RunMode,
    pub seed: u64,
    pub k: usize,
    pub min_split_size: usize,
    pub max_iter: usize,
    pub coarsening: DateCoarsening,
    pub vectorizer: VectorizerOptions,
}

impl PipelineConfig {
    pub fn new(mode: RunMode, seed: u64) -> Self {
        Self {
            mode,
            seed,
            k: 2,
            min_split_size: 3,
            max_iter: 100,
            coarsening: DateCoarsening::Exact,
            vectorizer: VectorizerOptions::default(),
        }
    }

    fn topic_params(&self) -> TopicClusterParams {
        TopicClusterParams {
            k: self.k,
            min_split_size: self.min_split_size,
            max_iter: self.max_iter,
            seed: self.seed,
        }
    }
}

/// Documents with their time anchors computed once, shared by every target.
#[derive(Debug, Clone)]
pub struct PreparedCorpus {
    docs: Vec<AnnotatedDocument>,
    anchoring: Vec<Anchoring>,
}

impl PreparedCorpus {
    pub fn new(docs: Vec<AnnotatedDocument>) -> Self {
        let anchoring = docs
            .iter()
            .map(|doc| anchor_events(doc, &close(&build_graph(doc))))
            .collect();
        Self { docs, anchoring }
    }

    pub fn docs(&self) -> &[AnnotatedDocument] {
        &self.docs
    }

    pub fn anchoring(&self, doc_id: &str) -> Option<&Anchoring> {
        self.docs.iter().position(|d| d.doc_id == doc_id).map(|i| &self.anchoring[i])
    }

    pub fn event(&self, key: &EventKey) -> Option<(&AnnotatedDocument, &EventMention)> {
        let doc = self.docs.iter().find(|d| d.doc_id == key.doc_id)?;
        Some((doc, doc.event(&key.event_id)?))
    }
}

/// Output of every clustering stage for one target.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PipelineStages {
    /// Events that passed the target-entity filter.
    pub selected: BTreeSet<EventKey>,
    /// Selected events without a date.
    pub excluded: Vec<(EventKey, AnchorStatus)>,
    pub temporal: Vec<Cluster>,
    pub lemma: Vec<Cluster>,
    /// Present for run2 only.
    pub topic: Option<Vec<Cluster>>,
    pub vectors: HashMap<EventKey, EventVector>,
}

impl PipelineStages {
    /// Clusters of the last stage the mode runs.
    pub fn output(&self) -> &[Cluster] {
        self.topic.as_deref().unwrap_or(&self.lemma)
    }
}

pub fn run_stages(
    corpus: &PreparedCorpus,
    target: &TargetEntity,
    model: Option<&TopicModel>,
    config: &PipelineConfig,
) -> Result<PipelineStages, ClusterError> {
    let model = match (config.mode, model) {
        (RunMode::Run2, None) => return Err(ClusterError::MissingModel),
        (RunMode::Run2, Some(m)) => Some(m),
        (RunMode::Run1, _) => None,
    };

    let mut events: HashMap<EventKey, &EventMention> = HashMap::new();
    let mut anchored = Vec::new();
    for (doc, anchoring) in corpus.docs.iter().zip(&corpus.anchoring) {
        for event_id in filter_events(doc, target) {
            let key = EventKey::new(&doc.doc_id, &event_id);
            let (Some(event), Some(anchor)) = (doc.event(&event_id), anchoring.anchors.get(&event_id)) else {
                continue;
            };
            events.insert(key.clone(), event);
            anchored.push((key, anchor.clone()));
        }
    }

    let temporal = temporal_cluster(&anchored, config.coarsening);
    let mut lemma: Vec<Cluster> = temporal
        .clusters
        .iter()
        .flat_map(|c| lemma_cluster(c, |k| events[k].head_lemma.as_str()))
        .collect();
    lemma.sort_by(Cluster::order);

    let mut vectors = HashMap::new();
    let topic = match model {
        None => None,
        Some(model) => {
            for (key, event) in &events {
                vectors.insert(key.clone(), vectorize_with(event, model, config.vectorizer));
            }
            let params = config.topic_params();
            let mut out = Vec::new();
            for cluster in &lemma {
                out.extend(topic_cluster(cluster, &vectors, &params)?);
            }
            out.sort_by(Cluster::order);
            Some(out)
        }
    };

    Ok(PipelineStages {
        selected: events.into_keys().collect(),
        excluded: temporal.excluded,
        temporal: temporal.clusters,
        lemma,
        topic,
        vectors,
    })
}

/// Coreference clusters for `target`, ascending by date then lemma.
pub fn run_pipeline(
    corpus: &PreparedCorpus,
    target: &TargetEntity,
    model: Option<&TopicModel>,
    config: &PipelineConfig,
) -> Result<Vec<Cluster>, ClusterError> {
    Ok(run_stages(corpus, target, model, config)?.output().to_vec())
}
