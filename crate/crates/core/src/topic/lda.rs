use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{TopicError, Vocabulary};

/// Number of words kept per topic in the knowledge base.
pub const TOP_WORDS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LdaParams {
    pub topics: usize,
    pub alpha: f64,
    pub beta: f64,
    pub iterations: usize,
    pub seed: u64,
}

impl LdaParams {
    /// `alpha = 50 / topics`, `beta = 0.01`, 1000 iterations.
    pub fn with_topics(topics: usize, seed: u64) -> Self {
        Self {
            topics,
            alpha: 50.0 / topics.max(1) as f64,
            beta: 0.01,
            iterations: 1000,
            seed,
        }
    }

    fn check(&self) -> Result<(), TopicError> {
        if self.topics < 1 {
            return Err(TopicError::Config("topic count must be at least 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) || !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(TopicError::Config("alpha and beta must be positive".into()));
        }
        if self.iterations < 1 {
            return Err(TopicError::Config("iterations must be at least 1".into()));
        }
        Ok(())
    }
}

impl Default for LdaParams {
    fn default() -> Self {
        Self::with_topics(500, 0)
    }
}

/// Topic-word distributions plus the per-topic top-word truncation that
/// serves as the knowledge base.
#[derive(Debug, Clone, PartialEq)]
pub struct TopicModel {
    vocab: Vocabulary,
    params: LdaParams,
    phi: Vec<f64>,
    top_words: Vec<Vec<(u32, f64)>>,
    // word id -> [(topic, weight)] over the top-word lists
    knowledge: HashMap<u32, Vec<(u32, f64)>>,
}

impl TopicModel {
    /// Assembles a model from a row-major `topics × |vocab|` matrix; the
    /// top-word lists are derived from it.
    pub fn from_phi(vocab: Vocabulary, params: LdaParams, phi: Vec<f64>) -> Result<Self, TopicError> {
        let v = vocab.len();
        if phi.len() != params.topics * v || v == 0 {
            return Err(TopicError::Config(format!(
                "phi has {} entries, expected {} x {}",
                phi.len(),
                params.topics,
                v
            )));
        }
        let top_words = (0..params.topics)
            .map(|k| {
                let row = &phi[k * v..(k + 1) * v];
                let mut ids: Vec<u32> = (0..v as u32).collect();
                ids.sort_by(|&a, &b| row[b as usize].total_cmp(&row[a as usize]).then(a.cmp(&b)));
                ids.truncate(TOP_WORDS.min(v));
                ids.into_iter().map(|id| (id, row[id as usize])).collect()
            })
            .collect();
        Ok(Self::assemble(vocab, params, phi, top_words))
    }

    pub(super) fn assemble(
        vocab: Vocabulary,
        params: LdaParams,
        phi: Vec<f64>,
        top_words: Vec<Vec<(u32, f64)>>,
    ) -> Self {
        let mut knowledge: HashMap<u32, Vec<(u32, f64)>> = HashMap::new();
        for (topic, list) in top_words.iter().enumerate() {
            for &(id, weight) in list {
                knowledge.entry(id).or_default().push((topic as u32, weight));
            }
        }
        Self { vocab, params, phi, top_words, knowledge }
    }

    pub fn topics(&self) -> usize {
        self.params.topics
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn params(&self) -> &LdaParams {
        &self.params
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    pub fn phi_row(&self, topic: usize) -> &[f64] {
        let v = self.vocab.len();
        &self.phi[topic * v..(topic + 1) * v]
    }

    /// The `min(20, V)` heaviest `(word id, weight)` pairs of `topic`,
    /// descending by weight with ties broken by word id.
    pub fn top_words(&self, topic: usize) -> &[(u32, f64)] {
        &self.top_words[topic]
    }

    /// `(topic, weight)` for every topic whose top-word list contains `word`.
    pub fn topic_weights(&self, word: &str) -> &[(u32, f64)] {
        self.vocab
            .id(word)
            .and_then(|id| self.knowledge.get(&id))
            .map_or(&[], Vec::as_slice)
    }

    /// `phi[topic][word]` when `word` is among the top words of `topic`,
    /// otherwise 0.
    pub fn word_weight(&self, word: &str, topic: usize) -> Result<f64, TopicError> {
        if topic >= self.topics() {
            return Err(TopicError::TopicOutOfRange { topic, topics: self.topics() });
        }
        Ok(self
            .topic_weights(word)
            .iter()
            .find(|(t, _)| *t as usize == topic)
            .map_or(0.0, |&(_, w)| w))
    }
}

/// Collapsed Gibbs sampling with the full conditional
/// `p(z = k) ∝ (n_dk + alpha) (n_kw + beta) / (n_k + V beta)`, counts
/// excluding the current token. `phi` is the smoothed estimate from the final
/// sample. Tokens outside `vocab` are skipped, as are documents left empty.
pub fn train_lda(
    corpus: &[Vec<String>],
    vocab: &Vocabulary,
    params: &LdaParams,
) -> Result<TopicModel, TopicError> {
    params.check()?;
    let docs: Vec<Vec<u32>> = corpus
        .iter()
        .map(|doc| doc.iter().filter_map(|w| vocab.id(&w.to_lowercase())).collect::<Vec<_>>())
        .filter(|d| !d.is_empty())
        .collect();
    if docs.is_empty() || vocab.is_empty() {
        return Err(TopicError::EmptyCorpus);
    }

    let k_count = params.topics;
    let v = vocab.len();
    let (alpha, beta) = (params.alpha, params.beta);
    let v_beta = v as f64 * beta;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let mut doc_topic = vec![0u32; docs.len() * k_count];
    let mut topic_word = vec![0u32; k_count * v];
    let mut topic_total = vec![0u32; k_count];
    let mut assignments: Vec<Vec<u32>> = Vec::with_capacity(docs.len());
    for (d, doc) in docs.iter().enumerate() {
        let z: Vec<u32> = doc
            .iter()
            .map(|&w| {
                let k = rng.random_range(0..k_count);
                doc_topic[d * k_count + k] += 1;
                topic_word[k * v + w as usize] += 1;
                topic_total[k] += 1;
                k as u32
            })
            .collect();
        assignments.push(z);
    }

    let mut cumulative = vec![0f64; k_count];
    for _ in 0..params.iterations {
        for (d, doc) in docs.iter().enumerate() {
            let dk = &mut doc_topic[d * k_count..(d + 1) * k_count];
            for (i, &w) in doc.iter().enumerate() {
                let w = w as usize;
                let old = assignments[d][i] as usize;
                dk[old] -= 1;
                topic_word[old * v + w] -= 1;
                topic_total[old] -= 1;

                let mut total = 0.0;
                for k in 0..k_count {
                    total += (dk[k] as f64 + alpha) * (topic_word[k * v + w] as f64 + beta)
                        / (topic_total[k] as f64 + v_beta);
                    cumulative[k] = total;
                }
                let u = rng.random::<f64>() * total;
                let new = cumulative.iter().position(|&c| u < c).unwrap_or(k_count - 1);

                assignments[d][i] = new as u32;
                dk[new] += 1;
                topic_word[new * v + w] += 1;
                topic_total[new] += 1;
            }
        }
    }

    let mut phi = vec![0f64; k_count * v];
    for k in 0..k_count {
        let denom = topic_total[k] as f64 + v_beta;
        for w in 0..v {
            phi[k * v + w] = (topic_word[k * v + w] as f64 + beta) / denom;
        }
    }
    TopicModel::from_phi(vocab.clone(), *params, phi)
}
