use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::TopicError;

/// Bijection between words and contiguous ids starting at 0.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<String>", into = "Vec<String>")]
pub struct Vocabulary {
    words: Vec<String>,
    index: HashMap<String, u32>,
}

impl Vocabulary {
    /// Builds a vocabulary from distinct words, ids in iteration order.
    /// Returns `None` if a word repeats.
    pub fn from_words<I: IntoIterator<Item = String>>(words: I) -> Option<Self> {
        let mut vocab = Self::default();
        for word in words {
            if vocab.index.contains_key(&word) {
                return None;
            }
            vocab.index.insert(word.clone(), vocab.words.len() as u32);
            vocab.words.push(word);
        }
        Some(vocab)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn id(&self, word: &str) -> Option<u32> {
        self.index.get(word).copied()
    }

    pub fn word(&self, id: u32) -> Option<&str> {
        self.words.get(id as usize).map(String::as_str)
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }
}

impl From<Vec<String>> for Vocabulary {
    fn from(words: Vec<String>) -> Self {
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        Self { words, index }
    }
}

impl From<Vocabulary> for Vec<String> {
    fn from(vocab: Vocabulary) -> Self {
        vocab.words
    }
}

/// Lowercased words seen at least `min_count` times and not in `stopwords`,
/// numbered in order of first occurrence.
pub fn build_vocabulary(
    corpus: &[Vec<String>],
    min_count: usize,
    stopwords: &HashSet<String>,
) -> Result<Vocabulary, TopicError> {
    if min_count < 1 {
        return Err(TopicError::Config("min_count must be at least 1".into()));
    }
    let mut counts: HashMap<String, usize> = HashMap::new();
    let mut order = Vec::new();
    for token in corpus.iter().flatten() {
        let word = token.to_lowercase();
        let count = counts.entry(word.clone()).or_insert(0);
        if *count == 0 {
            order.push(word);
        }
        *count += 1;
    }
    let kept: Vec<String> = order
        .into_iter()
        .filter(|w| counts[w] >= min_count && !stopwords.contains(w))
        .collect();
    if kept.is_empty() {
        return Err(TopicError::Config(
            "vocabulary is empty after frequency and stopword filtering".into(),
        ));
    }
    Ok(Vocabulary::from(kept))
}
