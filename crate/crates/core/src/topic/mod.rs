//! LDA topic model trained by collapsed Gibbs sampling, exposed as a
//! knowledge base of the top-weighted words of every topic.

mod lda;
mod model_file;
mod vocab;

use thiserror::Error;

pub use lda::{train_lda, LdaParams, TopicModel, TOP_WORDS};
pub use model_file::{checksum_hex, load_model, save_model, MODEL_MAGIC, MODEL_VERSION};
pub use vocab::{build_vocabulary, Vocabulary};

#[derive(Debug, Error, PartialEq)]
pub enum TopicError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("corpus is empty after vocabulary filtering")]
    EmptyCorpus,
    #[error("topic {topic} out of range (model has {topics} topics)")]
    TopicOutOfRange { topic: usize, topics: usize },
    #[error("not a topic model file")]
    BadMagic,
    #[error("unsupported model file version {0}")]
    Version(u32),
    #[error("model file checksum mismatch ({0})")]
    Checksum(String),
    #[error("corrupt model file: {0}")]
    Corrupt(String),
}
