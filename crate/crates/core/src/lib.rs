//! Cross-document event coreference and timeline construction for
//! TimeML-annotated news.

pub mod corpus;
pub mod text;
pub mod temporal;
pub mod entity;
pub mod topic;
pub mod vectorizer;
pub mod clustering;
pub mod timeline;
pub mod scorer;
pub mod cli;
