//! Generators and oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use timeline_coref::corpus::{
    validate, AnnotatedDocument, CalendarValue, EntityMention, EventMention, PartOfSpeech,
    RelationType, Role, SemanticClass, Sentence, SrlArgument, TemporalExpression, TemporalLink,
    Token, TokenSpan, DCT_ID,
};
use timeline_coref::temporal::{close, Relation, TemporalGraph};
use timeline_coref::timeline::{MentionRef, Timeline, TimelineEntry};
use timeline_coref::topic::{LdaParams, TopicModel, Vocabulary};

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(rel)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const RELATIONS: [RelationType; 5] = [
    RelationType::Before,
    RelationType::After,
    RelationType::Simultaneous,
    RelationType::IsIncluded,
    RelationType::Includes,
];

pub const LEMMAS: [&str; 4] = ["buy", "sell", "sue", "say"];
pub const NOUNS: [&str; 8] = ["phone", "battery", "court", "judge", "shares", "profit", "oil", "storm"];
const SURFACES: [&str; 8] = ["the", "café", "\"quoted\"", "a\\b", "日本", "x<y", "data", "tab\u{7f}"];
const DATES: [&str; 7] = ["2015-01-05", "2015-01-06", "2015-01-07", "2015-01", "2015-02", "2015", "2014-12-31"];

pub fn date(s: &str) -> CalendarValue {
    CalendarValue::parse(s).unwrap()
}

/// Knobs for [`random_doc`].
#[derive(Debug, Clone, Copy)]
pub struct DocShape {
    pub max_sentences: usize,
    pub max_events_per_sentence: usize,
    pub max_links: usize,
}

impl Default for DocShape {
    fn default() -> Self {
        Self { max_sentences: 5, max_events_per_sentence: 3, max_links: 10 }
    }
}

/// A random document that passes validation. Entity mentions are one-token
/// `Acme`, `Globex` or `firm`; some are chained by coreference.
pub fn random_doc(rng: &mut ChaCha8Rng, doc_id: &str, shape: DocShape) -> AnnotatedDocument {
    let mut doc = AnnotatedDocument {
        doc_id: doc_id.to_string(),
        dct: date(DATES[rng.random_range(0..3)]),
        sentences: Vec::new(),
        events: Vec::new(),
        timexes: Vec::new(),
        tlinks: Vec::new(),
        entities: Vec::new(),
        coref_chains: Vec::new(),
    };
    let n_sentences = rng.random_range(1..=shape.max_sentences);
    for s in 0..n_sentences as u32 {
        let n_tokens = rng.random_range(3..10u32);
        let mut tokens: Vec<Token> = (0..n_tokens)
            .map(|i| Token(i, SURFACES.choose(rng).unwrap().to_string()))
            .collect();
        let mut free: Vec<u32> = (1..n_tokens).collect();
        if rng.random_bool(0.7) {
            let surface = *["Acme", "Globex", "firm"].choose(rng).unwrap();
            tokens[0].1 = surface.to_string();
            doc.entities.push(EntityMention {
                entity_mention_id: format!("m{}", doc.entities.len() + 1),
                sentence_index: s,
                token_span: TokenSpan::single(0),
                surface: surface.to_string(),
                semantic_class: SemanticClass::Organization,
            });
        }
        let n_events = rng.random_range(0..=shape.max_events_per_sentence).min(free.len());
        for _ in 0..n_events {
            let t = free.swap_remove(rng.random_range(0..free.len()));
            let arguments = (0..rng.random_range(0..3))
                .map(|_| {
                    let a = rng.random_range(0..n_tokens);
                    let b = rng.random_range(a..n_tokens);
                    SrlArgument {
                        role: if rng.random_bool(0.5) { Role::A0 } else { Role::A1 },
                        token_span: TokenSpan::new(a, b),
                        noun_tokens: (0..rng.random_range(0..4))
                            .map(|_| NOUNS.choose(rng).unwrap().to_string())
                            .collect(),
                    }
                })
                .collect();
            doc.events.push(EventMention {
                event_id: format!("e{}", doc.events.len() + 1),
                sentence_index: s,
                token_span: TokenSpan::single(t),
                head_lemma: LEMMAS.choose(rng).unwrap().to_string(),
                pos: if rng.random_bool(0.8) { PartOfSpeech::Verb } else { PartOfSpeech::Noun },
                arguments,
            });
        }
        if !free.is_empty() && rng.random_bool(0.5) {
            let t = free.swap_remove(rng.random_range(0..free.len()));
            doc.timexes.push(TemporalExpression {
                timex_id: format!("t{}", doc.timexes.len() + 1),
                sentence_index: s,
                token_span: TokenSpan::single(t),
                value: date(DATES.choose(rng).unwrap()),
            });
        }
        doc.sentences.push(Sentence { index: s, tokens });
    }

    let mut nodes: Vec<String> = vec![DCT_ID.to_string()];
    nodes.extend(doc.events.iter().map(|e| e.event_id.clone()));
    nodes.extend(doc.timexes.iter().map(|t| t.timex_id.clone()));
    if nodes.len() >= 2 {
        for i in 0..rng.random_range(0..=shape.max_links) {
            let a = rng.random_range(0..nodes.len());
            let mut b = rng.random_range(0..nodes.len() - 1);
            if b >= a {
                b += 1;
            }
            doc.tlinks.push(TemporalLink {
                link_id: format!("l{}", i + 1),
                source_id: nodes[a].clone(),
                target_id: nodes[b].clone(),
                relation: *RELATIONS.choose(rng).unwrap(),
            });
        }
    }
    if doc.entities.len() >= 2 && rng.random_bool(0.5) {
        let mut ids: Vec<String> = doc.entities.iter().map(|e| e.entity_mention_id.clone()).collect();
        ids.truncate(rng.random_range(2..=ids.len()));
        doc.coref_chains.push(ids);
    }
    validate(&doc).expect("generator produced an invalid document");
    doc
}

pub fn random_corpus(rng: &mut ChaCha8Rng, shape: DocShape) -> Vec<AnnotatedDocument> {
    (0..rng.random_range(1..=3))
        .map(|i| random_doc(rng, &format!("doc-{i}"), shape))
        .collect()
}

/// A toy model over [`NOUNS`] plus filler words, so that each noun sits in
/// the top-word lists of a random subset of topics.
pub fn toy_model(rng: &mut ChaCha8Rng, topics: usize) -> TopicModel {
    let mut words: Vec<String> = NOUNS.iter().map(|w| w.to_string()).collect();
    words.extend((0..24).map(|i| format!("filler{i}")));
    let vocab = Vocabulary::from_words(words).unwrap();
    let v = vocab.len();
    let mut phi = Vec::with_capacity(topics * v);
    for _ in 0..topics {
        let raw: Vec<f64> = (0..v).map(|_| rng.random_range(0.01..1.0)).collect();
        let sum: f64 = raw.iter().sum();
        phi.extend(raw.iter().map(|x| x / sum));
    }
    TopicModel::from_phi(vocab, LdaParams::with_topics(topics, 0), phi).unwrap()
}

/// A valid timeline: non-decreasing dates, consecutive ordinals, no mention
/// used twice.
pub fn random_timeline(rng: &mut ChaCha8Rng, target: &str) -> Timeline {
    let mut dates: Vec<CalendarValue> = (0..rng.random_range(0..6)).map(|_| date(DATES.choose(rng).unwrap())).collect();
    dates.sort();
    let mut used = BTreeSet::new();
    let mut entries = Vec::new();
    for d in dates {
        let mut mentions = Vec::new();
        for _ in 0..rng.random_range(1..4) {
            let doc = ["a", "doc-1", "x-y-z"].choose(rng).unwrap();
            let first = rng.random_range(0..6);
            let m = MentionRef::new(*doc, rng.random_range(0..4), TokenSpan::new(first, first + rng.random_range(0..2)));
            if used.insert(m.clone()) {
                mentions.push(m);
            }
        }
        if mentions.is_empty() {
            continue;
        }
        entries.push(TimelineEntry { ordinal: entries.len() as u32 + 1, date: d, mentions });
    }
    Timeline { target: target.to_string(), entries }
}

/// Normalized edge used by the closure oracle: 0 BEFORE, 1 SIMULTANEOUS,
/// 2 IS_INCLUDED.
pub type Edge = (usize, usize, u8);

/// Naive closure: apply every composition rule to every node triple until
/// nothing changes.
pub fn closure_oracle(n: usize, input: &[Edge]) -> BTreeSet<Edge> {
    const B: u8 = 0;
    const S: u8 = 1;
    const I: u8 = 2;
    let compose = |r1: u8, r2: u8| -> Option<u8> {
        match (r1, r2) {
            (S, r) | (r, S) => Some(r),
            (B, B) => Some(B),
            (I, I) => Some(I),
            _ => None,
        }
    };
    let mut rel = vec![[false; 3]; n * n];
    for &(a, b, r) in input {
        rel[a * n + b][r as usize] = true;
    }
    loop {
        let mut changed = false;
        for a in 0..n {
            for b in 0..n {
                if rel[a * n + b][S as usize] && !rel[b * n + a][S as usize] && a != b {
                    rel[b * n + a][S as usize] = true;
                    changed = true;
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for r1 in 0..3u8 {
                        if !rel[a * n + b][r1 as usize] {
                            continue;
                        }
                        for r2 in 0..3u8 {
                            if !rel[b * n + c][r2 as usize] {
                                continue;
                            }
                            let Some(r) = compose(r1, r2) else { continue };
                            if a == c && r != B {
                                continue;
                            }
                            if !rel[a * n + c][r as usize] {
                                rel[a * n + c][r as usize] = true;
                                changed = true;
                            }
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            for r in 0..3u8 {
                if rel[a * n + b][r as usize] {
                    out.insert((a, b, r));
                }
            }
        }
    }
    out
}

/// A one-sentence document with events `e1..=en` and the given links, whose
/// endpoints index `e1..=en` followed by the DCT.
pub fn event_doc(n: usize, links: &[(usize, usize, RelationType)]) -> AnnotatedDocument {
    let mut ids: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    ids.push(DCT_ID.to_string());
    let doc = AnnotatedDocument {
        doc_id: "g".into(),
        dct: date("2015-01-05"),
        sentences: vec![Sentence {
            index: 0,
            tokens: (0..n.max(1) as u32).map(|i| Token(i, format!("w{i}"))).collect(),
        }],
        events: (0..n)
            .map(|i| EventMention {
                event_id: ids[i].clone(),
                sentence_index: 0,
                token_span: TokenSpan::single(i as u32),
                head_lemma: "go".into(),
                pos: PartOfSpeech::Verb,
                arguments: Vec::new(),
            })
            .collect(),
        timexes: Vec::new(),
        tlinks: links
            .iter()
            .enumerate()
            .map(|(i, &(a, b, relation))| TemporalLink {
                link_id: format!("l{}", i + 1),
                source_id: ids[a].clone(),
                target_id: ids[b].clone(),
                relation,
            })
            .collect(),
        entities: Vec::new(),
        coref_chains: Vec::new(),
    };
    validate(&doc).expect("invalid link graph");
    doc
}

/// The document's links as oracle edges over `ids`.
pub fn oracle_input(ids: &[String], links: &[TemporalLink]) -> Vec<Edge> {
    let index = |id: &str| ids.iter().position(|x| x == id).unwrap();
    links
        .iter()
        .map(|l| {
            let (a, b) = (index(&l.source_id), index(&l.target_id));
            match l.relation {
                RelationType::Before => (a, b, 0),
                RelationType::After => (b, a, 0),
                RelationType::Simultaneous => (a, b, 1),
                RelationType::IsIncluded => (a, b, 2),
                RelationType::Includes => (b, a, 2),
            }
        })
        .collect()
}

/// The closed graph's relations as oracle edges.
pub fn closed_as_edges(graph: &TemporalGraph) -> BTreeSet<Edge> {
    let ids = graph.node_ids();
    let index = |id: &str| ids.iter().position(|x| x == id).unwrap();
    close(graph)
        .relations()
        .map(|(a, b, r)| {
            let code = match r {
                Relation::Before => 0,
                Relation::Simultaneous => 1,
                Relation::IsIncluded => 2,
            };
            (index(a), index(b), code)
        })
        .collect()
}
