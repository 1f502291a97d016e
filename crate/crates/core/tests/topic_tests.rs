mod common;

use std::collections::{HashMap, HashSet};

use rand::Rng;

use common::{fixture, rng};
use timeline_coref::cli::load_reference;
use timeline_coref::text::stopword_set;
use timeline_coref::topic::{build_vocabulary, load_model, save_model, train_lda, LdaParams, TOP_WORDS};

#[test]
fn vocabulary_matches_a_recount() {
    let mut r = rng(11);
    let stop: HashSet<String> = ["the", "of"].iter().map(|s| s.to_string()).collect();
    let corpus: Vec<Vec<String>> = (0..1000)
        .map(|_| {
            (0..r.random_range(0..30))
                .map(|_| {
                    // Zipf-ish: low ids are frequent
                    let id = (r.random_range(0.0f64..1.0).powi(3) * 400.0) as usize;
                    match id {
                        0 => "The".to_string(),
                        1 => "of".to_string(),
                        _ if id % 7 == 0 => format!("W{id}"),
                        _ => format!("w{id}"),
                    }
                })
                .collect()
        })
        .collect();
    let vocab = build_vocabulary(&corpus, 5, &stop).unwrap();

    let mut counts: HashMap<String, usize> = HashMap::new();
    let mut first_seen = Vec::new();
    for token in corpus.iter().flatten() {
        let word = token.to_lowercase();
        let c = counts.entry(word.clone()).or_default();
        if *c == 0 {
            first_seen.push(word);
        }
        *c += 1;
    }
    let expected: Vec<String> =
        first_seen.into_iter().filter(|w| counts[w] >= 5 && !stop.contains(w)).collect();
    assert!(expected.len() > 100);
    assert_eq!(vocab.words(), expected.as_slice());
    for (i, w) in expected.iter().enumerate() {
        assert_eq!(vocab.id(w), Some(i as u32));
    }
}

#[test]
fn reloaded_model_answers_every_query_identically() {
    let corpus = load_reference(&fixture("reference/reference.txt")).unwrap();
    let vocab = build_vocabulary(&corpus, 1, &stopword_set()).unwrap();
    let mut params = LdaParams::with_topics(10, 42);
    params.iterations = 60;
    let model = train_lda(&corpus, &vocab, &params).unwrap();
    let back = load_model(&save_model(&model)).unwrap();

    let mut nonzero = 0;
    for word in vocab.words().iter().map(String::as_str).chain(["zzz-unknown", ""]) {
        for topic in 0..10 {
            let w = model.word_weight(word, topic).unwrap();
            assert_eq!(w.to_bits(), back.word_weight(word, topic).unwrap().to_bits(), "{word} {topic}");
            nonzero += usize::from(w > 0.0);
        }
    }
    assert_eq!(nonzero, 10 * TOP_WORDS);
    assert!(model.word_weight("phones", 10).is_err());
}

#[test]
fn knowledge_base_is_the_top_word_truncation() {
    let corpus = load_reference(&fixture("reference/reference.txt")).unwrap();
    let vocab = build_vocabulary(&corpus, 1, &stopword_set()).unwrap();
    let mut params = LdaParams::with_topics(6, 3);
    params.iterations = 40;
    let model = train_lda(&corpus, &vocab, &params).unwrap();
    for topic in 0..6 {
        let row = model.phi_row(topic);
        assert!((row.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        assert!(row.iter().all(|&p| p >= 0.0));
        let top: HashSet<u32> = model.top_words(topic).iter().map(|&(id, _)| id).collect();
        assert_eq!(top.len(), TOP_WORDS.min(vocab.len()));
        let floor = model.top_words(topic).last().unwrap().1;
        for (id, word) in vocab.words().iter().enumerate() {
            let w = model.word_weight(word, topic).unwrap();
            if top.contains(&(id as u32)) {
                assert_eq!(w, row[id]);
            } else {
                assert_eq!(w, 0.0);
                assert!(row[id] <= floor);
            }
        }
    }
}
