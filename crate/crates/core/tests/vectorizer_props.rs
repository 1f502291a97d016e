mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;

use common::{random_doc, rng, toy_model, DocShape};
use timeline_coref::corpus::EventMention;
use timeline_coref::vectorizer::{argument_nouns, vectorize, vectorize_nouns};

fn events(seed: u64) -> Vec<EventMention> {
    random_doc(&mut rng(seed), "d", DocShape { max_sentences: 4, max_events_per_sentence: 4, max_links: 0 }).events
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn components_are_sums_of_top_word_weights(seed in any::<u64>(), topics in 1usize..8) {
        let model = toy_model(&mut rng(seed ^ 1), topics);
        for event in events(seed) {
            let v = vectorize(&event, &model);
            prop_assert_eq!(v.values.len(), topics);
            for (t, &x) in v.values.iter().enumerate() {
                let oracle: f64 = argument_nouns(&event)
                    .iter()
                    .map(|n| model.word_weight(n, t).unwrap())
                    .sum();
                prop_assert!(x >= 0.0);
                prop_assert!((x - oracle).abs() <= 1e-12, "topic {}: {} vs {}", t, x, oracle);
            }
        }
    }

    #[test]
    fn argument_order_does_not_matter(seed in any::<u64>()) {
        let model = toy_model(&mut rng(seed ^ 2), 5);
        let mut r = rng(seed);
        for mut event in events(seed) {
            let before = vectorize(&event, &model).values;
            event.arguments.shuffle(&mut r);
            for arg in &mut event.arguments {
                arg.noun_tokens.shuffle(&mut r);
            }
            let after = vectorize(&event, &model).values;
            for (a, b) in before.iter().zip(&after) {
                prop_assert!((a - b).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn splitting_the_nouns_splits_the_vector(seed in any::<u64>(), cut in any::<prop::sample::Index>()) {
        let model = toy_model(&mut rng(seed ^ 3), 4);
        for event in events(seed) {
            let nouns = argument_nouns(&event);
            let at = cut.index(nouns.len() + 1);
            let whole = vectorize(&event, &model).values;
            let a = vectorize_nouns("a", &nouns[..at], &model).values;
            let b = vectorize_nouns("b", &nouns[at..], &model).values;
            for t in 0..whole.len() {
                prop_assert!((whole[t] - (a[t] + b[t])).abs() <= 1e-12);
            }
        }
    }
}
