mod common;

use proptest::prelude::*;

use common::{random_doc, rng, DocShape};
use timeline_coref::entity::{filter_events, TargetEntity};

fn targets() -> [TargetEntity; 3] {
    [
        TargetEntity::new("Acme"),
        TargetEntity::new("globex").with_aliases(["FIRM"]),
        TargetEntity::new("Initech"),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn selection_is_an_ordered_subset(seed in any::<u64>()) {
        let doc = random_doc(&mut rng(seed), "d", DocShape::default());
        let order: Vec<&str> = doc.events.iter().map(|e| e.event_id.as_str()).collect();
        for target in targets() {
            let picked = filter_events(&doc, &target);
            let positions: Vec<usize> =
                picked.iter().map(|id| order.iter().position(|e| e == id).expect("unknown event")).collect();
            prop_assert!(positions.windows(2).all(|w| w[0] < w[1]), "not in document order or duplicated");
        }
    }

    #[test]
    fn filtering_twice_changes_nothing(seed in any::<u64>()) {
        let doc = random_doc(&mut rng(seed), "d", DocShape::default());
        for target in targets() {
            let picked = filter_events(&doc, &target);
            let mut narrowed = doc.clone();
            narrowed.events.retain(|e| picked.contains(&e.event_id));
            narrowed.tlinks.clear();
            prop_assert_eq!(filter_events(&narrowed, &target), picked);
        }
    }

    #[test]
    fn dropping_coreference_can_only_shrink_the_selection(seed in any::<u64>()) {
        let doc = random_doc(&mut rng(seed), "d", DocShape::default());
        let mut bare = doc.clone();
        bare.coref_chains.clear();
        for target in targets() {
            let with = filter_events(&doc, &target);
            let without = filter_events(&bare, &target);
            prop_assert!(without.iter().all(|e| with.contains(e)));
        }
    }

    #[test]
    fn selection_is_exactly_the_sentences_naming_the_target(seed in any::<u64>()) {
        // generated mentions are single tokens, so a surface oracle suffices
        let mut doc = random_doc(&mut rng(seed), "d", DocShape::default());
        doc.coref_chains.clear();
        let target = TargetEntity::new("ACME");
        let sentences: Vec<u32> =
            doc.entities.iter().filter(|m| m.surface == "Acme").map(|m| m.sentence_index).collect();
        let expected: Vec<String> = doc
            .events
            .iter()
            .filter(|e| sentences.contains(&e.sentence_index))
            .map(|e| e.event_id.clone())
            .collect();
        prop_assert_eq!(filter_events(&doc, &target), expected);
    }
}
