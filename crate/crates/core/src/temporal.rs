//! Temporal-link navigation: closure of the TLINK graph and date anchoring
//! of events.
//!
//! Links are normalized to three relations (`AFTER` becomes a flipped
//! `BEFORE`, `INCLUDES` a flipped `IS_INCLUDED`) and closed under this
//! composition table, where `S` is `SIMULTANEOUS`:
//!
//! | first         | second        | derived       |
//! |---------------|---------------|---------------|
//! | BEFORE        | BEFORE        | BEFORE        |
//! | S             | any R         | R             |
//! | any R         | S             | R             |
//! | IS_INCLUDED   | IS_INCLUDED   | IS_INCLUDED   |
//!
//! Every other pair (notably `BEFORE` then `IS_INCLUDED`) derives nothing.
//! `S` is kept symmetric. Derived `S(x, x)` and `IS_INCLUDED(x, x)` are
//! discarded; a derived `BEFORE(x, x)` is kept and marks the graph
//! inconsistent.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::corpus::{AnnotatedDocument, CalendarValue, RelationType, DCT_ID};

/// A normalized temporal relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Before,
    Simultaneous,
    IsIncluded,
}

impl Relation {
    pub const ALL: [Relation; 3] = [Relation::Before, Relation::Simultaneous, Relation::IsIncluded];

    fn bit(self) -> u8 {
        match self {
            Relation::Before => 1,
            Relation::Simultaneous => 2,
            Relation::IsIncluded => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Before => "BEFORE",
            Relation::Simultaneous => "SIMULTANEOUS",
            Relation::IsIncluded => "IS_INCLUDED",
        }
    }

    /// Rewrites a TimeML relation between `source` and `target` as a
    /// normalized relation, flipping the endpoints for `AFTER`/`INCLUDES`.
    pub fn normalize(relation: RelationType) -> (Relation, bool) {
        match relation {
            RelationType::Before => (Relation::Before, false),
            RelationType::After => (Relation::Before, true),
            RelationType::Simultaneous => (Relation::Simultaneous, false),
            RelationType::IsIncluded => (Relation::IsIncluded, false),
            RelationType::Includes => (Relation::IsIncluded, true),
        }
    }

    /// Composition `first(a, b) ∘ second(b, c)`; `None` when nothing follows.
    pub fn compose(first: Relation, second: Relation) -> Option<Relation> {
        use Relation::*;
        match (first, second) {
            (Simultaneous, r) | (r, Simultaneous) => Some(r),
            (Before, Before) => Some(Before),
            (IsIncluded, IsIncluded) => Some(IsIncluded),
            _ => None,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Event,
    Timex(CalendarValue),
    Dct(CalendarValue),
}

impl NodeKind {
    pub fn value(&self) -> Option<CalendarValue> {
        match self {
            NodeKind::Event => None,
            NodeKind::Timex(v) | NodeKind::Dct(v) => Some(*v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphStatus {
    Consistent,
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphLink {
    pub link_id: String,
    pub source: usize,
    pub target: usize,
    pub relation: Relation,
}

/// Temporal nodes of one document with an `n × n` relation table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalGraph {
    ids: Vec<String>,
    kinds: Vec<NodeKind>,
    index: HashMap<String, usize>,
    links: Vec<GraphLink>,
    table: Vec<u8>,
    closed: bool,
    status: GraphStatus,
}

impl TemporalGraph {
    fn empty_like(&self) -> Self {
        Self {
            links: Vec::new(),
            table: vec![0; self.table.len()],
            closed: true,
            status: GraphStatus::Consistent,
            ..self.clone()
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn node_ids(&self) -> &[String] {
        &self.ids
    }

    pub fn node_kind(&self, id: &str) -> Option<NodeKind> {
        self.index.get(id).map(|&i| self.kinds[i])
    }

    pub fn links(&self) -> &[GraphLink] {
        &self.links
    }

    pub fn status(&self) -> GraphStatus {
        self.status
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    fn cell(&self, a: usize, b: usize) -> u8 {
        self.table[a * self.ids.len() + b]
    }

    pub fn holds(&self, source: &str, target: &str, relation: Relation) -> bool {
        match (self.index.get(source), self.index.get(target)) {
            (Some(&a), Some(&b)) => self.cell(a, b) & relation.bit() != 0,
            _ => false,
        }
    }

    /// Every relation currently in the table as `(source, target, relation)`.
    pub fn relations(&self) -> impl Iterator<Item = (&str, &str, Relation)> + '_ {
        let n = self.ids.len();
        (0..n).flat_map(move |a| {
            (0..n).flat_map(move |b| {
                Relation::ALL
                    .into_iter()
                    .filter(move |r| self.cell(a, b) & r.bit() != 0)
                    .map(move |r| (self.ids[a].as_str(), self.ids[b].as_str(), r))
            })
        })
    }

    /// Sets `relation(a, b)` and queues it for propagation unless it is
    /// already present or a discarded self-loop.
    fn insert(&mut self, a: usize, b: usize, relation: Relation, queue: &mut Vec<(usize, usize, Relation)>) {
        if a == b && relation != Relation::Before {
            return;
        }
        let n = self.ids.len();
        let cell = &mut self.table[a * n + b];
        if *cell & relation.bit() == 0 {
            *cell |= relation.bit();
            queue.push((a, b, relation));
        }
    }

    fn propagate(&mut self, mut queue: Vec<(usize, usize, Relation)>) {
        let n = self.ids.len();
        while let Some((a, b, r)) = queue.pop() {
            if r == Relation::Simultaneous {
                self.insert(b, a, r, &mut queue);
            }
            for c in 0..n {
                let out = self.cell(b, c);
                for r2 in Relation::ALL {
                    if out & r2.bit() != 0 {
                        if let Some(r3) = Relation::compose(r, r2) {
                            self.insert(a, c, r3, &mut queue);
                        }
                    }
                }
                let inc = self.cell(c, a);
                for r0 in Relation::ALL {
                    if inc & r0.bit() != 0 {
                        if let Some(r3) = Relation::compose(r0, r) {
                            self.insert(c, b, r3, &mut queue);
                        }
                    }
                }
            }
        }
    }

    fn compute_status(&self) -> GraphStatus {
        let n = self.ids.len();
        let before = Relation::Before.bit();
        let cyclic = (0..n).any(|a| {
            (a..n).any(|b| self.cell(a, b) & before != 0 && self.cell(b, a) & before != 0)
        });
        if cyclic {
            GraphStatus::Inconsistent
        } else {
            GraphStatus::Consistent
        }
    }

    /// Line-oriented dump, one `source<TAB>RELATION<TAB>target` per line.
    pub fn dump(&self) -> String {
        let mut triples: Vec<_> = self.relations().collect();
        triples.sort();
        let mut out = String::new();
        for (a, b, r) in triples {
            let _ = writeln!(out, "{a}\t{r}\t{b}");
        }
        out
    }
}

/// One node per event and TIMEX3 plus the DCT node; edges are the
/// document's links after normalization. The table holds the input edges only.
pub fn build_graph(doc: &AnnotatedDocument) -> TemporalGraph {
    let mut ids = vec![DCT_ID.to_string()];
    let mut kinds = vec![NodeKind::Dct(doc.dct)];
    for event in &doc.events {
        ids.push(event.event_id.clone());
        kinds.push(NodeKind::Event);
    }
    for timex in &doc.timexes {
        ids.push(timex.timex_id.clone());
        kinds.push(NodeKind::Timex(timex.value));
    }
    let index: HashMap<String, usize> =
        ids.iter().enumerate().map(|(i, id)| (id.clone(), i)).collect();
    let n = ids.len();
    let mut graph = TemporalGraph {
        ids,
        kinds,
        index,
        links: Vec::new(),
        table: vec![0; n * n],
        closed: false,
        status: GraphStatus::Consistent,
    };
    for link in &doc.tlinks {
        let (Some(&s), Some(&t)) = (graph.index.get(&link.source_id), graph.index.get(&link.target_id))
        else {
            continue;
        };
        let (relation, flip) = Relation::normalize(link.relation);
        let (source, target) = if flip { (t, s) } else { (s, t) };
        graph.table[source * n + target] |= relation.bit();
        graph.links.push(GraphLink { link_id: link.link_id.clone(), source, target, relation });
    }
    graph.closed = graph.links.is_empty();
    graph.status = graph.compute_status();
    graph
}

/// Least fixpoint of the composition table over the current relations.
pub fn close(graph: &TemporalGraph) -> TemporalGraph {
    let mut closed = graph.clone();
    let n = closed.ids.len();
    let mut queue = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for r in Relation::ALL {
                if closed.cell(a, b) & r.bit() != 0 {
                    queue.push((a, b, r));
                }
            }
        }
    }
    closed.propagate(queue);
    closed.closed = true;
    closed.status = closed.compute_status();
    closed
}

/// Compares ids so that embedded numbers sort numerically (`l2` < `l10`).
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for ((da, xa), (db, xb)) in ca.iter().zip(&cb) {
        let ord = if *da && *db {
            let (ta, tb) = (xa.trim_start_matches('0'), xb.trim_start_matches('0'));
            ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb))
        } else {
            xa.cmp(xb)
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

/// Re-adds links one at a time in link-id order, dropping every link whose
/// addition would make the closure inconsistent. Returns the closed,
/// consistent graph and the ids of the dropped links.
pub fn repair(graph: &TemporalGraph) -> (TemporalGraph, Vec<String>) {
    let mut order: Vec<&GraphLink> = graph.links.iter().collect();
    order.sort_by(|a, b| natural_cmp(&a.link_id, &b.link_id));
    let mut current = graph.empty_like();
    let mut dropped = Vec::new();
    for link in order {
        let mut next = current.clone();
        let mut queue = Vec::new();
        next.insert(link.source, link.target, link.relation, &mut queue);
        next.propagate(queue);
        if next.compute_status() == GraphStatus::Consistent {
            next.links.push(link.clone());
            current = next;
        } else {
            dropped.push(link.link_id.clone());
        }
    }
    (current, dropped)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AnchorStatus {
    Anchored,
    OrderedOnly,
    Unresolved,
}

/// The date assigned to an event. A value is present exactly when the status
/// is [`AnchorStatus::Anchored`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimeAnchor {
    event_id: String,
    value: Option<CalendarValue>,
    status: AnchorStatus,
}

impl TimeAnchor {
    pub fn anchored(event_id: impl Into<String>, value: CalendarValue) -> Self {
        Self { event_id: event_id.into(), value: Some(value), status: AnchorStatus::Anchored }
    }

    pub fn ordered_only(event_id: impl Into<String>) -> Self {
        Self { event_id: event_id.into(), value: None, status: AnchorStatus::OrderedOnly }
    }

    pub fn unresolved(event_id: impl Into<String>) -> Self {
        Self { event_id: event_id.into(), value: None, status: AnchorStatus::Unresolved }
    }

    pub fn event_id(&self) -> &str {
        &self.event_id
    }

    pub fn value(&self) -> Option<CalendarValue> {
        self.value
    }

    pub fn status(&self) -> AnchorStatus {
        self.status
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchorConflict {
    pub event_id: String,
    pub candidates: Vec<CalendarValue>,
    pub chosen: CalendarValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anchoring {
    pub anchors: BTreeMap<String, TimeAnchor>,
    pub dropped_links: Vec<String>,
    pub conflicts: Vec<AnchorConflict>,
}

/// Assigns every event of `doc` a [`TimeAnchor`].
///
/// The graph is closed first if needed; an inconsistent graph is repaired by
/// [`repair`]. An event `SIMULTANEOUS` with or `IS_INCLUDED` in a timex (or
/// the DCT) takes that timex's value; with several candidates the finest
/// granularity wins, then the earliest value. Events related only by
/// `BEFORE` to anchored nodes are `ORDERED_ONLY`.
pub fn anchor_events(doc: &AnnotatedDocument, graph: &TemporalGraph) -> Anchoring {
    let mut graph = if graph.closed { graph.clone() } else { close(graph) };
    let mut dropped_links = Vec::new();
    if graph.status == GraphStatus::Inconsistent {
        let (repaired, dropped) = repair(&graph);
        log::warn!(
            "{}: inconsistent temporal links, dropped {}",
            doc.doc_id,
            dropped.join(", ")
        );
        graph = repaired;
        dropped_links = dropped;
    }

    let n = graph.len();
    let anchor_bits = Relation::Simultaneous.bit() | Relation::IsIncluded.bit();
    let mut values: Vec<Option<CalendarValue>> = graph.kinds.iter().map(NodeKind::value).collect();
    let mut conflicts = Vec::new();
    for e in 0..n {
        if graph.kinds[e] != NodeKind::Event {
            continue;
        }
        let mut candidates: Vec<CalendarValue> = (0..n)
            .filter(|&t| graph.cell(e, t) & anchor_bits != 0)
            .filter_map(|t| graph.kinds[t].value())
            .collect();
        candidates.sort();
        candidates.dedup();
        let Some(&chosen) = candidates
            .iter()
            .min_by(|a, b| b.granularity().cmp(&a.granularity()).then_with(|| a.cmp(b)))
        else {
            continue;
        };
        if candidates.len() > 1 {
            log::warn!(
                "{}: event {} anchored to {} values, chose {chosen}",
                doc.doc_id,
                graph.ids[e],
                candidates.len()
            );
            conflicts.push(AnchorConflict {
                event_id: graph.ids[e].clone(),
                candidates,
                chosen,
            });
        }
        values[e] = Some(chosen);
    }

    let before = Relation::Before.bit();
    let mut anchors = BTreeMap::new();
    for event in &doc.events {
        let Some(&e) = graph.index.get(&event.event_id) else { continue };
        let anchor = match values[e] {
            Some(v) => TimeAnchor::anchored(&event.event_id, v),
            None => {
                let ordered = (0..n).any(|x| {
                    values[x].is_some() && (graph.cell(e, x) & before != 0 || graph.cell(x, e) & before != 0)
                });
                if ordered {
                    TimeAnchor::ordered_only(&event.event_id)
                } else {
                    TimeAnchor::unresolved(&event.event_id)
                }
            }
        };
        anchors.insert(event.event_id.clone(), anchor);
    }
    Anchoring { anchors, dropped_links, conflicts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Sentence, TemporalExpression, TemporalLink, Token, TokenSpan, EventMention, PartOfSpeech};

    pub(crate) fn doc(events: &[&str], timexes: &[(&str, &str)], links: &[(&str, &str, RelationType, &str)]) -> AnnotatedDocument {
        let n = events.len() + timexes.len();
        let tokens = (0..n.max(1) as u32).map(|i| Token(i, format!("w{i}"))).collect();
        AnnotatedDocument {
            doc_id: "d".into(),
            dct: CalendarValue::parse("2015-06-01").unwrap(),
            sentences: vec![Sentence { index: 0, tokens }],
            events: events
                .iter()
                .enumerate()
                .map(|(i, id)| EventMention {
                    event_id: id.to_string(),
                    sentence_index: 0,
                    token_span: TokenSpan::single(i as u32),
                    head_lemma: "x".into(),
                    pos: PartOfSpeech::Verb,
                    arguments: vec![],
                })
                .collect(),
            timexes: timexes
                .iter()
                .enumerate()
                .map(|(i, (id, v))| TemporalExpression {
                    timex_id: id.to_string(),
                    sentence_index: 0,
                    token_span: TokenSpan::single((events.len() + i) as u32),
                    value: CalendarValue::parse(v).unwrap(),
                })
                .collect(),
            tlinks: links
                .iter()
                .map(|(s, t, r, id)| TemporalLink {
                    link_id: id.to_string(),
                    source_id: s.to_string(),
                    target_id: t.to_string(),
                    relation: *r,
                })
                .collect(),
            entities: vec![],
            coref_chains: vec![],
        }
    }

    use RelationType::*;

    #[test]
    fn no_links_means_empty_closure() {
        let g = close(&build_graph(&doc(&["e1", "e2"], &[], &[])));
        assert_eq!(g.len(), 3);
        assert_eq!(g.relations().count(), 0);
    }

    #[test]
    fn after_and_includes_are_flipped() {
        let g = build_graph(&doc(&["e1", "e2"], &[("t1", "2015")], &[("e1", "e2", After, "l1"), ("t1", "e1", Includes, "l2")]));
        assert!(g.holds("e2", "e1", Relation::Before));
        assert!(!g.holds("e1", "e2", Relation::Before));
        assert!(g.holds("e1", "t1", Relation::IsIncluded));
    }

    #[test]
    fn before_chains_compose() {
        let g = close(&build_graph(&doc(&["e1", "e2", "e3"], &[], &[("e1", "e2", Before, "l1"), ("e2", "e3", Before, "l2")])));
        assert!(g.holds("e1", "e3", Relation::Before));
        assert_eq!(g.status(), GraphStatus::Consistent);
    }

    #[test]
    fn simultaneity_through_a_timex() {
        let g = close(&build_graph(&doc(&["e1", "e2"], &[("t1", "2015-01-05")], &[("e1", "t1", Simultaneous, "l1"), ("e2", "t1", Simultaneous, "l2")])));
        assert!(g.holds("e1", "e2", Relation::Simultaneous));
        assert!(g.holds("e2", "e1", Relation::Simultaneous));
        assert!(!g.holds("e1", "e1", Relation::Simultaneous));
    }

    #[test]
    fn before_then_included_derives_nothing() {
        let g = close(&build_graph(&doc(&["e1", "e2"], &[("t1", "2015")], &[("e1", "e2", Before, "l1"), ("e2", "t1", IsIncluded, "l2")])));
        assert!(!g.holds("e1", "t1", Relation::Before));
        assert!(!g.holds("e1", "t1", Relation::IsIncluded));
    }

    #[test]
    fn close_is_idempotent() {
        let d = doc(&["e1", "e2", "e3"], &[("t1", "2015")], &[("e1", "e2", Before, "l1"), ("e2", "t1", Simultaneous, "l2"), ("e3", "e2", IsIncluded, "l3")]);
        let once = close(&build_graph(&d));
        assert_eq!(close(&once), once);
    }

    #[test]
    fn before_cycle_is_inconsistent() {
        let d = doc(&["e1", "e2"], &[], &[("e1", "e2", Before, "l1"), ("e2", "e1", Before, "l2")]);
        assert_eq!(build_graph(&d).status(), GraphStatus::Inconsistent);
        assert_eq!(close(&build_graph(&d)).status(), GraphStatus::Inconsistent);
    }

    #[test]
    fn repair_drops_later_links_in_natural_order() {
        let d = doc(
            &["e1", "e2", "e3"],
            &[],
            &[("e3", "e1", Before, "l10"), ("e1", "e2", Before, "l1"), ("e2", "e3", Before, "l2")],
        );
        let (g, dropped) = repair(&build_graph(&d));
        assert_eq!(dropped, ["l10"]);
        assert_eq!(g.status(), GraphStatus::Consistent);
        assert!(g.holds("e1", "e3", Relation::Before));
    }

    #[test]
    fn natural_ordering_of_ids() {
        assert_eq!(natural_cmp("l2", "l10"), Ordering::Less);
        assert_eq!(natural_cmp("l10", "l10"), Ordering::Equal);
        assert_eq!(natural_cmp("a", "b"), Ordering::Less);
        assert_eq!(natural_cmp("l02", "l2"), Ordering::Less);
    }

    #[test]
    fn direct_anchor() {
        let d = doc(&["e1"], &[("t1", "2015-01-05")], &[("e1", "t1", Simultaneous, "l1")]);
        let a = anchor_events(&d, &build_graph(&d));
        assert_eq!(a.anchors["e1"], TimeAnchor::anchored("e1", CalendarValue::parse("2015-01-05").unwrap()));
    }

    #[test]
    fn ordered_only_through_before() {
        let d = doc(&["e1", "e2"], &[("t1", "2015-01-05")], &[("e1", "e2", Before, "l1"), ("e2", "t1", Simultaneous, "l2")]);
        let a = anchor_events(&d, &close(&build_graph(&d)));
        assert_eq!(a.anchors["e1"].status(), AnchorStatus::OrderedOnly);
        assert_eq!(a.anchors["e1"].value(), None);
        assert_eq!(a.anchors["e2"].status(), AnchorStatus::Anchored);
    }

    #[test]
    fn unlinked_event_is_unresolved() {
        let d = doc(&["e1"], &[], &[]);
        assert_eq!(anchor_events(&d, &build_graph(&d)).anchors["e1"].status(), AnchorStatus::Unresolved);
    }

    #[test]
    fn dct_anchors_like_a_timex() {
        let d = doc(&["e1", "e2"], &[], &[("e1", DCT_ID, IsIncluded, "l1"), ("e2", DCT_ID, Before, "l2")]);
        let a = anchor_events(&d, &build_graph(&d));
        assert_eq!(a.anchors["e1"].value(), Some(d.dct));
        assert_eq!(a.anchors["e2"].status(), AnchorStatus::OrderedOnly);
    }

    #[test]
    fn conflicting_anchors_prefer_finest_then_earliest() {
        let d = doc(
            &["e1", "e2"],
            &[("t1", "2015-03"), ("t2", "2015-03-09"), ("t3", "2015-03-02")],
            &[
                ("e1", "t1", IsIncluded, "l1"),
                ("e1", "t2", Simultaneous, "l2"),
                ("e1", "t3", Simultaneous, "l3"),
                ("e2", "t1", IsIncluded, "l4"),
            ],
        );
        let a = anchor_events(&d, &build_graph(&d));
        assert_eq!(a.anchors["e1"].value(), CalendarValue::day(2015, 3, 2));
        assert_eq!(a.anchors["e2"].value(), CalendarValue::month(2015, 3));
        assert_eq!(a.conflicts.len(), 1);
        assert_eq!(a.conflicts[0].candidates.len(), 3);
    }

    #[test]
    fn inconsistent_graph_is_repaired_before_anchoring() {
        let d = doc(
            &["e1", "e2"],
            &[("t1", "2015-01-05")],
            &[("e1", "t1", Simultaneous, "l1"), ("e2", "e1", Before, "l2"), ("e1", "e2", Before, "l3")],
        );
        let a = anchor_events(&d, &build_graph(&d));
        assert_eq!(a.dropped_links, ["l3"]);
        assert_eq!(a.anchors["e1"].status(), AnchorStatus::Anchored);
        assert_eq!(a.anchors["e2"].status(), AnchorStatus::OrderedOnly);
    }

    #[test]
    fn dump_lists_one_triple_per_line() {
        let d = doc(&["e1", "e2"], &[], &[("e1", "e2", After, "l1")]);
        assert_eq!(build_graph(&d).dump(), "e2\tBEFORE\te1\n");
    }
}
