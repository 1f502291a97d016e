//! Micro-averaged precision, recall and F1 of predicted timelines against
//! gold timelines.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::corpus::CalendarValue;
use crate::timeline::{MentionRef, Timeline};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScoreError {
    #[error("timeline for `{target}` lists mention {mention} more than once")]
    DuplicateMention { target: String, mention: String },
}

/// What counts as a matching unit.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum MatchMode {
    /// A (mention, date) pair.
    #[default]
    Anchored,
    /// Each mention, plus the relative order of every mention pair
    /// (earlier entry, later entry, or same entry). Dates are ignored.
    OrderOnly,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub tp: u64,
    pub fp: u64,
    pub fn_: u64,
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

impl Counts {
    pub fn precision(&self) -> f64 {
        ratio(self.tp, self.tp + self.fp)
    }

    pub fn recall(&self) -> f64 {
        ratio(self.tp, self.tp + self.fn_)
    }

    pub fn f1(&self) -> f64 {
        let (p, r) = (self.precision(), self.recall());
        if p + r == 0.0 {
            0.0
        } else {
            2.0 * p * r / (p + r)
        }
    }
}

impl std::ops::AddAssign for Counts {
    fn add_assign(&mut self, other: Counts) {
        self.tp += other.tp;
        self.fp += other.fp;
        self.fn_ += other.fn_;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetScore {
    pub corpus: String,
    pub target: String,
    pub counts: Counts,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScoreReport {
    pub per_target: Vec<TargetScore>,
    /// Pooled counts per corpus, in the order corpora were added.
    pub per_corpus: Vec<(String, Counts)>,
    pub total: Counts,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Unit<'a> {
    Dated(&'a MentionRef, CalendarValue),
    Mention(&'a MentionRef),
    // mentions in location order; -1, 0, 1 for earlier, same entry, later
    Pair(&'a MentionRef, &'a MentionRef, i8),
}

fn units(timeline: &Timeline, mode: MatchMode) -> Result<BTreeSet<Unit<'_>>, ScoreError> {
    if let Some(m) = timeline.duplicate_mention() {
        return Err(ScoreError::DuplicateMention {
            target: timeline.target.clone(),
            mention: m.to_string(),
        });
    }
    let mut out = BTreeSet::new();
    match mode {
        MatchMode::Anchored => {
            out.extend(timeline.mentions().map(|(e, m)| Unit::Dated(m, e.date)));
        }
        MatchMode::OrderOnly => {
            let placed: Vec<(usize, &MentionRef)> = timeline
                .entries
                .iter()
                .enumerate()
                .flat_map(|(i, e)| e.mentions.iter().map(move |m| (i, m)))
                .collect();
            for (i, &(pos_a, a)) in placed.iter().enumerate() {
                out.insert(Unit::Mention(a));
                for &(pos_b, b) in &placed[i + 1..] {
                    let order = pos_a.cmp(&pos_b) as i8;
                    out.insert(if a < b { Unit::Pair(a, b, order) } else { Unit::Pair(b, a, -order) });
                }
            }
        }
    }
    Ok(out)
}

/// Counts for one target. Either side may be absent, which scores as an
/// empty timeline.
pub fn score_target(
    pred: Option<&Timeline>,
    gold: Option<&Timeline>,
    mode: MatchMode,
) -> Result<Counts, ScoreError> {
    let pred = pred.map(|t| units(t, mode)).transpose()?.unwrap_or_default();
    let gold = gold.map(|t| units(t, mode)).transpose()?.unwrap_or_default();
    let tp = pred.intersection(&gold).count() as u64;
    Ok(Counts {
        tp,
        fp: pred.len() as u64 - tp,
        fn_: gold.len() as u64 - tp,
    })
}

impl ScoreReport {
    /// Scores one corpus, pairing timelines by target name, and pools the
    /// counts into the corpus and total rows.
    pub fn add_corpus(
        &mut self,
        name: &str,
        pred: &[Timeline],
        gold: &[Timeline],
        mode: MatchMode,
    ) -> Result<(), ScoreError> {
        let mut targets: BTreeMap<&str, (Option<&Timeline>, Option<&Timeline>)> = BTreeMap::new();
        for t in pred {
            targets.entry(&t.target).or_default().0 = Some(t);
        }
        for t in gold {
            targets.entry(&t.target).or_default().1 = Some(t);
        }
        let mut corpus = Counts::default();
        for (target, (p, g)) in targets {
            let counts = score_target(p, g, mode)?;
            corpus += counts;
            self.per_target.push(TargetScore {
                corpus: name.to_string(),
                target: target.to_string(),
                counts,
            });
        }
        match self.per_corpus.iter_mut().find(|(n, _)| n == name) {
            Some((_, c)) => *c += corpus,
            None => self.per_corpus.push((name.to_string(), corpus)),
        }
        self.total += corpus;
        Ok(())
    }
}

/// Scores a single corpus.
pub fn score(pred: &[Timeline], gold: &[Timeline], mode: MatchMode) -> Result<ScoreReport, ScoreError> {
    let mut report = ScoreReport::default();
    report.add_corpus("corpus", pred, gold, mode)?;
    Ok(report)
}

fn percent(x: f64) -> String {
    format!("{:.2}", 100.0 * x)
}

/// Fixed-width table with one column per corpus and a Total column, rows
/// P, R and F1 in percent. A report without corpora prints the header only.
pub fn report_table(report: &ScoreReport) -> String {
    let mut columns: Vec<(&str, Counts)> = report.per_corpus.iter().map(|(n, c)| (n.as_str(), *c)).collect();
    columns.push(("Total", report.total));
    let widths: Vec<usize> = columns.iter().map(|(n, _)| n.len().max(8)).collect();

    let mut out = String::new();
    let _ = write!(out, "{:<6}", "");
    for ((name, _), w) in columns.iter().zip(&widths) {
        let _ = write!(out, "  {name:>w$}");
    }
    out.push('\n');
    if report.per_corpus.is_empty() {
        return out;
    }
    let rows: [(&str, fn(&Counts) -> f64); 3] =
        [("P", Counts::precision), ("R", Counts::recall), ("F1", Counts::f1)];
    for (label, metric) in rows {
        let _ = write!(out, "{label:<6}");
        for ((_, counts), w) in columns.iter().zip(&widths) {
            let _ = write!(out, "  {:>w$}", percent(metric(counts)));
        }
        out.push('\n');
    }
    out
}

/// Tab-separated counts and rates: one row per target, then one per corpus
/// (target `*`), then the total (corpus and target `*`).
pub fn report_tsv(report: &ScoreReport) -> String {
    let mut out = String::from("corpus\ttarget\ttp\tfp\tfn\tprecision\trecall\tf1\n");
    let mut row = |corpus: &str, target: &str, c: &Counts| {
        let _ = writeln!(
            out,
            "{corpus}\t{target}\t{}\t{}\t{}\t{:.6}\t{:.6}\t{:.6}",
            c.tp,
            c.fp,
            c.fn_,
            c.precision(),
            c.recall(),
            c.f1()
        );
    };
    for t in &report.per_target {
        row(&t.corpus, &t.target, &t.counts);
    }
    for (name, c) in &report.per_corpus {
        row(name, "*", c);
    }
    row("*", "*", &report.total);
    out
}
