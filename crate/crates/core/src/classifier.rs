//! Positive/negative matched-set scoring.
//!
//! For a class `c`, the positive sets are the features whose most probable
//! class is `c` and the negative sets are all others. A set is matched when
//! at least `match_threshold` of its words occur among the document's
//! keywords. The class score is
//!
//! ```text
//! 100 * matched_positive / positive + 100 * unmatched_negative / negative + prior
//! ```
//!
//! with the positive term 0 when there are no positive sets and the
//! negative term 100 when there are no negative sets.

use alloc::string::String;
use alloc::vec::Vec;

use crate::model::{ClassLabel, FeatureSet, ProbabilityTable};
use crate::textprep::{extract_keywords, KeywordSet, RawDocument, StopwordList};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ClassScore {
    pub label: ClassLabel,
    /// Sets whose argmax class is this class.
    pub pval: usize,
    /// Sets whose argmax class is another class.
    pub nval: usize,
    /// Matched positive sets.
    pub p: usize,
    /// Unmatched negative sets.
    pub n: usize,
    pub prior: f64,
    pub score: f64,
}

impl ClassScore {
    /// Evaluates the score formula on raw counts.
    pub fn from_counts(
        label: ClassLabel,
        p: usize,
        pval: usize,
        n: usize,
        nval: usize,
        prior: f64,
    ) -> Self {
        let score = Self::positive_term(p, pval) + Self::negative_term(n, nval) + prior;
        ClassScore {
            label,
            pval,
            nval,
            p,
            n,
            prior,
            score,
        }
    }

    fn positive_term(p: usize, pval: usize) -> f64 {
        if pval == 0 {
            0.0
        } else {
            (p * 100) as f64 / pval as f64
        }
    }

    fn negative_term(n: usize, nval: usize) -> f64 {
        if nval == 0 {
            100.0
        } else {
            (n * 100) as f64 / nval as f64
        }
    }

    pub fn positive_percent(&self) -> f64 {
        Self::positive_term(self.p, self.pval)
    }

    pub fn negative_percent(&self) -> f64 {
        Self::negative_term(self.n, self.nval)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub label: ClassLabel,
    /// One score per model class, in model order.
    pub scores: Vec<ClassScore>,
}

impl Prediction {
    /// Picks the highest score; the earliest class wins ties.
    pub fn from_scores(scores: Vec<ClassScore>) -> Result<Self> {
        let mut best: Option<&ClassScore> = None;
        for s in &scores {
            if best.is_none_or(|b| s.score > b.score) {
                best = Some(s);
            }
        }
        let label = best
            .ok_or_else(|| Error::InvalidModel("no classes to score".into()))?
            .label
            .clone();
        Ok(Prediction { label, scores })
    }

    pub fn score_of(&self, label: &str) -> Option<&ClassScore> {
        self.scores.iter().find(|s| s.label.as_str() == label)
    }
}

/// Fraction of `set_items` present in `keywords`.
pub fn match_fraction(set_items: &[String], keywords: &KeywordSet) -> f64 {
    if set_items.is_empty() {
        return 0.0;
    }
    let hits = set_items.iter().filter(|w| keywords.contains(w)).count();
    hits as f64 / set_items.len() as f64
}

pub fn is_matched(set: &FeatureSet, keywords: &KeywordSet, threshold: f64) -> bool {
    match_fraction(&set.items, keywords) >= threshold
}

fn matched_flags(table: &ProbabilityTable, keywords: &KeywordSet) -> Vec<bool> {
    let threshold = table.config().match_threshold;
    table
        .features()
        .iter()
        .map(|f| is_matched(f, keywords, threshold))
        .collect()
}

fn score_index(table: &ProbabilityTable, class: usize, matched: &[bool]) -> ClassScore {
    let (mut pval, mut nval, mut p, mut n) = (0, 0, 0, 0);
    for (f, &hit) in table.features().iter().zip(matched) {
        if f.argmax == class {
            pval += 1;
            p += hit as usize;
        } else {
            nval += 1;
            n += !hit as usize;
        }
    }
    ClassScore::from_counts(
        table.classes()[class].clone(),
        p,
        pval,
        n,
        nval,
        table.priors()[class],
    )
}

/// Scores one class.
pub fn score_class(
    label: &str,
    table: &ProbabilityTable,
    keywords: &KeywordSet,
) -> Result<ClassScore> {
    let class = table
        .class_index(label)
        .ok_or_else(|| Error::UnknownClass(label.into()))?;
    Ok(score_index(table, class, &matched_flags(table, keywords)))
}

/// Scores every class and returns the best one.
pub fn classify(keywords: &KeywordSet, table: &ProbabilityTable) -> Result<Prediction> {
    if table.features().is_empty() {
        return Err(Error::NoFeatureSets);
    }
    let matched = matched_flags(table, keywords);
    let scores = (0..table.classes().len())
        .map(|c| score_index(table, c, &matched))
        .collect();
    Prediction::from_scores(scores)
}

/// Extracts keywords with the model's `min_doc_freq`, then classifies.
pub fn classify_document(
    doc: &RawDocument,
    table: &ProbabilityTable,
    stops: &StopwordList,
) -> Result<Prediction> {
    let keywords = extract_keywords(doc, stops, table.config().min_doc_freq);
    classify(&keywords, table)
}
