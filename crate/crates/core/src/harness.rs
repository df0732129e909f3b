//! Labeled corpora, stratified splits, training and accuracy reports.

use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classifier::classify_document;
use crate::itemset::MinSupport;
use crate::model::{
    build_probability_table, mine_class_features, ClassLabel, ModelConfig, ProbabilityTable,
};
use crate::num::round_half_up;
use crate::textprep::{extract_keywords, KeywordSet, RawDocument, StopwordList};
use crate::{Error, Result};

/// Labeled documents. `classes` is the sorted list of distinct labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    docs: Vec<RawDocument>,
    classes: Vec<ClassLabel>,
}

impl Corpus {
    pub fn new(docs: Vec<RawDocument>) -> Result<Self> {
        let mut classes = Vec::new();
        for d in &docs {
            match d.label.as_deref() {
                Some(l) if !l.is_empty() => classes.push(ClassLabel::new(l)?),
                _ => return Err(Error::EmptyLabel),
            }
        }
        classes.sort();
        classes.dedup();
        Ok(Corpus { docs, classes })
    }

    pub fn docs(&self) -> &[RawDocument] {
        &self.docs
    }

    pub fn classes(&self) -> &[ClassLabel] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    /// Documents of one class, in corpus order.
    pub fn docs_of<'a>(&'a self, label: &'a str) -> impl Iterator<Item = &'a RawDocument> + 'a {
        self.docs
            .iter()
            .filter(move |d| d.label.as_deref() == Some(label))
    }
}

/// Number of training documents taken from a class of `size` documents.
pub fn train_count(size: usize, train_fraction: f64) -> usize {
    round_half_up(train_fraction * size as f64).clamp(1, size.saturating_sub(1).max(1))
}

fn class_seed(seed: u64, label: &str) -> u64 {
    // FNV-1a over the label, then a splitmix64 finalizer
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    let mut z = h ^ seed.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn check_train_fraction(f: f64) -> Result<()> {
    if f > 0.0 && f < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidFraction {
            name: "train_fraction",
            range: "(0, 1)",
            value: f,
        })
    }
}

/// Stratified split. Each class contributes `train_count` documents to the
/// training side, chosen by a permutation seeded from `seed` and the class
/// label. Both sides keep corpus order.
pub fn split_corpus(corpus: &Corpus, train_fraction: f64, seed: u64) -> Result<(Corpus, Corpus)> {
    check_train_fraction(train_fraction)?;
    let mut in_train = alloc::vec![false; corpus.docs.len()];
    for class in &corpus.classes {
        let members: Vec<usize> = corpus
            .docs
            .iter()
            .enumerate()
            .filter(|(_, d)| d.label.as_deref() == Some(class.as_str()))
            .map(|(i, _)| i)
            .collect();
        if members.len() < 2 {
            return Err(Error::ClassTooSmall {
                label: class.as_str().into(),
                size: members.len(),
            });
        }
        let take = train_count(members.len(), train_fraction);
        let mut order = members;
        let mut rng = ChaCha8Rng::seed_from_u64(class_seed(seed, class.as_str()));
        order.shuffle(&mut rng);
        for &i in &order[..take] {
            in_train[i] = true;
        }
    }
    let (mut train, mut test) = (Vec::new(), Vec::new());
    for (doc, t) in corpus.docs.iter().zip(in_train) {
        if t {
            train.push(doc.clone());
        } else {
            test.push(doc.clone());
        }
    }
    Ok((Corpus::new(train)?, Corpus::new(test)?))
}

/// Extracts keywords, mines every class, and builds the probability table.
/// Classes that yield no sets stay in the model with a zero prior.
pub fn train(
    corpus: &Corpus,
    stops: &StopwordList,
    config: ModelConfig,
) -> Result<ProbabilityTable> {
    config.validate()?;
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let docs_by_class: Vec<(ClassLabel, Vec<KeywordSet>)> = corpus
        .classes
        .iter()
        .map(|c| {
            let kws = corpus
                .docs_of(c.as_str())
                .map(|d| extract_keywords(d, stops, config.min_doc_freq))
                .collect();
            (c.clone(), kws)
        })
        .collect();
    let mined = mine_class_features(&docs_by_class, MinSupport::Fraction(config.min_support))?;
    build_probability_table(&mined, config)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassTally {
    pub label: String,
    pub tested: usize,
    pub correct: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    /// One row per class of the test corpus, sorted by label.
    pub per_class: Vec<ClassTally>,
    pub total_tested: usize,
    pub total_correct: usize,
    pub accuracy_percent: f64,
}

impl EvalReport {
    fn from_tallies(per_class: Vec<ClassTally>) -> Self {
        let total_tested = per_class.iter().map(|t| t.tested).sum();
        let total_correct = per_class.iter().map(|t| t.correct).sum();
        let accuracy_percent = if total_tested == 0 {
            0.0
        } else {
            100.0 * total_correct as f64 / total_tested as f64
        };
        EvalReport {
            per_class,
            total_tested,
            total_correct,
            accuracy_percent,
        }
    }
}

/// Classifies every test document and tallies hits per true class.
pub fn evaluate(
    table: &ProbabilityTable,
    test: &Corpus,
    stops: &StopwordList,
) -> Result<EvalReport> {
    if test.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut tallies: Vec<ClassTally> = test
        .classes
        .iter()
        .map(|c| ClassTally {
            label: c.as_str().into(),
            tested: 0,
            correct: 0,
        })
        .collect();
    for doc in &test.docs {
        let truth = doc.label.as_deref().unwrap_or_default();
        let pred = classify_document(doc, table, stops)?;
        // classes are sorted, so this always finds the row
        let row = tallies
            .binary_search_by(|t| t.label.as_str().cmp(truth))
            .map_err(|_| Error::EmptyLabel)?;
        tallies[row].tested += 1;
        if pred.label.as_str() == truth {
            tallies[row].correct += 1;
        }
    }
    Ok(EvalReport::from_tallies(tallies))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub train_fraction: f64,
    pub train_docs: usize,
    pub report: EvalReport,
}

impl SweepRow {
    pub fn accuracy_percent(&self) -> f64 {
        self.report.accuracy_percent
    }
}

/// Split, train and evaluate once per training fraction, in input order.
pub fn sweep(
    corpus: &Corpus,
    fractions: &[f64],
    seed: u64,
    stops: &StopwordList,
    config: ModelConfig,
) -> Result<Vec<SweepRow>> {
    for &f in fractions {
        check_train_fraction(f)?;
    }
    fractions
        .iter()
        .map(|&f| {
            let (train_set, test_set) = split_corpus(corpus, f, seed)?;
            let table = train(&train_set, stops, config)?;
            let report = evaluate(&table, &test_set, stops)?;
            Ok(SweepRow {
                train_fraction: f,
                train_docs: train_set.len(),
                report,
            })
        })
        .collect()
}
