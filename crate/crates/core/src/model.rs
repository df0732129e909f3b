//! The trained artifact: per-class maximal word-sets with smoothed
//! per-class probabilities and class priors.
//!
//! Every mined set belongs to the class it was mined from, its origin. Its
//! probability under class `c` is `(count_c + 1) / (sets_o + total_sets)`,
//! where `count_c` is the set's occurrence count in `c` (zero for every
//! class but the origin) and `sets_o` is the number of sets mined from the
//! origin class. The whole row shares the origin's denominator, so the
//! most probable class of a set is always its origin. The prior of `c` is
//! `sets_c / total_sets`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::itemset::{find_frequent_itemsets, maximal_itemsets, Itemset, MinSupport, Transaction};
use crate::num::abs;
use crate::textprep::KeywordSet;
use crate::{Error, Result};

/// A non-empty class name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassLabel(String);

impl ClassLabel {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::EmptyLabel);
        }
        Ok(ClassLabel(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for ClassLabel {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Training and matching knobs stored with the model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelConfig {
    pub min_support: f64,
    /// Recorded for reference; training consumes itemsets, not rules.
    pub min_confidence: f64,
    pub min_doc_freq: usize,
    pub match_threshold: f64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig {
            min_support: 0.05,
            min_confidence: 0.75,
            min_doc_freq: 2,
            match_threshold: 0.5,
        }
    }
}

fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidFraction {
            name,
            range: "(0, 1]",
            value,
        })
    }
}

impl ModelConfig {
    pub fn validate(&self) -> Result<()> {
        check_unit("min_support", self.min_support)?;
        check_unit("min_confidence", self.min_confidence)?;
        check_unit("match_threshold", self.match_threshold)?;
        if self.min_doc_freq == 0 {
            return Err(Error::InvalidModel(
                "min_doc_freq must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// One row of the probability table. Per-class vectors follow the owning
/// table's class order.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSet {
    pub items: Vec<String>,
    pub origin: usize,
    pub counts_by_class: Vec<usize>,
    pub prob_by_class: Vec<f64>,
    pub argmax: usize,
}

/// Smoothed probability of a set under one class:
/// `(count + 1) / (class_set_count + total_sets)`.
///
/// The value exceeds 1 when `count >= class_set_count + total_sets`, which
/// only happens for models with a handful of sets.
pub fn set_probability(count: usize, class_set_count: usize, total_sets: usize) -> f64 {
    (count + 1) as f64 / (class_set_count + total_sets) as f64
}

/// `sets_per_class[c] / total_sets` for every class.
pub fn compute_priors(sets_per_class: &[usize], total_sets: usize) -> Result<Vec<f64>> {
    if total_sets == 0 {
        return Err(Error::ZeroTotalSets);
    }
    let sum: usize = sets_per_class.iter().sum();
    if sum != total_sets {
        return Err(Error::InvalidModel(format!(
            "sets per class sum to {sum}, expected {total_sets}"
        )));
    }
    Ok(sets_per_class
        .iter()
        .map(|&n| n as f64 / total_sets as f64)
        .collect())
}

/// Index of the largest value; the earliest index wins ties.
pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// Mines every class's documents as its own transaction database and keeps
/// the maximal frequent sets with at least two words, in (size, items) order.
pub fn mine_class_features(
    docs_by_class: &[(ClassLabel, Vec<KeywordSet>)],
    min_support: MinSupport,
) -> Result<Vec<(ClassLabel, Vec<Itemset>)>> {
    docs_by_class
        .iter()
        .map(|(label, docs)| {
            if docs.is_empty() {
                return Err(Error::EmptyClass(label.0.clone()));
            }
            let transactions: Vec<Transaction> = docs
                .iter()
                .enumerate()
                .map(|(i, kw)| Transaction::new(format!("{i}"), kw.tokens().iter().cloned()))
                .collect();
            let levels = find_frequent_itemsets(&transactions, min_support)?;
            let sets = maximal_itemsets(&levels)
                .into_iter()
                .filter(|s| s.len() >= 2)
                .collect();
            Ok((label.clone(), sets))
        })
        .collect()
}

/// Immutable trained model.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityTable {
    classes: Vec<ClassLabel>,
    priors: Vec<f64>,
    sets_per_class: Vec<usize>,
    total_sets: usize,
    features: Vec<FeatureSet>,
    config: ModelConfig,
}

/// Builds the table from per-class mined sets. Class order is the order of
/// `mined` and decides argmax ties.
pub fn build_probability_table(
    mined: &[(ClassLabel, Vec<Itemset>)],
    config: ModelConfig,
) -> Result<ProbabilityTable> {
    check_classes(mined.iter().map(|(l, _)| l))?;
    let classes: Vec<ClassLabel> = mined.iter().map(|(l, _)| l.clone()).collect();
    let sets_per_class: Vec<usize> = mined.iter().map(|(_, sets)| sets.len()).collect();
    let total_sets: usize = sets_per_class.iter().sum();
    if total_sets == 0 {
        return Err(Error::NoFeatureSets);
    }
    let priors = compute_priors(&sets_per_class, total_sets)?;
    let mut features = Vec::with_capacity(total_sets);
    for (origin, (_, sets)) in mined.iter().enumerate() {
        for set in sets {
            let mut counts_by_class = alloc::vec![0; classes.len()];
            counts_by_class[origin] = set.count;
            let n_origin = sets_per_class[origin];
            let prob_by_class: Vec<f64> = counts_by_class
                .iter()
                .map(|&count| set_probability(count, n_origin, total_sets))
                .collect();
            let argmax = argmax(&prob_by_class);
            features.push(FeatureSet {
                items: set.items.clone(),
                origin,
                counts_by_class,
                prob_by_class,
                argmax,
            });
        }
    }
    Ok(ProbabilityTable {
        classes,
        priors,
        sets_per_class,
        total_sets,
        features,
        config,
    })
}

fn check_classes<'a>(labels: impl Iterator<Item = &'a ClassLabel>) -> Result<()> {
    let mut seen: Vec<&ClassLabel> = Vec::new();
    for l in labels {
        if l.0.is_empty() {
            return Err(Error::EmptyLabel);
        }
        if seen.contains(&l) {
            return Err(Error::DuplicateClass(l.0.clone()));
        }
        seen.push(l);
    }
    if seen.is_empty() {
        return Err(Error::InvalidModel("no classes".into()));
    }
    Ok(())
}

impl ProbabilityTable {
    /// Reassembles a table from stored parts and checks every invariant.
    pub fn from_parts(
        classes: Vec<ClassLabel>,
        priors: Vec<f64>,
        sets_per_class: Vec<usize>,
        total_sets: usize,
        features: Vec<FeatureSet>,
        config: ModelConfig,
    ) -> Result<Self> {
        let table = ProbabilityTable {
            classes,
            priors,
            sets_per_class,
            total_sets,
            features,
            config,
        };
        table.validate()?;
        Ok(table)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidModel(msg));
        check_classes(self.classes.iter())?;
        self.config.validate()?;
        let n = self.classes.len();
        if self.priors.len() != n || self.sets_per_class.len() != n {
            return bad("per-class vectors do not match the class list".into());
        }
        if self.total_sets == 0 {
            return bad("total_sets must be positive".into());
        }
        if self.sets_per_class.iter().sum::<usize>() != self.total_sets {
            return bad("sets_per_class does not sum to total_sets".into());
        }
        if self.features.len() != self.total_sets {
            return bad(format!(
                "{} features but total_sets is {}",
                self.features.len(),
                self.total_sets
            ));
        }
        let prior_sum: f64 = self.priors.iter().sum();
        if abs(prior_sum - 1.0) > 1e-9 {
            return bad(format!("priors sum to {prior_sum}"));
        }
        for (c, (&p, &k)) in self.priors.iter().zip(&self.sets_per_class).enumerate() {
            if abs(p - k as f64 / self.total_sets as f64) > 1e-12 {
                return bad(format!(
                    "prior of `{}` disagrees with its set count",
                    self.classes[c]
                ));
            }
        }
        let mut per_origin = alloc::vec![0usize; n];
        for f in &self.features {
            let items_ok = !f.items.is_empty()
                && f.items.iter().all(|w| !w.is_empty())
                && f.items.windows(2).all(|w| w[0] < w[1]);
            if !items_ok {
                return bad(format!(
                    "feature items {:?} must be non-empty, sorted and distinct",
                    f.items
                ));
            }
            if f.origin >= n
                || f.argmax >= n
                || f.counts_by_class.len() != n
                || f.prob_by_class.len() != n
            {
                return bad(format!("feature {:?} refers to unknown classes", f.items));
            }
            if f.prob_by_class.iter().any(|&p| !(p > 0.0 && p.is_finite())) {
                return bad(format!(
                    "feature {:?} has a non-positive probability",
                    f.items
                ));
            }
            let top = f.prob_by_class[f.argmax];
            if f.prob_by_class.iter().any(|&p| p > top) {
                return bad(format!(
                    "feature {:?} does not attain its maximum at argmax_class",
                    f.items
                ));
            }
            per_origin[f.origin] += 1;
        }
        if per_origin != self.sets_per_class {
            return bad("feature origins do not match sets_per_class".into());
        }
        Ok(())
    }

    pub fn classes(&self) -> &[ClassLabel] {
        &self.classes
    }

    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.as_str() == label)
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    pub fn prior(&self, label: &str) -> Option<f64> {
        self.class_index(label).map(|i| self.priors[i])
    }

    pub fn sets_per_class(&self) -> &[usize] {
        &self.sets_per_class
    }

    pub fn total_sets(&self) -> usize {
        self.total_sets
    }

    pub fn features(&self) -> &[FeatureSet] {
        &self.features
    }

    pub fn config(&self) -> &ModelConfig {
        &self.config
    }

    /// Looks up the first feature with exactly these (sorted) items.
    pub fn feature(&self, items: &[&str]) -> Option<&FeatureSet> {
        self.features.iter().find(|f| {
            f.items.len() == items.len() && f.items.iter().zip(items).all(|(a, b)| a == b)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn label(s: &str) -> ClassLabel {
        ClassLabel::new(s).unwrap()
    }

    #[test]
    fn smoothed_probability_examples() {
        assert_eq!(set_probability(2, 5, 69), 3.0 / 74.0);
        assert!((set_probability(2, 5, 69) - 0.040541).abs() < 5e-7);
        assert!((set_probability(0, 9, 69) - 0.012821).abs() < 5e-7);
        assert!((set_probability(5, 12, 69) - 0.074074).abs() < 5e-7);
        assert_eq!(set_probability(1, 1, 1), 1.0);
    }

    #[test]
    fn priors_examples() {
        let p = compute_priors(&[18, 25, 5, 9, 12], 69).unwrap();
        let rounded: Vec<f64> = p.iter().map(|x| (x * 100.0).round() / 100.0).collect();
        assert_eq!(rounded, vec![0.26, 0.36, 0.07, 0.13, 0.17]);
        assert_eq!(compute_priors(&[4], 4).unwrap(), vec![1.0]);
        assert_eq!(compute_priors(&[3, 3], 6).unwrap(), vec![0.5, 0.5]);
        assert_eq!(compute_priors(&[0], 0), Err(Error::ZeroTotalSets));
        assert!(compute_priors(&[1, 1], 3).is_err());
    }

    #[test]
    fn mining_per_class() {
        let same = vec![KeywordSet::new(["a", "b"]); 4];
        let disjoint = vec![
            KeywordSet::new(["p", "q"]),
            KeywordSet::new(["r", "s"]),
            KeywordSet::new(["t", "u"]),
        ];
        let mined = mine_class_features(
            &[(label("x"), same), (label("y"), disjoint)],
            MinSupport::Fraction(0.5),
        )
        .unwrap();
        assert_eq!(mined[0].1, vec![Itemset::new(["a", "b"], 4)]);
        assert!(mined[1].1.is_empty());
        let err = mine_class_features(&[(label("z"), vec![])], MinSupport::Fraction(0.5));
        assert_eq!(err, Err(Error::EmptyClass("z".into())));
    }

    #[test]
    fn singletons_are_not_features() {
        let docs = vec![
            KeywordSet::new(["a", "b"]),
            KeywordSet::new(["a", "c"]),
            KeywordSet::new(["d"]),
        ];
        let mined = mine_class_features(&[(label("x"), docs)], MinSupport::Count(1)).unwrap();
        let sizes: Vec<usize> = mined[0].1.iter().map(Itemset::len).collect();
        assert_eq!(sizes, vec![2, 2]);
    }

    #[test]
    fn degenerate_single_set_model() {
        let t = build_probability_table(
            &[(label("x"), vec![Itemset::new(["a", "b"], 1)])],
            ModelConfig::default(),
        )
        .unwrap();
        assert_eq!(t.features()[0].prob_by_class, vec![1.0]);
        assert_eq!(t.priors(), &[1.0]);
    }

    #[test]
    fn two_class_model() {
        let t = build_probability_table(
            &[
                (label("x"), vec![Itemset::new(["a", "b"], 1)]),
                (label("y"), vec![Itemset::new(["c", "d"], 1)]),
            ],
            ModelConfig::default(),
        )
        .unwrap();
        for (i, f) in t.features().iter().enumerate() {
            assert_eq!(f.origin, i);
            assert_eq!(f.argmax, i);
            assert_eq!(f.prob_by_class[i], 2.0 / 3.0);
            assert_eq!(f.prob_by_class[1 - i], 1.0 / 3.0);
        }
        t.validate().unwrap();
    }

    #[test]
    fn table_errors() {
        let cfg = ModelConfig::default();
        assert_eq!(
            build_probability_table(&[(label("x"), vec![])], cfg),
            Err(Error::NoFeatureSets)
        );
        let dup = [
            (label("x"), vec![Itemset::new(["a", "b"], 1)]),
            (label("x"), vec![]),
        ];
        assert_eq!(
            build_probability_table(&dup, cfg),
            Err(Error::DuplicateClass("x".into()))
        );
        assert_eq!(ClassLabel::new(""), Err(Error::EmptyLabel));
    }

    #[test]
    fn class_without_sets_has_zero_prior() {
        let t = build_probability_table(
            &[
                (label("x"), vec![Itemset::new(["a", "b"], 2)]),
                (label("y"), vec![]),
            ],
            ModelConfig::default(),
        )
        .unwrap();
        assert_eq!(t.priors(), &[1.0, 0.0]);
        assert_eq!(t.features()[0].prob_by_class, vec![1.5, 0.5]);
        assert_eq!(t.features()[0].argmax, 0);
        t.validate().unwrap();
    }

    #[test]
    fn argmax_prefers_first_on_ties() {
        assert_eq!(argmax(&[0.5, 0.5]), 0);
        assert_eq!(argmax(&[0.1, 0.5, 0.5]), 1);
    }

    #[test]
    fn validation_catches_tampering() {
        let mut t = build_probability_table(
            &[
                (label("x"), vec![Itemset::new(["a", "b"], 1)]),
                (label("y"), vec![Itemset::new(["c", "d"], 1)]),
            ],
            ModelConfig::default(),
        )
        .unwrap();
        t.priors = vec![0.25, 0.25];
        assert!(matches!(t.validate(), Err(Error::InvalidModel(_))));
    }
}
