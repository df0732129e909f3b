//! Text classification from association word-sets.
//!
//! Documents are reduced to keyword transactions, Apriori mines the maximal
//! frequent word-sets of every class, each set gets a smoothed per-class
//! probability, and a new document is scored per class by how many of that
//! class's sets it matches and how many foreign sets it misses.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, corpus
//! loading and the command-line front end live in the `atc` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod classifier;
mod combin;
mod error;
pub mod harness;
pub mod itemset;
pub mod model;
mod num;
pub mod textprep;

pub use classifier::{
    classify, classify_document, match_fraction, score_class, ClassScore, Prediction,
};
pub use error::Error;
pub use harness::{evaluate, split_corpus, sweep, train, ClassTally, Corpus, EvalReport, SweepRow};
pub use itemset::{
    find_frequent_itemsets, generate_candidates, generate_rules, has_infrequent_subset,
    maximal_itemsets, support_count, AssociationRule, Itemset, ItemsetLevels, MinSupport,
    Transaction,
};
pub use model::{
    build_probability_table, compute_priors, mine_class_features, set_probability, ClassLabel,
    FeatureSet, ModelConfig, ProbabilityTable,
};
pub use textprep::{extract_keywords, normalize, tokenize, KeywordSet, RawDocument, StopwordList};

pub type Result<T> = core::result::Result<T, Error>;
