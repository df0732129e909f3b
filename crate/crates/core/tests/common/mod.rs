//! Fixtures shared by the integration tests of both crates.
#![allow(dead_code)]

use atc_core::{
    build_probability_table, ClassLabel, Itemset, ModelConfig, ProbabilityTable, RawDocument,
    Transaction,
};

pub const WORD_SETS_TSV: &str = include_str!("../data/word_sets.tsv");
pub const TABLE_CLASSES: [&str; 5] = ["PH", "CH", "ALG", "EDE", "AI"];

/// One row of the published word-set tables.
pub struct TableRow {
    pub origin: &'static str,
    pub count: usize,
    pub items: Vec<&'static str>,
    /// Printed probabilities in `TABLE_CLASSES` order.
    pub probs: [f64; 5],
}

pub fn table_rows() -> Vec<TableRow> {
    WORD_SETS_TSV
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|line| {
            let cols: Vec<&str> = line.split('\t').collect();
            let mut probs = [0.0; 5];
            for (p, s) in probs.iter_mut().zip(&cols[3..8]) {
                *p = s.parse().unwrap();
            }
            TableRow {
                origin: cols[0],
                count: cols[1].parse().unwrap(),
                items: cols[2].split(", ").collect(),
                probs,
            }
        })
        .collect()
}

pub fn sorted_items(items: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = items.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

/// The published model: mined counts per class, classes in table order.
pub fn reference_model() -> ProbabilityTable {
    let rows = table_rows();
    let mined: Vec<(ClassLabel, Vec<Itemset>)> = TABLE_CLASSES
        .iter()
        .map(|c| {
            let sets = rows
                .iter()
                .filter(|r| r.origin == *c)
                .map(|r| Itemset::new(r.items.clone(), r.count))
                .collect();
            (ClassLabel::new(*c).unwrap(), sets)
        })
        .collect();
    build_probability_table(&mined, ModelConfig::default()).unwrap()
}

pub fn basket_transactions() -> Vec<Transaction> {
    [
        ("T100", "I1 I2 I5"),
        ("T200", "I2 I4"),
        ("T300", "I2 I3"),
        ("T400", "I1 I2 I4"),
        ("T500", "I1 I3"),
        ("T600", "I2 I3"),
        ("T700", "I1 I3"),
        ("T800", "I1 I2 I3 I5"),
        ("T900", "I1 I2 I3"),
    ]
    .iter()
    .map(|(tid, items)| Transaction::new(*tid, items.split(' ')))
    .collect()
}

/// Abstract used for the worked classification example.
pub const DIELECTRIC_ABSTRACT: &str = "The dielectric function of heavy nonmetallic crystals are studied within a \
relativistic framework using the ADF-BAND program package. The calculations are based on the work that has been done \
to calculate the dielectric response of nonmetallic crystals in article [7]. The starting point of the relativistic \
corrections is the Dirac equation in an quasi-static electric field. As the Dirac equation is a four-component \
equation it is first reduced to a two-component equation with the Foldy-Wouthuysen transformation. The then obtained \
two-component Dirac-Hamiltonian is then used to find (after some treatments of this Hamiltonian) an expression for \
the matrixelements required. With these matrixelements the dielectric function can be evaluated, but now \
relativistically corrected. The obtained relativistic corrected dielectric function was finally evaluated for some \
light crystals; C, Si, GaAs and He and for heavier crystals as to see if the relativistic corrections indeed improve \
on the dielectric function of the studied crystals in article [7]. The heavy crystals with large errors as compared \
to experiment in article [7] were studied. The expectation is that for elements with an atomic number greater or \
equal to 50 (Z >= 50) the relativistic corrections become important.";

const CLASS_NAMES: [&str; 5] = ["alpha", "bravo", "charlie", "delta", "echo"];
const SYLLABLES: [&str; 8] = ["ka", "lo", "mi", "nu", "pe", "ro", "ti", "vu"];

fn word(parts: &[usize]) -> String {
    parts
        .iter()
        .map(|&i| SYLLABLES[i % SYLLABLES.len()])
        .collect()
}

/// A corpus whose classes have disjoint vocabularies. Every document holds
/// its class's six core words twice, two words of its own twice, and one
/// word shared by all documents once.
pub fn separable_corpus(classes: usize, docs_per_class: usize) -> Vec<RawDocument> {
    let mut docs = Vec::new();
    for (c, name) in CLASS_NAMES.iter().enumerate().take(classes) {
        let core: Vec<String> = (0..6).map(|w| format!("{name}{}", word(&[w, c]))).collect();
        for d in 0..docs_per_class {
            let own: Vec<String> = (0..2)
                .map(|w| format!("{name}{}", word(&[7, d / 8, d % 8, w])))
                .collect();
            let mut text = String::new();
            for w in core.iter().chain(&own) {
                text.push_str(&format!("{w} {w}. "));
            }
            text.push_str("common");
            docs.push(RawDocument::new(
                format!("{name}/{d:03}.txt"),
                Some(name.to_string()),
                text,
            ));
        }
    }
    docs
}
