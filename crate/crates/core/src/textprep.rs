//! Raw text to keyword transactions.
//!
//! The pipeline is: split on anything that is not a letter, lowercase,
//! drop stopwords, fold plurals by stripping one trailing `s`, then keep the
//! words that occur at least `min_doc_freq` times in the document.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

/// One input document. `label` is absent for documents to be classified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    pub id: String,
    pub label: Option<String>,
    pub text: String,
}

impl RawDocument {
    pub fn new(id: impl Into<String>, label: Option<String>, text: impl Into<String>) -> Self {
        RawDocument {
            id: id.into(),
            label,
            text: text.into(),
        }
    }

    pub fn unlabeled(id: impl Into<String>, text: impl Into<String>) -> Self {
        RawDocument::new(id, None, text)
    }
}

/// Sorted, duplicate-free keywords of one document.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KeywordSet(Vec<String>);

impl KeywordSet {
    /// Builds a set from arbitrary tokens; empty tokens are dropped.
    pub fn new<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut words: Vec<String> = tokens
            .into_iter()
            .map(Into::into)
            .filter(|w| !w.is_empty())
            .collect();
        words.sort();
        words.dedup();
        KeywordSet(words)
    }

    pub fn tokens(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.binary_search_by(|w| w.as_str().cmp(word)).is_ok()
    }

    pub fn into_tokens(self) -> Vec<String> {
        self.0
    }
}

/// Function words: articles, prepositions, conjunctions, pronouns,
/// auxiliaries and a few discourse adverbs, plus every single letter.
const DEFAULT_STOPWORDS: &[&str] = &[
    "a",
    "b",
    "c",
    "d",
    "e",
    "f",
    "g",
    "h",
    "i",
    "j",
    "k",
    "l",
    "m",
    "n",
    "o",
    "p",
    "q",
    "r",
    "s",
    "t",
    "u",
    "v",
    "w",
    "x",
    "y",
    "z", //
    "about",
    "above",
    "across",
    "after",
    "again",
    "against",
    "all",
    "almost",
    "along",
    "already",
    "also",
    "although",
    "always",
    "am",
    "among",
    "an",
    "and",
    "another",
    "any",
    "are",
    "around",
    "as",
    "at",
    "be",
    "because",
    "been",
    "before",
    "being",
    "below",
    "between",
    "both",
    "but",
    "by",
    "can",
    "cannot",
    "could",
    "did",
    "do",
    "does",
    "doing",
    "done",
    "down",
    "during",
    "each",
    "either",
    "else",
    "etc",
    "ever",
    "every",
    "for",
    "from",
    "further",
    "given",
    "had",
    "has",
    "have",
    "having",
    "he",
    "her",
    "here",
    "hers",
    "herself",
    "him",
    "himself",
    "his",
    "how",
    "however",
    "if",
    "in",
    "into",
    "is",
    "it",
    "its",
    "itself",
    "just",
    "may",
    "me",
    "might",
    "mine",
    "must",
    "my",
    "myself",
    "neither",
    "no",
    "nor",
    "not",
    "of",
    "off",
    "often",
    "on",
    "once",
    "only",
    "onto",
    "or",
    "other",
    "others",
    "otherwise",
    "our",
    "ours",
    "ourselves",
    "out",
    "over",
    "own",
    "per",
    "rather",
    "same",
    "shall",
    "she",
    "should",
    "since",
    "so",
    "such",
    "than",
    "that",
    "the",
    "their",
    "theirs",
    "them",
    "themselves",
    "then",
    "there",
    "therefore",
    "these",
    "they",
    "this",
    "those",
    "though",
    "through",
    "thus",
    "to",
    "too",
    "toward",
    "towards",
    "under",
    "until",
    "up",
    "upon",
    "us",
    "very",
    "via",
    "was",
    "we",
    "were",
    "what",
    "when",
    "where",
    "whether",
    "which",
    "while",
    "who",
    "whom",
    "whose",
    "why",
    "will",
    "with",
    "within",
    "without",
    "would",
    "yet",
    "you",
    "your",
    "yours",
    "yourself",
];

/// Lowercase words dropped before keyword counting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopwordList(BTreeSet<String>);

impl StopwordList {
    pub fn empty() -> Self {
        StopwordList(BTreeSet::new())
    }

    /// The built-in English function-word list.
    pub fn english() -> Self {
        StopwordList(DEFAULT_STOPWORDS.iter().map(|w| (*w).to_owned()).collect())
    }

    /// Entries are trimmed and lowercased; blank entries are skipped.
    /// Returns the offending entry if one contains inner whitespace.
    pub fn from_words<I, S>(words: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = BTreeSet::new();
        for w in words {
            let w = w.as_ref().trim();
            if w.is_empty() {
                continue;
            }
            if w.chars().any(char::is_whitespace) {
                return Err(w.to_owned());
            }
            set.insert(w.to_lowercase());
        }
        Ok(StopwordList(set))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }
}

impl Default for StopwordList {
    fn default() -> Self {
        StopwordList::english()
    }
}

/// Splits on every non-alphabetic character and lowercases. Order and
/// duplicates are kept.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphabetic())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// Folds plurals: one trailing `s` is removed from words of three or more
/// characters.
pub fn normalize(token: &str) -> String {
    match token.strip_suffix('s') {
        Some(stem) if token.chars().count() >= 3 => stem.to_owned(),
        _ => token.to_owned(),
    }
}

/// Keywords of `doc`: normalized non-stopwords occurring at least
/// `min_doc_freq` times. A `min_doc_freq` of 0 behaves like 1.
pub fn extract_keywords(
    doc: &RawDocument,
    stops: &StopwordList,
    min_doc_freq: usize,
) -> KeywordSet {
    extract_keywords_from_text(&doc.text, stops, min_doc_freq)
}

pub fn extract_keywords_from_text(
    text: &str,
    stops: &StopwordList,
    min_doc_freq: usize,
) -> KeywordSet {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for token in tokenize(text) {
        if stops.contains(&token) {
            continue;
        }
        let word = normalize(&token);
        // "ons" -> "on" and the like
        if stops.contains(&word) {
            continue;
        }
        *counts.entry(word).or_insert(0) += 1;
    }
    let threshold = min_doc_freq.max(1);
    KeywordSet(
        counts
            .into_iter()
            .filter(|(_, c)| *c >= threshold)
            .map(|(w, _)| w)
            .collect(),
    )
}
