use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("transaction list is empty")]
    EmptyTransactions,
    #[error("minimum support must be a fraction in (0, 1] or a count >= 1, got {0}")]
    InvalidMinSupport(f64),
    #[error("{name} must lie in {range}, got {value}")]
    InvalidFraction {
        name: &'static str,
        range: &'static str,
        value: f64,
    },
    #[error("class `{0}` has no documents")]
    EmptyClass(String),
    #[error("class `{label}` has {size} document(s); splitting needs at least 2")]
    ClassTooSmall { label: String, size: usize },
    #[error("class label must be non-empty")]
    EmptyLabel,
    #[error("class `{0}` is declared twice")]
    DuplicateClass(String),
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("no feature sets were mined in any class")]
    NoFeatureSets,
    #[error("total number of sets must be positive")]
    ZeroTotalSets,
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("invalid model: {0}")]
    InvalidModel(String),
}
