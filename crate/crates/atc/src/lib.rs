//! File formats, corpus loading, reports and the `atc` command line on top
//! of `atc-core`.

pub mod cli;
pub mod corpus;
mod error;
pub mod modelfile;
pub mod report;

pub use corpus::{
    load_corpus, load_stopwords, parse_transactions, read_transactions, resolve_stopwords,
    LoadedCorpus,
};
pub use error::AtcError;
pub use modelfile::{load_model, model_from_json, model_to_json, save_model, MODEL_VERSION};
pub use report::{eval_csv, eval_text, fmt_sig, sweep_csv, sweep_text};

pub type Result<T> = std::result::Result<T, AtcError>;
