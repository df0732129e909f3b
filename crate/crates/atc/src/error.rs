use std::io;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum AtcError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: not valid UTF-8", path.display())]
    NotUtf8 { path: PathBuf },
    #[error("{}:{line}: {msg}", path.display())]
    Format {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error("{}: unsupported model version {found} (this build reads version {expected})", path.display())]
    ModelVersion {
        path: PathBuf,
        found: String,
        expected: u64,
    },
    #[error("{}: malformed model file: {msg}", path.display())]
    ModelParse { path: PathBuf, msg: String },
    #[error("{}: {source}", path.display())]
    ModelInvalid {
        path: PathBuf,
        source: atc_core::Error,
    },
    #[error("{}: no class directories found", path.display())]
    EmptyCorpusDir { path: PathBuf },
    #[error("{}: class directory contains no documents", path.display())]
    EmptyClassDir { path: PathBuf },
    #[error("{}: no transactions", path.display())]
    NoTransactions { path: PathBuf },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] atc_core::Error),
}

impl AtcError {
    /// 1 for empty inputs and empty results, 2 for everything else.
    pub fn exit_code(&self) -> u8 {
        use atc_core::Error as E;
        match self {
            AtcError::EmptyCorpusDir { .. }
            | AtcError::EmptyClassDir { .. }
            | AtcError::NoTransactions { .. } => 1,
            AtcError::Core(
                E::NoFeatureSets | E::EmptyCorpus | E::EmptyTransactions | E::EmptyClass(_),
            ) => 1,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        AtcError::Io {
            path: path.into(),
            source,
        }
    }
}
