//! Corpus directories, stopword files and transaction files.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use atc_core::{Corpus, RawDocument, StopwordList, Transaction};

use crate::{AtcError, Result};

/// Environment variable consulted when no stopword file is given.
pub const STOPWORDS_ENV: &str = "ATC_STOPWORDS";

#[derive(Debug, Clone)]
pub struct LoadedCorpus {
    pub corpus: Corpus,
    /// Hidden files, nested directories and other non-document entries.
    pub skipped: usize,
}

fn read_text(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| AtcError::io(path, e))?;
    String::from_utf8(bytes).map_err(|_| AtcError::NotUtf8 { path: path.into() })
}

fn sorted_entries(dir: &Path) -> Result<Vec<(String, PathBuf, fs::FileType)>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| AtcError::io(dir, e))? {
        let entry = entry.map_err(|e| AtcError::io(dir, e))?;
        let ft = entry
            .file_type()
            .map_err(|e| AtcError::io(entry.path(), e))?;
        let name = entry.file_name().to_string_lossy().into_owned();
        out.push((name, entry.path(), ft));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Reads `root/<class>/<file>`. The class is the directory name and the
/// document id is the path relative to `root`.
pub fn load_corpus(root: &Path) -> Result<LoadedCorpus> {
    let mut docs = Vec::new();
    let mut skipped = 0;
    let mut classes = 0;
    for (class, class_path, ft) in sorted_entries(root)? {
        if class.starts_with('.') || !ft.is_dir() {
            skipped += 1;
            continue;
        }
        classes += 1;
        let before = docs.len();
        for (name, path, ft) in sorted_entries(&class_path)? {
            if name.starts_with('.') || !ft.is_file() {
                skipped += 1;
                continue;
            }
            let text = read_text(&path)?;
            docs.push(RawDocument::new(
                format!("{class}/{name}"),
                Some(class.clone()),
                text,
            ));
        }
        if docs.len() == before {
            return Err(AtcError::EmptyClassDir { path: class_path });
        }
    }
    if classes == 0 {
        return Err(AtcError::EmptyCorpusDir { path: root.into() });
    }
    Ok(LoadedCorpus {
        corpus: Corpus::new(docs)?,
        skipped,
    })
}

/// One word per line; `#` starts a comment line.
pub fn parse_stopwords(text: &str, path: &Path) -> Result<StopwordList> {
    let mut words = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.contains(char::is_whitespace) {
            return Err(AtcError::Format {
                path: path.into(),
                line: i + 1,
                msg: format!("stopword `{line}` contains whitespace"),
            });
        }
        words.push(line);
    }
    StopwordList::from_words(words).map_err(|w| AtcError::Format {
        path: path.into(),
        line: 0,
        msg: w,
    })
}

pub fn load_stopwords(path: &Path) -> Result<StopwordList> {
    parse_stopwords(&read_text(path)?, path)
}

/// The given file, else the file named by `ATC_STOPWORDS`, else the
/// built-in list.
pub fn resolve_stopwords(path: Option<&Path>) -> Result<StopwordList> {
    match path {
        Some(p) => load_stopwords(p),
        None => match std::env::var_os(STOPWORDS_ENV) {
            Some(p) if !p.is_empty() => load_stopwords(Path::new(&p)),
            _ => Ok(StopwordList::english()),
        },
    }
}

/// One transaction per non-blank line, items separated by whitespace.
/// Transaction ids are `T<line number>`.
pub fn parse_transactions(text: &str) -> Vec<Transaction> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let l = l.trim();
            !l.is_empty() && !l.starts_with('#')
        })
        .map(|(i, l)| Transaction::new(format!("T{}", i + 1), l.split_whitespace()))
        .collect()
}

/// Reads a transaction file, or standard input when `path` is `-`.
pub fn read_transactions(path: &Path) -> Result<Vec<Transaction>> {
    let text = if path == Path::new("-") {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| AtcError::io(path, e))?;
        String::from_utf8(buf).map_err(|_| AtcError::NotUtf8 { path: path.into() })?
    } else {
        read_text(path)?
    };
    Ok(parse_transactions(&text))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(root: &Path, rel: &str, text: &str) {
        let p = root.join(rel);
        fs::create_dir_all(p.parent().unwrap()).unwrap();
        fs::write(p, text).unwrap();
    }

    #[test]
    fn loads_sorted_classes_and_relative_ids() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "ph/b.txt", "beta");
        write(dir.path(), "ph/a.txt", "alpha");
        write(dir.path(), "ch/c.txt", "gamma");
        write(dir.path(), "ch/.hidden", "x");
        write(dir.path(), "ch/sub/deep.txt", "x");
        write(dir.path(), "README", "x");
        let loaded = load_corpus(dir.path()).unwrap();
        let ids: Vec<&str> = loaded.corpus.docs().iter().map(|d| d.id.as_str()).collect();
        assert_eq!(ids, ["ch/c.txt", "ph/a.txt", "ph/b.txt"]);
        let classes: Vec<&str> = loaded.corpus.classes().iter().map(|c| c.as_str()).collect();
        assert_eq!(classes, ["ch", "ph"]);
        assert_eq!(loaded.skipped, 3);
    }

    #[test]
    fn empty_inputs_are_errors() {
        let dir = tempfile::tempdir().unwrap();
        let err = load_corpus(dir.path()).unwrap_err();
        assert!(matches!(err, AtcError::EmptyCorpusDir { .. }));
        assert_eq!(err.exit_code(), 1);
        fs::create_dir(dir.path().join("ph")).unwrap();
        assert!(matches!(
            load_corpus(dir.path()),
            Err(AtcError::EmptyClassDir { .. })
        ));
        let missing = load_corpus(&dir.path().join("nope")).unwrap_err();
        assert_eq!(missing.exit_code(), 2);
    }

    #[test]
    fn non_utf8_document_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("ph");
        fs::create_dir(&p).unwrap();
        fs::write(p.join("a.txt"), [0xff, 0xfe, 0x00]).unwrap();
        assert!(matches!(
            load_corpus(dir.path()),
            Err(AtcError::NotUtf8 { .. })
        ));
    }

    #[test]
    fn stopword_file() {
        let p = Path::new("stop.txt");
        let stops = parse_stopwords("# comment\nAm\n\n  is \nARE\n", p).unwrap();
        assert_eq!(stops.iter().collect::<Vec<_>>(), ["am", "are", "is"]);
        let err = parse_stopwords("ok\ntwo words\n", p).unwrap_err();
        assert!(matches!(err, AtcError::Format { line: 2, .. }));
    }

    #[test]
    fn transaction_file() {
        let txs = parse_transactions("# header\nI1 I2  I5\n\n\tI2 I4\n");
        assert_eq!(txs.len(), 2);
        assert_eq!(txs[0].tid, "T2");
        assert_eq!(txs[0].items(), ["I1", "I2", "I5"]);
        assert_eq!(txs[1].items(), ["I2", "I4"]);
    }
}
