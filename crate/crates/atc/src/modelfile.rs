//! JSON model files.
//!
//! ```text
//! { "version": 1, "classes": [...], "priors": {class: f64},
//!   "sets_per_class": {class: n}, "total_sets": n,
//!   "config": {...}, "features": [{ "items": [...], "origin_class": ...,
//!     "counts_by_class": {...}, "prob_by_class": {...}, "argmax_class": ... }] }
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use atc_core::{ClassLabel, FeatureSet, ModelConfig, ProbabilityTable};
use serde::{Deserialize, Serialize};

use crate::{AtcError, Result};

pub const MODEL_VERSION: u64 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    min_support: f64,
    min_confidence: f64,
    min_doc_freq: usize,
    match_threshold: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FeatureFile {
    items: Vec<String>,
    origin_class: String,
    counts_by_class: BTreeMap<String, usize>,
    prob_by_class: BTreeMap<String, f64>,
    argmax_class: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    version: u64,
    classes: Vec<String>,
    priors: BTreeMap<String, f64>,
    sets_per_class: BTreeMap<String, usize>,
    total_sets: usize,
    config: ConfigFile,
    features: Vec<FeatureFile>,
}

fn to_file(t: &ProbabilityTable) -> ModelFile {
    let names: Vec<String> = t.classes().iter().map(|c| c.as_str().to_owned()).collect();
    let by_class = |vals: &[f64]| {
        names
            .iter()
            .cloned()
            .zip(vals.iter().copied())
            .collect::<BTreeMap<_, _>>()
    };
    let by_class_n = |vals: &[usize]| {
        names
            .iter()
            .cloned()
            .zip(vals.iter().copied())
            .collect::<BTreeMap<_, _>>()
    };
    let c = t.config();
    ModelFile {
        version: MODEL_VERSION,
        classes: names.clone(),
        priors: by_class(t.priors()),
        sets_per_class: by_class_n(t.sets_per_class()),
        total_sets: t.total_sets(),
        config: ConfigFile {
            min_support: c.min_support,
            min_confidence: c.min_confidence,
            min_doc_freq: c.min_doc_freq,
            match_threshold: c.match_threshold,
        },
        features: t
            .features()
            .iter()
            .map(|f| FeatureFile {
                items: f.items.clone(),
                origin_class: names[f.origin].clone(),
                counts_by_class: by_class_n(&f.counts_by_class),
                prob_by_class: by_class(&f.prob_by_class),
                argmax_class: names[f.argmax].clone(),
            })
            .collect(),
    }
}

/// Serializes a model. Floats are written in shortest round-trip form.
pub fn model_to_json(t: &ProbabilityTable) -> String {
    let mut s = serde_json::to_string_pretty(&to_file(t)).expect("model serializes");
    s.push('\n');
    s
}

fn invalid(path: &Path, msg: String) -> AtcError {
    AtcError::ModelInvalid {
        path: path.into(),
        source: atc_core::Error::InvalidModel(msg),
    }
}

fn per_class<T: Copy>(
    path: &Path,
    names: &[String],
    map: &BTreeMap<String, T>,
    what: &str,
) -> Result<Vec<T>> {
    if map.len() != names.len() {
        return Err(invalid(
            path,
            format!(
                "{what} has {} entries for {} classes",
                map.len(),
                names.len()
            ),
        ));
    }
    names
        .iter()
        .map(|n| {
            map.get(n)
                .copied()
                .ok_or_else(|| invalid(path, format!("{what} lacks class `{n}`")))
        })
        .collect()
}

/// Parses and validates a model; `path` is only used in messages.
pub fn model_from_json(text: &str, path: &Path) -> Result<ProbabilityTable> {
    let parse_err = |e: serde_json::Error| AtcError::ModelParse {
        path: path.into(),
        msg: e.to_string(),
    };
    let value: serde_json::Value = serde_json::from_str(text).map_err(parse_err)?;
    match value.get("version") {
        Some(v) if v.as_u64() == Some(MODEL_VERSION) => {}
        Some(v) => {
            let found = v.as_str().map_or_else(|| v.to_string(), str::to_owned);
            return Err(AtcError::ModelVersion {
                path: path.into(),
                found,
                expected: MODEL_VERSION,
            });
        }
        None => {
            return Err(AtcError::ModelParse {
                path: path.into(),
                msg: "missing `version`".into(),
            })
        }
    }
    let file: ModelFile = serde_json::from_value(value).map_err(parse_err)?;
    let wrap = |e: atc_core::Error| AtcError::ModelInvalid {
        path: path.into(),
        source: e,
    };
    let classes = file
        .classes
        .iter()
        .map(ClassLabel::new)
        .collect::<atc_core::Result<Vec<_>>>()
        .map_err(wrap)?;
    let index = |name: &str| {
        file.classes
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| invalid(path, format!("unknown class `{name}`")))
    };
    let mut features = Vec::with_capacity(file.features.len());
    for f in &file.features {
        features.push(FeatureSet {
            items: f.items.clone(),
            origin: index(&f.origin_class)?,
            counts_by_class: per_class(path, &file.classes, &f.counts_by_class, "counts_by_class")?,
            prob_by_class: per_class(path, &file.classes, &f.prob_by_class, "prob_by_class")?,
            argmax: index(&f.argmax_class)?,
        });
    }
    let config = ModelConfig {
        min_support: file.config.min_support,
        min_confidence: file.config.min_confidence,
        min_doc_freq: file.config.min_doc_freq,
        match_threshold: file.config.match_threshold,
    };
    ProbabilityTable::from_parts(
        classes,
        per_class(path, &file.classes, &file.priors, "priors")?,
        per_class(path, &file.classes, &file.sets_per_class, "sets_per_class")?,
        file.total_sets,
        features,
        config,
    )
    .map_err(wrap)
}

pub fn save_model(t: &ProbabilityTable, path: &Path) -> Result<()> {
    fs::write(path, model_to_json(t)).map_err(|e| AtcError::io(path, e))
}

pub fn load_model(path: &Path) -> Result<ProbabilityTable> {
    let bytes = fs::read(path).map_err(|e| AtcError::io(path, e))?;
    let text = String::from_utf8(bytes).map_err(|_| AtcError::NotUtf8 { path: path.into() })?;
    model_from_json(&text, path)
}
