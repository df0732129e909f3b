//! The `atc` command line.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use atc_core::{
    classify_document, evaluate, find_frequent_itemsets, generate_rules, maximal_itemsets, sweep,
    train, ClassLabel, ClassScore, Itemset, MinSupport, ModelConfig, Prediction, RawDocument,
    StopwordList,
};
use clap::{Args, Parser, Subcommand};

use crate::corpus::{load_corpus, read_transactions, resolve_stopwords, STOPWORDS_ENV};
use crate::modelfile::{load_model, save_model};
use crate::report::{eval_csv, eval_text, fmt_sig, sweep_csv, sweep_text};
use crate::{AtcError, Result};

#[derive(Debug, Parser)]
#[command(name = "atc", version, about = "Association word-set text classifier")]
pub struct Cli {
    /// Stopword file, one word per line.
    #[arg(long, global = true, env = STOPWORDS_ENV)]
    pub stopwords: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mine frequent itemsets from a transaction file (`-` for stdin).
    Mine(MineArgs),
    /// Train a model from a directory of class subdirectories.
    Train(TrainArgs),
    /// Classify one document (a file, or stdin when omitted or `-`).
    Classify(ClassifyArgs),
    /// Evaluate a model on a labeled corpus directory.
    Evaluate(EvaluateArgs),
    /// Split, train and evaluate at several training fractions.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct MineArgs {
    pub file: PathBuf,
    /// Fraction of transactions, as a decimal or a ratio such as 2/9.
    #[arg(long, value_parser = parse_ratio, default_value = "0.05", conflicts_with = "min_count")]
    pub min_support: f64,
    /// Absolute minimum support count.
    #[arg(long)]
    pub min_count: Option<usize>,
    /// Print association rules with at least this confidence instead of itemsets.
    #[arg(long, value_parser = parse_ratio)]
    pub rules: Option<f64>,
    /// Print only maximal itemsets.
    #[arg(long, conflicts_with = "rules")]
    pub maximal: bool,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ConfigArgs {
    #[arg(long, value_parser = parse_ratio, default_value = "0.05")]
    pub min_support: f64,
    #[arg(long, value_parser = parse_ratio, default_value = "0.75")]
    pub min_confidence: f64,
    #[arg(long, default_value_t = 2)]
    pub min_doc_freq: usize,
    #[arg(long, value_parser = parse_ratio, default_value = "0.5")]
    pub match_threshold: f64,
}

impl From<ConfigArgs> for ModelConfig {
    fn from(a: ConfigArgs) -> Self {
        ModelConfig {
            min_support: a.min_support,
            min_confidence: a.min_confidence,
            min_doc_freq: a.min_doc_freq,
            match_threshold: a.match_threshold,
        }
    }
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    pub corpus: PathBuf,
    #[arg(long)]
    pub model: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub model: PathBuf,
    pub input: Option<PathBuf>,
    /// Score from given counts instead of a document: LABEL:p/pval:n/nval.
    #[arg(long, value_parser = parse_counts)]
    pub scores_from_counts: Vec<CountTuple>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub model: PathBuf,
    pub corpus: PathBuf,
    /// Also write the CSV report here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    pub corpus: PathBuf,
    #[arg(
        long,
        value_parser = parse_ratio,
        value_delimiter = ',',
        default_value = "0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5,0.55"
    )]
    pub fractions: Vec<f64>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Also write the CSV report here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTuple {
    pub label: String,
    pub p: usize,
    pub pval: usize,
    pub n: usize,
    pub nval: usize,
}

/// `0.25`, `1`, or `a/b`.
pub fn parse_ratio(s: &str) -> std::result::Result<f64, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("`{s}` is not a number or ratio"))
    };
    let v = match s.split_once('/') {
        Some((a, b)) => {
            let d = num(b)?;
            if d == 0.0 {
                return Err(format!("`{s}` divides by zero"));
            }
            num(a)? / d
        }
        None => num(s)?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn parse_pair(s: &str) -> Option<(usize, usize)> {
    let (a, b) = s.split_once('/')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

pub fn parse_counts(s: &str) -> std::result::Result<CountTuple, String> {
    let bad = || format!("`{s}` is not LABEL:p/pval:n/nval");
    let mut parts = s.rsplitn(3, ':');
    let (neg, pos, label) = (
        parts.next().ok_or_else(bad)?,
        parts.next().ok_or_else(bad)?,
        parts.next().ok_or_else(bad)?,
    );
    let (p, pval) = parse_pair(pos).ok_or_else(bad)?;
    let (n, nval) = parse_pair(neg).ok_or_else(bad)?;
    if label.is_empty() || p > pval || n > nval {
        return Err(bad());
    }
    Ok(CountTuple {
        label: label.into(),
        p,
        pval,
        n,
        nval,
    })
}

/// Parses the process arguments and runs the command.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out).and_then(|()| out.flush().map_err(|e| AtcError::io("<stdout>", e))) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("atc: {e}");
            if let AtcError::Core(atc_core::Error::NoFeatureSets) = e {
                eprintln!("hint: lower --min-support or --min-doc-freq");
            }
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let stops = || resolve_stopwords(cli.stopwords.as_deref());
    let w = |e| AtcError::io("<stdout>", e);
    match cli.command {
        Command::Mine(a) => mine(&a, out),
        Command::Train(a) => {
            let stops = stops()?;
            train_cmd(&a, &stops, out)
        }
        Command::Classify(a) => {
            let table = load_model(&a.model)?;
            let pred = if a.scores_from_counts.is_empty() {
                let stops = stops()?;
                let (id, text) = read_input(a.input.as_deref())?;
                classify_document(&RawDocument::unlabeled(id, text), &table, &stops)?
            } else {
                let scores = a
                    .scores_from_counts
                    .iter()
                    .map(|t| {
                        let prior = table
                            .prior(&t.label)
                            .ok_or_else(|| atc_core::Error::UnknownClass(t.label.clone()))?;
                        Ok(ClassScore::from_counts(
                            ClassLabel::new(&*t.label)?,
                            t.p,
                            t.pval,
                            t.n,
                            t.nval,
                            prior,
                        ))
                    })
                    .collect::<atc_core::Result<Vec<_>>>()?;
                Prediction::from_scores(scores)?
            };
            write_prediction(&pred, out).map_err(w)
        }
        Command::Evaluate(a) => {
            let stops = stops()?;
            let table = load_model(&a.model)?;
            let loaded = load_corpus(&a.corpus)?;
            let report = evaluate(&table, &loaded.corpus, &stops)?;
            if loaded.skipped > 0 {
                writeln!(out, "skipped {} non-document entries", loaded.skipped).map_err(w)?;
            }
            out.write_all(eval_text(&report).as_bytes()).map_err(w)?;
            if let Some(p) = &a.csv {
                fs::write(p, eval_csv(&report)).map_err(|e| AtcError::io(p, e))?;
            }
            Ok(())
        }
        Command::Sweep(a) => {
            let stops = stops()?;
            let loaded = load_corpus(&a.corpus)?;
            let rows = sweep(
                &loaded.corpus,
                &a.fractions,
                a.seed,
                &stops,
                a.config.into(),
            )?;
            out.write_all(sweep_text(&rows, a.seed).as_bytes())
                .map_err(w)?;
            if let Some(p) = &a.csv {
                fs::write(p, sweep_csv(&rows)).map_err(|e| AtcError::io(p, e))?;
            }
            Ok(())
        }
    }
}

fn read_input(path: Option<&Path>) -> Result<(String, String)> {
    match path {
        Some(p) if p != Path::new("-") => {
            let bytes = fs::read(p).map_err(|e| AtcError::io(p, e))?;
            let text =
                String::from_utf8(bytes).map_err(|_| AtcError::NotUtf8 { path: p.into() })?;
            Ok((p.display().to_string(), text))
        }
        _ => {
            let mut buf = Vec::new();
            io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| AtcError::io("<stdin>", e))?;
            let text = String::from_utf8(buf).map_err(|_| AtcError::NotUtf8 {
                path: "<stdin>".into(),
            })?;
            Ok(("-".into(), text))
        }
    }
}

fn write_prediction(pred: &Prediction, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "{}", pred.label)?;
    for s in &pred.scores {
        writeln!(
            out,
            "{}\t{}\t{}/{}\t{}/{}",
            s.label,
            fmt_sig(s.score),
            s.p,
            s.pval,
            s.n,
            s.nval
        )?;
    }
    Ok(())
}

fn mine(a: &MineArgs, out: &mut dyn Write) -> Result<()> {
    let txs = read_transactions(&a.file)?;
    if txs.is_empty() {
        return Err(AtcError::NoTransactions {
            path: a.file.clone(),
        });
    }
    let support = match a.min_count {
        Some(c) => MinSupport::Count(c),
        None => MinSupport::Fraction(a.min_support),
    };
    let levels = find_frequent_itemsets(&txs, support)?;
    let w = |e| AtcError::io("<stdout>", e);
    if let Some(conf) = a.rules {
        for r in generate_rules(&levels, conf)? {
            writeln!(
                out,
                "{} -> {}\t{}\t{}",
                r.antecedent.join(" "),
                r.consequent.join(" "),
                fmt_sig(r.support),
                fmt_sig(r.confidence)
            )
            .map_err(w)?;
        }
        return Ok(());
    }
    let mut sets: Vec<Itemset> = if a.maximal {
        maximal_itemsets(&levels)
    } else {
        levels.iter().cloned().collect()
    };
    sets.sort_by(|x, y| (x.len(), &x.items).cmp(&(y.len(), &y.items)));
    for s in sets {
        writeln!(out, "{}\t{}", s.items.join(" "), s.count).map_err(w)?;
    }
    Ok(())
}

fn train_cmd(a: &TrainArgs, stops: &StopwordList, out: &mut dyn Write) -> Result<()> {
    let loaded = load_corpus(&a.corpus)?;
    let table = train(&loaded.corpus, stops, a.config.into())?;
    save_model(&table, &a.model)?;
    let w = |e| AtcError::io("<stdout>", e);
    writeln!(out, "documents {}", loaded.corpus.len()).map_err(w)?;
    if loaded.skipped > 0 {
        writeln!(out, "skipped {} non-document entries", loaded.skipped).map_err(w)?;
    }
    writeln!(out, "class\tsets\tprior").map_err(w)?;
    for ((c, n), p) in table
        .classes()
        .iter()
        .zip(table.sets_per_class())
        .zip(table.priors())
    {
        writeln!(out, "{c}\t{n}\t{}", fmt_sig(*p)).map_err(w)?;
        if *n == 0 {
            eprintln!("warning: class `{c}` yielded no word sets");
        }
    }
    writeln!(out, "total\t{}\t1", table.total_sets()).map_err(w)?;
    writeln!(out, "model written to {}", a.model.display()).map_err(w)?;
    Ok(())
}
