//! Plain-text and CSV reports.

use atc_core::{EvalReport, SweepRow};

/// Formats with six significant digits, dropping trailing zeros.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    // the exponent after rounding to six digits, so 9.999996 counts as 10
    let sci = format!("{x:.5e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    let decimals = (5 - exp).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_owned();
    }
    s
}

/// Per-class accuracy table.
pub fn eval_text(report: &EvalReport) -> String {
    let width = report
        .per_class
        .iter()
        .map(|t| t.label.len())
        .max()
        .unwrap_or(0)
        .max(5);
    let mut out = format!(
        "{:<width$}  {:>6}  {:>7}  {:>10}\n",
        "class", "tested", "correct", "accuracy %"
    );
    for t in &report.per_class {
        let pct = if t.tested == 0 {
            0.0
        } else {
            100.0 * t.correct as f64 / t.tested as f64
        };
        out.push_str(&format!(
            "{:<width$}  {:>6}  {:>7}  {:>10}\n",
            t.label,
            t.tested,
            t.correct,
            fmt_sig(pct)
        ));
    }
    out.push_str(&format!(
        "{:<width$}  {:>6}  {:>7}  {:>10}\n",
        "total",
        report.total_tested,
        report.total_correct,
        fmt_sig(report.accuracy_percent)
    ));
    out
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w).expect("writing to memory");
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is UTF-8")
}

/// `class,tested,correct` rows and a `total` footer.
pub fn eval_csv(report: &EvalReport) -> String {
    csv_string(|w| {
        w.write_record(["class", "tested", "correct"])?;
        for t in &report.per_class {
            w.write_record([
                t.label.as_str(),
                &t.tested.to_string(),
                &t.correct.to_string(),
            ])?;
        }
        w.write_record([
            "total",
            &report.total_tested.to_string(),
            &report.total_correct.to_string(),
        ])
    })
}

pub fn sweep_text(rows: &[SweepRow], seed: u64) -> String {
    let mut out = format!("seed {seed}\n");
    out.push_str(&format!(
        "{:>8}  {:>5}  {:>6}  {:>7}  {:>10}\n",
        "train %", "train", "tested", "correct", "accuracy %"
    ));
    for r in rows {
        out.push_str(&format!(
            "{:>8}  {:>5}  {:>6}  {:>7}  {:>10}\n",
            fmt_sig(100.0 * r.train_fraction),
            r.train_docs,
            r.report.total_tested,
            r.report.total_correct,
            fmt_sig(r.accuracy_percent())
        ));
    }
    out
}

/// `train_fraction,accuracy_percent`, one row per fraction.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    csv_string(|w| {
        w.write_record(["train_fraction", "accuracy_percent"])?;
        for r in rows {
            w.write_record([fmt_sig(r.train_fraction), fmt_sig(r.accuracy_percent())])?;
        }
        Ok(())
    })
}
