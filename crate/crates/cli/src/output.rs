// SPDX-License-Identifier: Apache-2.0

use permlab::harness::ConjectureReport;
use serde::Serialize;

use crate::args::OutputFormat;

/// `x` rounded to 6 significant digits, printed without trailing zeros.
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.5e}").parse().expect("float literal");
    if rounded != 0.0 && (rounded.abs() >= 1e15 || rounded.abs() < 1e-4) {
        let s = format!("{rounded:e}");
        return s;
    }
    let s = format!("{rounded}");
    if s == "-0" { "0".into() } else { s }
}

pub fn report_line(label: &str, r: &ConjectureReport) -> String {
    let verdict = format!("{:?}", r.verdict).to_lowercase();
    let mut line = format!(
        "{} {label}: {verdict}, margin {} (lhs {}, rhs {})",
        r.conjecture_id,
        sig6(r.margin),
        sig6(r.lhs),
        sig6(r.rhs)
    );
    if let Some(w) = &r.witness {
        line.push_str(&format!(" {w}"));
    }
    if let Some(f) = &r.flag {
        line.push_str(&format!(" [FLAGGED: {f}]"));
    }
    line
}

/// Collects output records and prints them in the chosen format: human
/// lines, one JSON document (the record itself, or an array when there are
/// several), or one JSON object per line.
pub struct Emitter {
    format: OutputFormat,
    human: Vec<String>,
    records: Vec<String>,
}

impl Emitter {
    pub fn new(format: OutputFormat) -> Self {
        Emitter { format, human: Vec::new(), records: Vec::new() }
    }

    pub fn format(&self) -> OutputFormat {
        self.format
    }

    /// Human-only line, such as a table header or a summary.
    pub fn note(&mut self, line: impl Into<String>) {
        self.human.push(line.into());
    }

    pub fn record<T: Serialize>(&mut self, human: impl Into<String>, value: &T) {
        self.human.push(human.into());
        self.records.push(serde_json::to_string(value).expect("serializable"));
    }

    pub fn finish(self) {
        match self.format {
            OutputFormat::Human => self.human.iter().for_each(|l| println!("{l}")),
            OutputFormat::JsonLines => self.records.iter().for_each(|l| println!("{l}")),
            OutputFormat::Json => match self.records.len() {
                1 => println!("{}", self.records[0]),
                _ => println!("[{}]", self.records.join(",")),
            },
        }
    }
}
