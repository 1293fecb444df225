//! Report serialization.
//!
//! JSON carries the full [`RunReport`] structure. CSV is the flat,
//! plot-ready form: the first line is a `#` comment naming the schema
//! version and columns, followed by the header row and, per query, one
//! `combo` row for each parameter combination and one `query` row with the
//! averages over successful combinations. A final `aggregate` row per
//! report holds the run means and `q_hit`. Several reports (a decay sweep)
//! share one header and are told apart by `decay_kind` / `decay_rate`.
//!
//! Missing values are empty cells. An infinite diameter, or any score of a
//! timed-out combination, is the literal `INF`.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::harness::{ComboOutcome, Means, Measured, RunReport};
use crate::search::{format_params, NotFoundReason};
use crate::structural::INF;

pub const SCHEMA_VERSION: u32 = 1;

pub const COLUMNS: [&str; 25] = [
    "row_type",
    "algorithm",
    "decay_kind",
    "decay_rate",
    "lambda0",
    "query",
    "query_ext",
    "params",
    "status",
    "reason",
    "note",
    "d",
    "size",
    "deg_min",
    "core",
    "truss",
    "ei",
    "sit",
    "ced",
    "gip",
    "gid",
    "gip_empty",
    "n_members",
    "n_events",
    "q_hit",
];

/// Score columns, `d` through `n_events`.
const SCORE_COLUMNS: std::ops::Range<usize> = 11..24;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::Config(format!("unknown report format {other:?}"))),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        })
    }
}

/// The schema comment line, without the trailing newline.
pub fn schema_line() -> String {
    format!("# cohesion-report schema={SCHEMA_VERSION} columns={}", COLUMNS.join(","))
}

fn num(x: f64) -> String {
    if x.is_infinite() && x > 0.0 {
        INF.to_string()
    } else {
        x.to_string()
    }
}

fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

type Row = [String; COLUMNS.len()];

fn base_row(report: &RunReport, row_type: &str) -> Row {
    let mut row: Row = Default::default();
    row[0] = row_type.to_string();
    row[1] = report.plan.algorithm.id().to_string();
    row[2] = match report.plan.decay.kind {
        crate::decay::DecayKind::Exponential => "exponential",
        crate::decay::DecayKind::Polynomial => "polynomial",
    }
    .to_string();
    row[3] = num(report.plan.decay.rate);
    row[4] = num(report.plan.excitation.lambda0);
    row
}

fn fill_measured(row: &mut Row, m: &Measured) {
    let s = &m.structural;
    row[11] = s.diameter.to_string();
    row[12] = s.size.to_string();
    row[13] = s.deg_min.to_string();
    row[14] = s.core.to_string();
    row[15] = s.truss.to_string();
    row[16] = num(m.ei);
    row[17] = num(m.sit);
    row[18] = num(m.ced);
    row[19] = num(m.gip);
    row[20] = opt_num(m.gid);
    row[21] = m.gip_empty.to_string();
    row[22] = m.n_members.to_string();
    row[23] = m.n_events.to_string();
}

fn fill_means(row: &mut Row, m: &Means) {
    row[11] = num(m.d);
    row[12] = num(m.size);
    row[13] = num(m.deg_min);
    row[14] = num(m.core);
    row[15] = num(m.truss);
    row[16] = num(m.ei);
    row[17] = num(m.sit);
    row[18] = num(m.ced);
    row[19] = num(m.gip);
    row[20] = opt_num(m.gid);
}

fn fill_inf(row: &mut Row) {
    for cell in &mut row[SCORE_COLUMNS] {
        *cell = INF.to_string();
    }
}

fn report_rows(report: &RunReport) -> Vec<Row> {
    let mut rows = Vec::new();
    for rec in &report.records {
        for combo in &rec.combos {
            let mut row = base_row(report, "combo");
            row[5] = rec.query.to_string();
            row[6] = rec.query_ext.to_string();
            row[7] = format_params(&combo.params);
            match &combo.outcome {
                ComboOutcome::Found { note, scores } => {
                    row[8] = "found".into();
                    row[10] = note.clone().unwrap_or_default();
                    fill_measured(&mut row, scores);
                }
                ComboOutcome::NotFound { reason } => {
                    row[8] = "not-found".into();
                    row[9] = reason.as_str().into();
                    if *reason == NotFoundReason::TimedOut {
                        fill_inf(&mut row);
                    }
                }
            }
            rows.push(row);
        }
        let mut row = base_row(report, "query");
        row[5] = rec.query.to_string();
        row[6] = rec.query_ext.to_string();
        row[8] = if rec.hit { "hit" } else { "miss" }.into();
        if let Some(m) = &rec.mean {
            fill_means(&mut row, m);
        }
        rows.push(row);
    }
    if !report.records.is_empty() {
        let mut row = base_row(report, "aggregate");
        if report.timed_out {
            row[9] = NotFoundReason::TimedOut.as_str().into();
            fill_inf(&mut row);
        } else if let Some(m) = &report.aggregate {
            fill_means(&mut row, m);
        }
        row[24] = num(report.q_hit);
        rows.push(row);
    }
    rows
}

pub fn write_csv(reports: &[RunReport], mut writer: impl Write) -> Result<()> {
    writeln!(writer, "{}", schema_line()).map_err(csv::Error::from)?;
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(COLUMNS)?;
    for report in reports {
        for row in report_rows(report) {
            w.write_record(&row)?;
        }
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// A single report is written as an object, several as an array.
pub fn write_json(reports: &[RunReport], mut writer: impl Write) -> Result<()> {
    match reports {
        [one] => serde_json::to_writer_pretty(&mut writer, one)?,
        many => serde_json::to_writer_pretty(&mut writer, many)?,
    }
    writer.write_all(b"\n").map_err(serde_json::Error::io)?;
    Ok(())
}

pub fn write_reports(reports: &[RunReport], format: ReportFormat, writer: impl Write) -> Result<()> {
    match format {
        ReportFormat::Csv => write_csv(reports, writer),
        ReportFormat::Json => write_json(reports, writer),
    }
}

pub fn emit_report(report: &RunReport, format: ReportFormat, path: impl AsRef<Path>) -> Result<()> {
    emit_reports(std::slice::from_ref(report), format, path)
}

pub fn emit_reports(reports: &[RunReport], format: ReportFormat, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    write_reports(reports, format, &mut out)?;
    out.flush().map_err(|e| Error::io(path, e))
}

/// Parses JSON written by [`write_json`]: one report or an array of them.
pub fn parse_json(mut reader: impl Read) -> Result<Vec<RunReport>> {
    #[derive(serde::Deserialize)]
    #[serde(untagged)]
    enum OneOrMany {
        One(Box<RunReport>),
        Many(Vec<RunReport>),
    }
    let mut text = String::new();
    reader.read_to_string(&mut text).map_err(serde_json::Error::io)?;
    Ok(match serde_json::from_str(&text)? {
        OneOrMany::One(r) => vec![*r],
        OneOrMany::Many(v) => v,
    })
}

pub fn read_json(path: impl AsRef<Path>) -> Result<Vec<RunReport>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_json(std::io::BufReader::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_line_lists_columns() {
        let line = schema_line();
        assert!(line.starts_with("# cohesion-report schema=1 columns=row_type,"));
        assert!(line.ends_with(",q_hit"));
        assert_eq!(COLUMNS[SCORE_COLUMNS.start], "d");
        assert_eq!(COLUMNS[SCORE_COLUMNS.end - 1], "n_events");
    }

    #[test]
    fn empty_csv_is_header_only() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1], COLUMNS.join(","));
    }

    #[test]
    fn format_names() {
        assert_eq!("csv".parse::<ReportFormat>().unwrap(), ReportFormat::Csv);
        assert_eq!("json".parse::<ReportFormat>().unwrap(), ReportFormat::Json);
        assert!("xml".parse::<ReportFormat>().is_err());
    }
}
