//! Edge-list reading and writing.
//!
//! Two encodings share one schema, `src,dst,timestamp,sentiment`:
//!
//! * CSV with that header; lines starting with `#` are comments.
//! * JSON lines, one object per line with the same keys.
//!
//! `src`/`dst` are non-negative integer user ids, `timestamp` is epoch
//! seconds (fractional values are truncated) and `sentiment` is -1, 0 or 1.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{EdgeRecord, Sentiment, TemporalMultigraph, Timestamp};

pub const CSV_HEADER: [&str; 4] = ["src", "dst", "timestamp", "sentiment"];

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EdgeFormat {
    Csv,
    JsonLines,
}

impl EdgeFormat {
    /// `.jsonl`/`.ndjson` select JSON lines, anything else CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl") | Some("ndjson") => EdgeFormat::JsonLines,
            _ => EdgeFormat::Csv,
        }
    }
}

pub fn read_edge_file(path: impl AsRef<Path>) -> Result<TemporalMultigraph> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let records = match EdgeFormat::from_path(path) {
        EdgeFormat::Csv => parse_csv(file)?,
        EdgeFormat::JsonLines => parse_jsonl(BufReader::new(file))?,
    };
    Ok(TemporalMultigraph::from_records(records))
}

fn parse_id(field: &str, line: usize, name: &str) -> Result<u64> {
    field.trim().parse().map_err(|_| Error::Parse {
        line,
        message: format!("{name} {field:?} is not a non-negative integer"),
    })
}

fn parse_timestamp(field: &str, line: usize) -> Result<Timestamp> {
    let field = field.trim();
    if let Ok(t) = field.parse::<i64>() {
        return Ok(t);
    }
    match field.parse::<f64>() {
        Ok(t) if t.is_finite() => Ok(t.trunc() as i64),
        _ => Err(Error::Parse {
            line,
            message: format!("timestamp {field:?} is not a number"),
        }),
    }
}

fn parse_sentiment(field: &str, line: usize) -> Result<Sentiment> {
    field
        .trim()
        .parse::<i64>()
        .ok()
        .and_then(|v| Sentiment::try_from(v).ok())
        .ok_or_else(|| Error::InvalidSentiment {
            line,
            value: field.to_string(),
        })
}

pub fn parse_csv(reader: impl Read) -> Result<Vec<EdgeRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let mut cols = [0usize; 4];
    for (slot, name) in cols.iter_mut().zip(CSV_HEADER) {
        *slot = headers.iter().position(|h| h == name).ok_or_else(|| Error::Parse {
            line: 1,
            message: format!("missing column {name:?}"),
        })?;
    }

    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
            Error::Parse {
                line,
                message: e.to_string(),
            }
        })?;
        let line = row.position().map(|p| p.line() as usize).unwrap_or(0);
        let get = |i: usize| row.get(cols[i]).unwrap_or("");
        out.push(EdgeRecord {
            src: parse_id(get(0), line, "src")?,
            dst: parse_id(get(1), line, "dst")?,
            timestamp: parse_timestamp(get(2), line)?,
            sentiment: parse_sentiment(get(3), line)?,
        });
    }
    Ok(out)
}

pub fn parse_jsonl(reader: impl BufRead) -> Result<Vec<EdgeRecord>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        let field = |name: &str| -> Result<String> {
            match value.get(name) {
                Some(Value::Number(n)) => Ok(n.to_string()),
                Some(Value::String(s)) => Ok(s.clone()),
                _ => Err(Error::Parse {
                    line: line_no,
                    message: format!("missing or non-scalar key {name:?}"),
                }),
            }
        };
        out.push(EdgeRecord {
            src: parse_id(&field("src")?, line_no, "src")?,
            dst: parse_id(&field("dst")?, line_no, "dst")?,
            timestamp: parse_timestamp(&field("timestamp")?, line_no)?,
            sentiment: parse_sentiment(&field("sentiment")?, line_no)?,
        });
    }
    Ok(out)
}

pub fn write_csv(g: &TemporalMultigraph, writer: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CSV_HEADER)?;
    for r in g.records() {
        w.write_record([
            r.src.to_string(),
            r.dst.to_string(),
            r.timestamp.to_string(),
            i64::from(r.sentiment).to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

pub fn write_jsonl(g: &TemporalMultigraph, mut writer: impl Write) -> Result<()> {
    for r in g.records() {
        let obj = serde_json::json!({
            "src": r.src,
            "dst": r.dst,
            "timestamp": r.timestamp,
            "sentiment": i64::from(r.sentiment),
        });
        writeln!(writer, "{obj}").map_err(|e| Error::io("<jsonl>", e))?;
    }
    Ok(())
}

/// Writes `g` to `path` in the requested encoding.
pub fn export(g: &TemporalMultigraph, path: impl AsRef<Path>, format: EdgeFormat) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    match format {
        EdgeFormat::Csv => write_csv(g, &mut w)?,
        EdgeFormat::JsonLines => write_jsonl(g, &mut w)?,
    }
    w.flush().map_err(|e| Error::io(path, e))
}
