//! Reading one numeric column out of a delimited text file.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use minshift_core::Sample;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

/// Which field of each row holds the observations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Column {
    Index(usize),
    Name(String),
}

impl Default for Column {
    fn default() -> Self {
        Column::Index(0)
    }
}

/// Loads the first column of `path`.
///
/// Accepts one value per row with an optional single header line. Fields may
/// be separated by `,` or `;` (sniffed from the first line); the decimal
/// separator is always `.`.
pub fn load_csv(path: impl AsRef<Path>) -> Result<Sample> {
    load_column(path, &Column::default())
}

pub fn load_column(path: impl AsRef<Path>, column: &Column) -> Result<Sample> {
    let path = path.as_ref();
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| HarnessError::io(path, e))?;
    parse_column(&text, column).map_err(|e| match e {
        ParseFailure::Empty => HarnessError::EmptyFile { path: path.into() },
        ParseFailure::At { line, message } => HarnessError::Parse {
            path: path.into(),
            line,
            message,
        },
    })
}

/// Parses in-memory text with the same rules as [`load_column`].
pub fn parse_text(text: &str, column: &Column) -> Result<Sample> {
    parse_column(text, column).map_err(|e| match e {
        ParseFailure::Empty => HarnessError::EmptyFile { path: "<memory>".into() },
        ParseFailure::At { line, message } => HarnessError::Parse {
            path: "<memory>".into(),
            line,
            message,
        },
    })
}

#[derive(Debug, PartialEq)]
enum ParseFailure {
    Empty,
    At { line: u64, message: String },
}

fn sniff_delimiter(text: &str) -> u8 {
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    if first.matches(';').count() > first.matches(',').count() {
        b';'
    } else {
        b','
    }
}

fn parse_column(text: &str, column: &Column) -> Result<Sample, ParseFailure> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .delimiter(sniff_delimiter(text))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let mut index = match column {
        Column::Index(i) => Some(*i),
        Column::Name(_) => None,
    };
    let mut values = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| ParseFailure::At {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(row as u64 + 1, |p| p.line());
        if row == 0 {
            if let Column::Name(name) = column {
                let found = record.iter().position(|h| h == name.as_str());
                index = Some(found.ok_or_else(|| ParseFailure::At {
                    line,
                    message: format!("no column named `{name}` in header"),
                })?);
                continue;
            }
        }
        let i = index.unwrap_or(0);
        let field = record.get(i).ok_or_else(|| ParseFailure::At {
            line,
            message: format!("row has {} fields, column {i} requested", record.len()),
        })?;
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            Ok(v) => {
                return Err(ParseFailure::At {
                    line,
                    message: format!("non-finite value {v}"),
                })
            }
            // a non-numeric first row is the header
            Err(_) if row == 0 => {}
            Err(_) => {
                return Err(ParseFailure::At {
                    line,
                    message: format!("cannot parse `{field}` as a number"),
                })
            }
        }
    }
    if values.is_empty() {
        return Err(ParseFailure::Empty);
    }
    Ok(Sample::new(values).expect("values are finite and nonempty"))
}
