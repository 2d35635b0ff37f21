//! Canonical text and JSON encodings of a single trapezoid.
//!
//! Text is three newline-terminated lines:
//!
//! ```text
//! magog 3 0
//! 1 1
//! 1 1 1
//! ```
//!
//! JSON is one compact object per line with the fields `kind`, `n`, `ell`,
//! `row1`, `row2` in that order. Streams are concatenated text blocks or
//! JSON lines. Serializing a parsed canonical document reproduces it byte for
//! byte.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::trapezoid::{Entry, Kind, Trapezoid, TrapezoidParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected `text` or `json`)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    kind: Kind,
    n: usize,
    ell: i64,
    row1: Vec<Entry>,
    row2: Vec<Entry>,
}

impl From<&Trapezoid> for Record {
    fn from(t: &Trapezoid) -> Self {
        let params = t.params();
        Record {
            kind: t.kind(),
            n: params.n,
            ell: params.ell,
            row1: t.row1().to_vec(),
            row2: t.row2().to_vec(),
        }
    }
}

impl From<Record> for Trapezoid {
    fn from(r: Record) -> Self {
        Trapezoid::new(r.kind, TrapezoidParams { n: r.n, ell: r.ell }, r.row1, r.row2)
    }
}

fn join_row(row: &[Entry]) -> String {
    let mut out = String::new();
    for (idx, v) in row.iter().enumerate() {
        if idx > 0 {
            out.push(' ');
        }
        out.push_str(&v.to_string());
    }
    out
}

pub fn to_text(t: &Trapezoid) -> String {
    let params = t.params();
    format!(
        "{} {} {}\n{}\n{}\n",
        t.kind(),
        params.n,
        params.ell,
        join_row(t.row1()),
        join_row(t.row2())
    )
}

/// Compact JSON object followed by a newline.
pub fn to_json(t: &Trapezoid) -> String {
    let mut s = serde_json::to_string(&Record::from(t)).expect("record serialization cannot fail");
    s.push('\n');
    s
}

pub fn to_json_value(t: &Trapezoid) -> serde_json::Value {
    serde_json::to_value(Record::from(t)).expect("record serialization cannot fail")
}

pub fn serialize(t: &Trapezoid, format: Format) -> String {
    match format {
        Format::Text => to_text(t),
        Format::Json => to_json(t),
    }
}

fn parse_row(text: &str, line: usize) -> Result<Vec<Entry>, ParseError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<Entry>()
                .map_err(|_| ParseError::new(line, format!("`{tok}` is not an integer")))
        })
        .collect()
}

fn parse_header(text: &str, line: usize) -> Result<(Kind, TrapezoidParams), ParseError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let [kind, n, ell] = tokens[..] else {
        return Err(ParseError::new(line, "header must be `<kind> <n> <ell>`"));
    };
    let kind = kind.parse::<Kind>().map_err(|e| ParseError::new(line, e))?;
    let n = n
        .parse::<usize>()
        .map_err(|_| ParseError::new(line, format!("`{n}` is not a valid n")))?;
    let ell = ell
        .parse::<i64>()
        .map_err(|_| ParseError::new(line, format!("`{ell}` is not a valid ell")))?;
    Ok((kind, TrapezoidParams { n, ell }))
}

fn parse_block(lines: &[&str], first_line: usize) -> Result<Trapezoid, ParseError> {
    let (kind, params) = parse_header(lines[0], first_line)?;
    let row1 = parse_row(lines[1], first_line + 1)?;
    let row2 = parse_row(lines[2], first_line + 2)?;
    Ok(Trapezoid::new(kind, params, row1, row2))
}

/// Reads every three-line text block in `input`.
pub fn parse_text_stream(input: &str) -> Result<Vec<Trapezoid>, ParseError> {
    let lines: Vec<&str> = input.lines().collect();
    if !lines.len().is_multiple_of(3) {
        return Err(ParseError::new(
            lines.len() + 1,
            format!("expected blocks of 3 lines, found {} lines", lines.len()),
        ));
    }
    lines
        .chunks(3)
        .enumerate()
        .map(|(idx, block)| parse_block(block, idx * 3 + 1))
        .collect()
}

pub fn parse_text(input: &str) -> Result<Trapezoid, ParseError> {
    let mut all = parse_text_stream(input)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        0 => Err(ParseError::new(1, "empty input")),
        more => Err(ParseError::new(4, format!("expected one trapezoid, found {more}"))),
    }
}

pub fn parse_json_line(line: &str, line_no: usize) -> Result<Trapezoid, ParseError> {
    serde_json::from_str::<Record>(line)
        .map(Trapezoid::from)
        .map_err(|e| ParseError::new(line_no, e.to_string()))
}

/// Reads a JSON-lines stream, skipping blank lines.
pub fn parse_json_stream(input: &str) -> Result<Vec<Trapezoid>, ParseError> {
    input
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(idx, l)| parse_json_line(l, idx + 1))
        .collect()
}

pub fn parse_json(input: &str) -> Result<Trapezoid, ParseError> {
    serde_json::from_str::<Record>(input)
        .map(Trapezoid::from)
        .map_err(|e| ParseError::new(e.line(), e.to_string()))
}

/// Guesses the format from the first non-blank character.
pub fn detect_format(input: &str) -> Format {
    if input.trim_start().starts_with('{') {
        Format::Json
    } else {
        Format::Text
    }
}

pub fn parse(input: &str, format: Format) -> Result<Trapezoid, ParseError> {
    match format {
        Format::Text => parse_text(input),
        Format::Json => parse_json(input),
    }
}

pub fn parse_auto(input: &str) -> Result<(Trapezoid, Format), ParseError> {
    let format = detect_format(input);
    parse(input, format).map(|t| (t, format))
}

pub fn parse_stream(input: &str, format: Format) -> Result<Vec<Trapezoid>, ParseError> {
    match format {
        Format::Text => parse_text_stream(input),
        Format::Json => parse_json_stream(input),
    }
}
