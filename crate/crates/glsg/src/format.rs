//! Cayley table file formats.
//!
//! Text: the first line holds `n`, followed by `n` lines of `n` space-separated
//! 1-based entries. JSON: `{"n": 3, "table": [[3,3,3],[3,3,3],[3,3,3]]}`.

use glsg_core::{CayleyTable, TableError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("ParseError line={line} {message}")]
    Parse { line: usize, message: String },
    #[error("JsonError {0}")]
    Json(#[from] serde_json::Error),
    #[error("OrderMismatch declared={declared} rows={rows}")]
    OrderMismatch { declared: usize, rows: usize },
    #[error(transparent)]
    Table(#[from] TableError),
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonTable {
    n: usize,
    table: Vec<Vec<i64>>,
}

pub fn parse_text(input: &str) -> Result<CayleyTable, FormatError> {
    let mut lines = input.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(FormatError::Parse {
        line: 1,
        message: "missing order".into(),
    })?;
    let n: usize = header.trim().parse().map_err(|_| FormatError::Parse {
        line: 1,
        message: format!("bad order {:?}", header.trim()),
    })?;
    let mut rows = Vec::with_capacity(n);
    for (idx, line) in lines {
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>().map_err(|_| FormatError::Parse {
                    line: idx + 1,
                    message: format!("bad entry {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(FormatError::OrderMismatch {
            declared: n,
            rows: rows.len(),
        });
    }
    Ok(CayleyTable::from_rows_one_based(&rows)?)
}

pub fn write_text(table: &CayleyTable) -> String {
    let mut out = format!("{}\n", table.order());
    for row in table.rows_one_based() {
        let line: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_json(input: &str) -> Result<CayleyTable, FormatError> {
    let raw: JsonTable = serde_json::from_str(input)?;
    if raw.table.len() != raw.n {
        return Err(FormatError::OrderMismatch {
            declared: raw.n,
            rows: raw.table.len(),
        });
    }
    Ok(CayleyTable::from_rows_one_based(&raw.table)?)
}

pub fn table_json_value(table: &CayleyTable) -> serde_json::Value {
    serde_json::json!({ "n": table.order(), "table": table.rows_one_based() })
}

pub fn write_json(table: &CayleyTable) -> String {
    table_json_value(table).to_string()
}

/// JSON when the first non-blank character is `{`, text otherwise.
pub fn parse_auto(input: &str) -> Result<CayleyTable, FormatError> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_exact_bytes() {
        let t = CayleyTable::null(3);
        assert_eq!(write_text(&t), "3\n3 3 3\n3 3 3\n3 3 3\n");
        assert_eq!(parse_text("3\n3 3 3\n3 3 3\n3 3 3\n").unwrap(), t);
        let band = CayleyTable::rectangular_band(2, 2);
        assert_eq!(parse_auto(&write_text(&band)).unwrap(), band);
    }

    #[test]
    fn json_exact_bytes() {
        let t = CayleyTable::cyclic_group(2);
        assert_eq!(write_json(&t), r#"{"n":2,"table":[[1,2],[2,1]]}"#);
        assert_eq!(parse_auto(r#"{"n": 2, "table": [[1,2],[2,1]]}"#).unwrap(), t);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_text(""), Err(FormatError::Parse { line: 1, .. })));
        assert!(matches!(parse_text("x\n"), Err(FormatError::Parse { line: 1, .. })));
        assert!(matches!(parse_text("2\n1 a\n1 1\n"), Err(FormatError::Parse { line: 2, .. })));
        assert!(matches!(
            parse_text("2\n1 1\n"),
            Err(FormatError::OrderMismatch { declared: 2, rows: 1 })
        ));
        let err = parse_text("2\n2 1\n1 1\n").unwrap_err();
        assert_eq!(err.to_string(), "NotAssociative i=1 j=1 k=2");
        assert!(matches!(
            parse_json(r#"{"n": 2, "table": [[1,3],[1,1]]}"#),
            Err(FormatError::Table(TableError::EntryOutOfRange { i: 1, j: 2, value: 3 }))
        ));
        assert!(matches!(parse_json("{"), Err(FormatError::Json(_))));
    }
}
