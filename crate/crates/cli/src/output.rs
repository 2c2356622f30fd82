//! Rendering of flat records as JSON, CSV, or aligned plain text.
//!
//! Plain text is derived from the CSV rendering so that both share field order
//! and number formatting (shortest round-trip decimal, `.` separator).

use std::fmt;
use std::str::FromStr;

use anyhow::Result;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Plain,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "plain" => Ok(Format::Plain),
            other => Err(format!(
                "unknown format `{other}` (expected json, csv, plain)"
            )),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Plain => "plain",
        })
    }
}

/// Renders one record (`single`) or a list of records.
pub fn render<T: Serialize>(records: &[T], single: bool, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut text = if single && records.len() == 1 {
                serde_json::to_string_pretty(&records[0])?
            } else {
                serde_json::to_string_pretty(records)?
            };
            text.push('\n');
            Ok(text)
        }
        Format::Csv => csv_text(records),
        Format::Plain => {
            let (header, rows) = csv_cells(records)?;
            Ok(if single && rows.len() == 1 {
                key_value(&header, &rows[0])
            } else {
                aligned(&header, &rows)
            })
        }
    }
}

fn csv_text<T: Serialize>(records: &[T]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for r in records {
        writer.serialize(r)?;
    }
    Ok(String::from_utf8(writer.into_inner()?)?)
}

fn csv_cells<T: Serialize>(records: &[T]) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let text = csv_text(records)?;
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers()?.iter().map(str::to_owned).collect();
    let rows = reader
        .records()
        .map(|r| r.map(|r| r.iter().map(str::to_owned).collect()))
        .collect::<Result<_, _>>()?;
    Ok((header, rows))
}

fn key_value(header: &[String], row: &[String]) -> String {
    let width = header.iter().map(String::len).max().unwrap_or(0);
    header
        .iter()
        .zip(row)
        .map(|(k, v)| format!("{k:<width$} = {}\n", if v.is_empty() { "-" } else { v }))
        .collect()
}

fn aligned(header: &[String], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            rows.iter()
                .map(|r| r[c].len())
                .chain([header[c].len(), 1])
                .max()
                .unwrap()
        })
        .collect();
    let line = |cells: &[String]| {
        let joined: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{:<w$}", if c.is_empty() { "-" } else { c }))
            .collect();
        format!("{}\n", joined.join("  ").trim_end())
    };
    let mut out = line(header);
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        name: &'static str,
        value: f64,
        extra: Option<u32>,
    }

    #[test]
    fn csv_keeps_field_order_and_precision() {
        let rows = [Row {
            name: "a",
            value: 0.1 + 0.2,
            extra: None,
        }];
        let text = render(&rows, true, Format::Csv).unwrap();
        assert_eq!(text, "name,value,extra\na,0.30000000000000004,\n");
    }

    #[test]
    fn plain_single_is_key_value() {
        let rows = [Row {
            name: "a",
            value: 1.5,
            extra: Some(3),
        }];
        let text = render(&rows, true, Format::Plain).unwrap();
        assert_eq!(text, "name  = a\nvalue = 1.5\nextra = 3\n");
    }

    #[test]
    fn plain_table_aligns() {
        let rows = [
            Row {
                name: "a",
                value: 1.5,
                extra: None,
            },
            Row {
                name: "bbb",
                value: 2.0,
                extra: Some(1),
            },
        ];
        let text = render(&rows, false, Format::Plain).unwrap();
        assert_eq!(text, "name  value  extra\na     1.5    -\nbbb   2.0    1\n");
    }

    #[test]
    fn json_single_and_list() {
        let rows = [Row {
            name: "a",
            value: 1.0,
            extra: None,
        }];
        let one: serde_json::Value =
            serde_json::from_str(&render(&rows, true, Format::Json).unwrap()).unwrap();
        assert!(one.is_object());
        let many: serde_json::Value =
            serde_json::from_str(&render(&rows, false, Format::Json).unwrap()).unwrap();
        assert!(many.is_array());
    }
}
