//! Cayley table files.
//!
//! JSON: `{"n": int|null, "labels": [...], "table": [[...], ...]}` on one line.
//! CSV: a header row of labels, then one row of indices per element.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Json,
    Csv,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    n: Option<usize>,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
}

pub fn export_table(s: &FiniteSemigroup, format: TableFormat) -> Result<Vec<u8>> {
    match format {
        TableFormat::Json => {
            let file = TableFile {
                n: s.n(),
                labels: s.labels().to_vec(),
                table: s.rows(),
            };
            let mut out =
                serde_json::to_vec(&file).map_err(|e| Error::Validation(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io_err = |e: csv::Error| Error::Validation(e.to_string());
            w.write_record(s.labels()).map_err(io_err)?;
            for row in s.rows() {
                w.write_record(row.iter().map(|x| x.to_string()))
                    .map_err(io_err)?;
            }
            w.into_inner().map_err(|e| Error::Validation(e.to_string()))
        }
    }
}

/// Reads either format, sniffing JSON by its leading `{`.
pub fn import_table(bytes: &[u8]) -> Result<FiniteSemigroup> {
    let first = bytes.iter().find(|b| !b.is_ascii_whitespace());
    if first == Some(&b'{') {
        import_json(bytes)
    } else {
        import_csv(bytes)
    }
}

fn import_json(bytes: &[u8]) -> Result<FiniteSemigroup> {
    let file: TableFile = serde_json::from_slice(bytes).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    FiniteSemigroup::from_table(file.n, file.labels, file.table)
}

fn import_csv(bytes: &[u8]) -> Result<FiniteSemigroup> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(bytes);
    let mut labels: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record.map_err(|e| {
            let (line, column) = e
                .position()
                .map(|p| (p.line() as usize, p.byte() as usize))
                .unwrap_or((0, 0));
            Error::Parse {
                line,
                column,
                message: e.to_string(),
            }
        })?;
        if labels.is_none() {
            labels = Some(record.iter().map(str::to_owned).collect());
            continue;
        }
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        let row = record
            .iter()
            .enumerate()
            .map(|(col, field)| {
                field.trim().parse::<usize>().map_err(|e| Error::Parse {
                    line,
                    column: col + 1,
                    message: format!("{field:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let labels = labels.ok_or(Error::Parse {
        line: 1,
        column: 0,
        message: "empty file".into(),
    })?;
    FiniteSemigroup::from_table(None, labels, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brandt::{bn_elements, BnElement};

    fn b2() -> FiniteSemigroup {
        FiniteSemigroup::from_elements(&bn_elements(2).unwrap(), |x: &BnElement, y| *x + *y)
            .unwrap()
            .with_n(Some(2))
    }

    #[test]
    fn round_trips() {
        let s = b2();
        for format in [TableFormat::Json, TableFormat::Csv] {
            let bytes = export_table(&s, format).unwrap();
            let back = import_table(&bytes).unwrap();
            assert_eq!(back.labels(), s.labels());
            assert_eq!(back.rows(), s.rows());
            assert_eq!(
                export_table(&back.clone().with_n(s.n()), format).unwrap(),
                bytes
            );
        }
        let json = String::from_utf8(export_table(&s, TableFormat::Json).unwrap()).unwrap();
        assert!(json.starts_with(r#"{"n":2,"labels":["0","(1,1)","(1,2)""#));
        let csv = String::from_utf8(export_table(&s, TableFormat::Csv).unwrap()).unwrap();
        assert!(csv.starts_with("0,\"(1,1)\",\"(1,2)\""));
    }

    #[test]
    fn malformed_input() {
        let err = import_table(b"{\"n\": 2,\n \"labels\": [}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = import_table(b"a,b\n0,1\n1,x\n").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 3,
                    column: 2,
                    ..
                }
            ),
            "{err:?}"
        );
        let err = import_table(b"a,b\n0,1\n").unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
        let err = import_table(b"a,b\n1,0\n0,0\n").unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "{err:?}");
    }
}
