use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use num_bigint::BigInt;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
    Markdown,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TableRow {
    pub q: u32,
    pub k: u32,
    pub n: i64,
    /// Decimal string so JSON consumers never see a rounded float.
    #[serde(serialize_with = "as_decimal")]
    pub value: BigInt,
}

fn as_decimal<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Render rows sorted by `(q, k, n)`.
///
/// CSV has the header `q,k,n,value`; JSON is an array of row objects;
/// Markdown has one line per `(q, k)` and one column per `n`.
pub fn render_table(rows: &[TableRow], format: TableFormat) -> String {
    let mut rows = rows.to_vec();
    rows.sort();
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            out.push_str("q,k,n,value\n");
            for r in &rows {
                let _ = writeln!(out, "{},{},{},{}", r.q, r.k, r.n, r.value);
            }
        }
        TableFormat::Json => {
            out = serde_json::to_string_pretty(&rows).expect("rows serialize");
            out.push('\n');
        }
        TableFormat::Markdown => {
            let ns: Vec<i64> = {
                let mut ns: Vec<i64> = rows.iter().map(|r| r.n).collect();
                ns.sort_unstable();
                ns.dedup();
                ns
            };
            let mut lines: BTreeMap<(u32, u32), BTreeMap<i64, &BigInt>> = BTreeMap::new();
            for r in &rows {
                lines.entry((r.q, r.k)).or_default().insert(r.n, &r.value);
            }
            out.push_str("| q | k |");
            for n in &ns {
                let _ = write!(out, " n={n} |");
            }
            out.push_str("\n|---|---|");
            out.push_str(&"---:|".repeat(ns.len()));
            out.push('\n');
            for ((q, k), values) in &lines {
                let _ = write!(out, "| {q} | {k} |");
                for n in &ns {
                    match values.get(n) {
                        Some(v) => {
                            let _ = write!(out, " {v} |");
                        }
                        None => out.push_str("  |"),
                    }
                }
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(q: u32, k: u32, n: i64, v: i64) -> TableRow {
        TableRow {
            q,
            k,
            n,
            value: v.into(),
        }
    }

    #[test]
    fn csv_sorted() {
        let rows = [row(3, 3, 1, 1), row(3, 2, 2, 3), row(3, 2, 1, 1)];
        assert_eq!(
            render_table(&rows, TableFormat::Csv),
            "q,k,n,value\n3,2,1,1\n3,2,2,3\n3,3,1,1\n"
        );
    }

    #[test]
    fn json_values_are_strings() {
        let json = render_table(&[row(4, 5, 9, 107562)], TableFormat::Json);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed[0]["value"], "107562");
        assert_eq!(parsed[0]["n"], 9);
    }

    #[test]
    fn markdown_pivot() {
        let md = render_table(
            &[row(3, 2, 1, 1), row(3, 2, 2, 3), row(3, 3, 2, 3)],
            TableFormat::Markdown,
        );
        let lines: Vec<&str> = md.lines().collect();
        assert_eq!(lines[0], "| q | k | n=1 | n=2 |");
        assert_eq!(lines[2], "| 3 | 2 | 1 | 3 |");
        assert_eq!(lines[3], "| 3 | 3 |  | 3 |");
    }
}
