//! Tables and their CSV, JSON and Markdown renderings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Bool(bool),
    Int(i64),
    Text(String),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Bool(b) => write!(f, "{b}"),
            Cell::Int(n) => write!(f, "{n}"),
            Cell::Text(s) => f.write_str(s),
        }
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v.into())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// A named table whose rows are sorted on the first `key_columns` columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableArtifact {
    pub name: String,
    pub columns: Vec<String>,
    pub key_columns: usize,
    pub rows: Vec<Vec<Cell>>,
}

impl TableArtifact {
    pub fn new(name: &str, columns: &[&str], key_columns: usize, mut rows: Vec<Vec<Cell>>) -> Self {
        let k = key_columns.min(columns.len());
        rows.sort_by(|a, b| a[..k].cmp(&b[..k]).then_with(|| a.cmp(b)));
        Self { name: name.to_string(), columns: columns.iter().map(|c| c.to_string()).collect(), key_columns: k, rows }
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Csv(e.into_error().into()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("| {} |\n|{}\n", self.columns.join(" | "), "---|".repeat(self.columns.len()));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.to_string().replace('|', "\\|")).collect();
            out.push_str(&format!("| {} |\n", cells.join(" | ")));
        }
        out
    }

    /// `serde_json::Value` with sorted object keys.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("table serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("json value serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
    Md,
}

/// Tables plus summary lines produced by one subcommand.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub summary: Vec<String>,
    pub tables: Vec<TableArtifact>,
}

impl Report {
    pub fn render(&self, format: OutputFormat) -> Result<String, CliError> {
        Ok(match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&serde_json::to_value(self)?)?;
                s.push('\n');
                s
            }
            OutputFormat::Csv => {
                let mut out = String::new();
                for (i, t) in self.tables.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    out.push_str(&format!("# {}\n", t.name));
                    out.push_str(&t.to_csv()?);
                }
                for line in &self.summary {
                    out.push_str(&format!("# {line}\n"));
                }
                out
            }
            OutputFormat::Md => {
                let mut out = String::new();
                for line in &self.summary {
                    out.push_str(&format!("- {line}\n"));
                }
                for t in &self.tables {
                    out.push_str(&format!("\n## {}\n\n{}", t.name, t.to_markdown()));
                }
                out
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cell() -> impl Strategy<Value = Cell> {
        prop_oneof![
            any::<bool>().prop_map(Cell::Bool),
            any::<i64>().prop_map(Cell::Int),
            "[a-z ,|\"]{0,8}".prop_map(Cell::Text),
        ]
    }

    fn table() -> impl Strategy<Value = TableArtifact> {
        (1usize..5, 0usize..4).prop_flat_map(|(cols, key)| {
            prop::collection::vec(prop::collection::vec(cell(), cols), 0..12).prop_map(move |rows| {
                let names: Vec<String> = (0..cols).map(|i| format!("c{i}")).collect();
                let names: Vec<&str> = names.iter().map(String::as_str).collect();
                TableArtifact::new("t", &names, key, rows)
            })
        })
    }

    #[test]
    fn markdown_escapes_pipes() {
        let t = TableArtifact::new("t", &["a", "b"], 1, vec![vec![Cell::from(1u32), Cell::from("x|y")]]);
        assert_eq!(t.to_markdown(), "| a | b |\n|---|---|\n| 1 | x\\|y |\n");
    }

    proptest! {
        #[test]
        fn json_round_trips(t in table()) {
            prop_assert_eq!(TableArtifact::from_json(&t.to_json()).unwrap(), t.clone());
            let report = Report { summary: vec!["s".into()], tables: vec![t] };
            let text = report.render(OutputFormat::Json).unwrap();
            prop_assert_eq!(serde_json::from_str::<Report>(&text).unwrap(), report);
        }

        #[test]
        fn rows_are_sorted_on_key_columns(t in table()) {
            let k = t.key_columns;
            prop_assert!(t.rows.windows(2).all(|w| w[0][..k] <= w[1][..k]));
            let cols: Vec<&str> = t.columns.iter().map(String::as_str).collect();
            let again = TableArtifact::new("t", &cols, k, t.rows.iter().rev().cloned().collect());
            prop_assert_eq!(again, t);
        }

        #[test]
        fn csv_has_one_record_per_row(t in table()) {
            let text = t.to_csv().unwrap();
            let mut reader = csv::Reader::from_reader(text.as_bytes());
            let records: Vec<csv::StringRecord> = reader.records().collect::<Result<_, _>>().unwrap();
            prop_assert_eq!(records.len(), t.rows.len());
            for (rec, row) in records.iter().zip(&t.rows) {
                let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                prop_assert_eq!(rec.iter().collect::<Vec<_>>(), cells);
            }
        }
    }
}
