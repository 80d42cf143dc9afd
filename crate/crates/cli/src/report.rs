//! Reports: a fixed header plus named tables, emitted as TSV or JSON.

use serde::Serialize;
use serde_json::Value;

use crate::config::{Format, RunConfig};

pub const SCHEMA: &str = "dopcalc-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// Some cell did not stabilize at the given bounds.
    Inconclusive,
    /// A comparison found a mismatch.
    Failed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Inconclusive => 1,
            Status::Failed => 2,
        }
    }

    /// The worse of two statuses.
    pub fn and(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Failed, _) | (_, Failed) => Failed,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Ok,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Rows whose columns equal the given values.
    pub fn select(&self, key: &[(&str, Value)]) -> Vec<&[Value]> {
        let idx: Vec<(usize, &Value)> = key
            .iter()
            .map(|(c, v)| (self.column(c).unwrap_or_else(|| panic!("no column {c}")), v))
            .collect();
        self.rows
            .iter()
            .filter(|r| idx.iter().all(|(i, v)| &r[*i] == *v))
            .map(|r| r.as_slice())
            .collect()
    }

    /// The value in `column` of the unique row matching `key`.
    pub fn get(&self, key: &[(&str, Value)], column: &str) -> Option<&Value> {
        let rows = self.select(key);
        let c = self.column(column)?;
        match rows.as_slice() {
            [r] => Some(&r[c]),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    /// Canonical ring description.
    pub ring: String,
    pub config: RunConfig,
    pub status: Status,
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Tsv => self.tsv(),
        }
    }

    fn tsv(&self) -> String {
        let mut out = String::new();
        let config = serde_json::to_string(&self.config).expect("configs serialize");
        out += &format!("# {} {} ({})\n", self.tool, self.version, self.schema);
        out += &format!(
            "# command: {}\n# ring: {}\n# config: {}\n",
            self.command, self.ring, config
        );
        out += &format!(
            "# status: {}\n",
            serde_json::to_value(self.status).unwrap().as_str().unwrap()
        );
        for t in &self.tables {
            out += &format!("## {}\n{}\n", t.name, t.columns.join("\t"));
            for r in &t.rows {
                let cells: Vec<String> = r.iter().map(cell).collect();
                out += &cells.join("\t");
                out.push('\n');
            }
        }
        for n in &self.notes {
            out += &format!("# note: {n}\n");
        }
        out
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(","),
        v => v.to_string(),
    }
}
