//! Typed result tables with a self-describing CSV/JSON representation.
//!
//! The CSV layout is: one `#`-prefixed JSON line with the full configuration
//! echo (everything needed to re-run bit-identically), one `#`-prefixed JSON
//! line with the volatile run info (timestamp, wall time), then an ordinary
//! header row and data rows. Keeping the volatile line separate makes reruns
//! byte-comparable.

use anyhow::{bail, Context, Result};
use serde::Serialize;
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    Int,
    Float,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    /// Rendered as an empty field; allowed in any column.
    Empty,
}

impl Cell {
    fn fits(&self, kind: ColumnKind) -> bool {
        matches!(
            (self, kind),
            (Cell::Int(_), ColumnKind::Int)
                | (Cell::Float(_), ColumnKind::Float)
                | (Cell::Text(_), ColumnKind::Text)
                | (Cell::Empty, _)
        )
    }

    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // default f64 formatting is shortest round-trip and deterministic
            Cell::Float(v) => v.to_string(),
            Cell::Text(s) => {
                if s.contains(',') || s.contains('"') || s.contains('\n') {
                    format!("\"{}\"", s.replace('"', "\"\""))
                } else {
                    s.clone()
                }
            }
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => serde_json::json!(v),
            Cell::Float(v) => serde_json::json!(v),
            Cell::Text(s) => serde_json::json!(s),
            Cell::Empty => serde_json::Value::Null,
        }
    }
}

#[derive(Debug)]
pub struct ResultTable {
    experiment: String,
    columns: Vec<(String, ColumnKind)>,
    rows: Vec<Vec<Cell>>,
    config: serde_json::Value,
    extra_metadata: serde_json::Value,
}

impl ResultTable {
    pub fn new(
        experiment: &str,
        columns: Vec<(String, ColumnKind)>,
        config: &impl Serialize,
    ) -> Result<Self> {
        Ok(Self {
            experiment: experiment.to_string(),
            columns,
            rows: Vec::new(),
            config: serde_json::to_value(config).context("serializing config echo")?,
            extra_metadata: serde_json::Value::Null,
        })
    }

    /// Attach experiment-specific metadata (warnings, derived quantities).
    pub fn set_extra_metadata(&mut self, value: serde_json::Value) {
        self.extra_metadata = value;
    }

    pub fn push_row(&mut self, cells: Vec<Cell>) -> Result<()> {
        if cells.len() != self.columns.len() {
            bail!(
                "row arity {} does not match the {}-column schema",
                cells.len(),
                self.columns.len()
            );
        }
        for (cell, (name, kind)) in cells.iter().zip(&self.columns) {
            if !cell.fits(*kind) {
                bail!("cell {cell:?} does not fit column '{name}' of type {kind:?}");
            }
        }
        self.rows.push(cells);
        Ok(())
    }


    /// Re-check the whole table against its schema.
    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for (name, _) in &self.columns {
            if name.is_empty() || !seen.insert(name) {
                bail!("column names must be nonempty and unique (offender: '{name}')");
            }
        }
        for (k, row) in self.rows.iter().enumerate() {
            if row.len() != self.columns.len() {
                bail!("row {k} has arity {}", row.len());
            }
            for (cell, (name, kind)) in row.iter().zip(&self.columns) {
                if !cell.fits(*kind) {
                    bail!("row {k}: cell {cell:?} does not fit column '{name}'");
                }
            }
        }
        Ok(())
    }

    fn stable_header(&self) -> serde_json::Value {
        serde_json::json!({
            "experiment": self.experiment,
            "version": env!("CARGO_PKG_VERSION"),
            "config": self.config,
            "metadata": self.extra_metadata,
        })
    }

    fn volatile_header(&self, wall_time_s: f64) -> serde_json::Value {
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        serde_json::json!({ "unix_timestamp": timestamp, "wall_time_s": wall_time_s })
    }

    pub fn write_csv(&self, mut w: impl Write, wall_time_s: f64) -> Result<()> {
        self.validate()?;
        writeln!(w, "# {}", self.stable_header())?;
        writeln!(w, "# {}", self.volatile_header(wall_time_s))?;
        let names: Vec<&str> = self.columns.iter().map(|(n, _)| n.as_str()).collect();
        writeln!(w, "{}", names.join(","))?;
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(Cell::render).collect();
            writeln!(w, "{}", fields.join(","))?;
        }
        Ok(())
    }

    pub fn to_json(&self, wall_time_s: f64) -> Result<serde_json::Value> {
        self.validate()?;
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| serde_json::Value::Array(row.iter().map(Cell::to_json).collect()))
            .collect();
        Ok(serde_json::json!({
            "header": self.stable_header(),
            "run": self.volatile_header(wall_time_s),
            "columns": self.columns.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>(),
            "rows": rows,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Cfg {
        n: usize,
    }

    fn table() -> ResultTable {
        ResultTable::new(
            "demo",
            vec![("t".into(), ColumnKind::Float), ("count".into(), ColumnKind::Int)],
            &Cfg { n: 4 },
        )
        .unwrap()
    }

    #[test]
    fn schema_is_enforced() {
        let mut t = table();
        assert!(t.push_row(vec![Cell::Float(0.5), Cell::Int(3)]).is_ok());
        assert!(t.push_row(vec![Cell::Float(0.5)]).is_err());
        assert!(t.push_row(vec![Cell::Int(1), Cell::Int(3)]).is_err());
        assert!(t.push_row(vec![Cell::Empty, Cell::Int(3)]).is_ok());
        t.validate().unwrap();
    }

    #[test]
    fn csv_layout() {
        let mut t = table();
        t.push_row(vec![Cell::Float(0.5), Cell::Int(3)]).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf, 0.01).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# {"));
        assert!(lines[1].starts_with("# {"));
        assert_eq!(lines[2], "t,count");
        assert_eq!(lines[3], "0.5,3");
        // stable header carries the config echo
        assert!(lines[0].contains("\"n\":4"));
    }

    #[test]
    fn text_cells_are_csv_escaped() {
        let mut t = ResultTable::new("demo", vec![("w".into(), ColumnKind::Text)], &Cfg { n: 1 }).unwrap();
        t.push_row(vec![Cell::Text("1,2".into())]).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf, 0.0).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().nth(3).unwrap() == "\"1,2\"");
    }
}
