use std::io::Write;

use qkrep_core::bounds::BoundReport;
use qkrep_core::report::{report_json, Cell, Table, REPORT_COLUMNS};
use serde_json::{json, Value};

use crate::{CliError, Format};

/// What a command emits: one table, optional bound reports and, for
/// verification runs, an overall verdict.
pub struct Document {
    pub command: String,
    pub table: Table,
    pub reports: Vec<BoundReport>,
    pub passed: Option<bool>,
}

impl Document {
    pub fn new(command: &str, table: Table) -> Self {
        Self {
            command: command.to_owned(),
            table,
            reports: Vec::new(),
            passed: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut doc = json!({
            "command": self.command,
            "rows": self.table.json_rows(),
        });
        if !self.reports.is_empty() {
            doc["reports"] = Value::Array(self.reports.iter().map(report_json).collect());
        }
        if let Some(p) = self.passed {
            doc["passed"] = json!(p);
        }
        doc
    }

    /// CSV carries the table only; JSON carries everything.
    pub fn write<W: Write>(&self, format: Format, mut out: W) -> Result<(), CliError> {
        match format {
            Format::Csv => self.table.write_csv(out)?,
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &self.to_json())
                    .map_err(qkrep_core::Error::from)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

/// Bound reports laid out as a table under the standard report header.
pub fn report_table(reports: &[BoundReport]) -> Table {
    let mut t = Table::new(&REPORT_COLUMNS);
    for r in reports {
        t.push(vec![
            Cell::from(r.name.as_str()),
            r.inputs_string().into(),
            r.value.into(),
            r.direction.as_str().into(),
            r.applicable.into(),
            r.anchor.as_str().into(),
        ]);
    }
    t
}
