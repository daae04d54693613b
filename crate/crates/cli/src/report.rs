//! Output formats for comparisons and single solves.

use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::reproduce::Comparison;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format '{s}' (expected text, csv or json)")),
        }
    }
}

pub const CSV_HEADER: [&str; 7] = [
    "table", "row_key", "column", "computed", "expected", "delta", "status",
];

pub fn write_comparisons<W: Write>(
    out: W,
    rows: &[Comparison],
    format: Format,
) -> Result<(), CliError> {
    match format {
        Format::Text => write_text(out, rows),
        Format::Csv => write_csv(out, rows),
        Format::Json => write_json(out, rows),
    }
}

fn write_text<W: Write>(mut out: W, rows: &[Comparison]) -> Result<(), CliError> {
    writeln!(
        out,
        "{:<5} {:>7} {:>6} {:>16} {:>14} {:>12}  status",
        "table", "row", "column", "computed", "expected", "delta"
    )?;
    for r in rows {
        let status = serde_json::to_value(r.status)?;
        writeln!(
            out,
            "{:<5} {:>7} {:>6} {:>16.9} {:>14} {:>12.3e}  {}",
            r.table,
            r.row_key,
            r.column,
            r.computed,
            r.expected,
            r.delta,
            status.as_str().unwrap_or_default()
        )?;
    }
    let failed = rows.iter().filter(|r| r.status.is_failure()).count();
    writeln!(out, "{} cells, {} outside tolerance", rows.len(), failed)?;
    Ok(())
}

fn write_csv<W: Write>(out: W, rows: &[Comparison]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(CSV_HEADER)?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn write_json<W: Write>(mut out: W, rows: &[Comparison]) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out)?;
    Ok(())
}

/// Outcome of a single `solve` or `oracle` run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyReport {
    pub method: &'static str,
    pub dim: Option<usize>,
    pub state: usize,
    pub energy: f64,
    pub shift: Option<f64>,
    pub shift_on_boundary: bool,
}

pub fn write_energy<W: Write>(
    mut out: W,
    report: &EnergyReport,
    format: Format,
) -> Result<(), CliError> {
    match format {
        Format::Text => {
            write!(out, "E = {:.9}", report.energy)?;
            if let Some(d) = report.dim {
                write!(out, "  (D = {d}, state {})", report.state)?;
            } else {
                write!(out, "  (nodes = {})", report.state)?;
            }
            if let Some(shift) = report.shift {
                write!(out, "  A* = {shift:.6}")?;
                if report.shift_on_boundary {
                    write!(out, " [at search bound]")?;
                }
            }
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.serialize(report)?;
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, report)?;
            writeln!(out)?;
        }
    }
    Ok(())
}
