//! Output documents and the json / csv / markdown writers.

use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

/// One rectangular table of a report.
#[derive(Debug, Clone)]
pub struct Section {
    pub title: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Section {
    pub fn new(title: impl Into<String>, header: &[&'static str]) -> Self {
        Section { title: title.into(), header: header.to_vec(), rows: Vec::new() }
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.rows.push(cells.into_iter().map(|c| c.to_string()).collect());
    }
}

/// What a command produced: a JSON document, the same content as tables, and
/// whether every check passed.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub sections: Vec<Section>,
    pub passed: bool,
}

pub fn write_report(out: &mut impl Write, report: &Report, format: Format) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &report.json)?;
            writeln!(out)?;
        }
        Format::Csv => {
            for (i, s) in report.sections.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                writeln!(out, "# {}", s.title)?;
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(&s.header)?;
                for r in &s.rows {
                    w.write_record(r)?;
                }
                w.flush()?;
            }
        }
        Format::Md => {
            for (i, s) in report.sections.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                writeln!(out, "## {}\n", s.title)?;
                writeln!(out, "| {} |", s.header.join(" | "))?;
                writeln!(out, "|{}", "---|".repeat(s.header.len()))?;
                for r in &s.rows {
                    let cells: Vec<String> = r.iter().map(|c| c.replace('|', "\\|")).collect();
                    writeln!(out, "| {} |", cells.join(" | "))?;
                }
            }
        }
    }
    Ok(())
}
