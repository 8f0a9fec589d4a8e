//! Result documents and their renderings.

use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Tabular projection of a result, used by the TSV and LaTeX renderers.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Table {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

pub struct Outcome {
    pub inputs: Value,
    pub citations: Vec<&'static str>,
    pub result: Value,
    pub warnings: Vec<String>,
    pub table: Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Latex,
}

pub fn document(command: &str, o: &Outcome) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": o.inputs,
        "citations": o.citations,
        "result": o.result,
        "warnings": o.warnings,
    })
}

pub fn error_document(kind: &str, message: &str, exit_code: i32) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "error": { "kind": kind, "message": message, "exit_code": exit_code },
    })
}

pub fn render(command: &str, o: &Outcome, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&document(command, o)).expect("documents serialize");
            s.push('\n');
            s
        }
        Format::Tsv => render_tsv(o),
        Format::Latex => render_latex(&o.table),
    }
}

fn render_tsv(o: &Outcome) -> String {
    let mut out = String::new();
    for w in &o.warnings {
        out.push_str(&format!("# warning: {w}\n"));
    }
    out.push_str(&o.table.header.join("\t"));
    out.push('\n');
    for row in &o.table.rows {
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

fn latex_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '_' | '#' | '%' | '&' | '$' | '{' | '}' => {
                out.push('\\');
                out.push(ch);
            }
            '^' => out.push_str("\\^{}"),
            _ => out.push(ch),
        }
    }
    out
}

fn render_latex(t: &Table) -> String {
    let cols = "l".repeat(t.header.len().max(1));
    let line = |cells: &[String]| cells.iter().map(|c| latex_escape(c)).collect::<Vec<_>>().join(" & ");
    let mut out = format!("\\begin{{tabular}}{{{cols}}}\n{} \\\\\n\\hline\n", line(&t.header));
    for row in &t.rows {
        out.push_str(&line(row));
        out.push_str(" \\\\\n");
    }
    out.push_str("\\end{tabular}\n");
    out
}
