//! Output rendering: one record type per subcommand, emitted as an aligned
//! plain-text table, RFC-4180 CSV, or a JSON array. Data output is
//! deterministic; elapsed time goes to standard error as a footer unless
//! suppressed.

use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::time::Duration;

use serde::Serialize;

use qeg::{C64, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

/// A subcommand's row type: serialized as-is for JSON, flattened to string
/// cells for the plain and CSV renderings. Column order matches the
/// serialized field order.
pub trait Record: Serialize {
    fn columns() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

/// Renders `records` in the requested format. The returned string is the
/// complete data output, newline-terminated.
pub fn render<R: Record>(records: &[R], format: Format) -> String {
    match format {
        Format::Plain => render_plain(records),
        Format::Csv => render_csv(records),
        Format::Json => {
            let mut text = serde_json::to_string_pretty(records).expect("record serialization");
            text.push('\n');
            text
        }
    }
}

fn render_plain<R: Record>(records: &[R]) -> String {
    let columns = R::columns();
    let rows: Vec<Vec<String>> = records.iter().map(Record::cells).collect();
    let mut widths: Vec<usize> = columns.iter().map(|c| c.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut push_row = |cells: &[String]| {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            if i + 1 == cells.len() {
                line.push_str(cell);
            } else {
                line.push_str(&format!("{cell:<width$}", width = widths[i]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    };
    push_row(&columns.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    for row in &rows {
        push_row(row);
    }
    out
}

fn render_csv<R: Record>(records: &[R]) -> String {
    let mut out = String::new();
    let header: Vec<String> = R::columns().iter().map(|c| c.to_string()).collect();
    out.push_str(&csv_line(&header));
    for record in records {
        out.push_str(&csv_line(&record.cells()));
    }
    out
}

/// RFC-4180: fields containing commas, quotes, or line breaks are quoted,
/// with embedded quotes doubled.
fn csv_line(cells: &[String]) -> String {
    let mut line = String::new();
    for (i, cell) in cells.iter().enumerate() {
        if i > 0 {
            line.push(',');
        }
        if cell.contains([',', '"', '\n', '\r']) {
            line.push('"');
            line.push_str(&cell.replace('"', "\"\""));
            line.push('"');
        } else {
            line.push_str(cell);
        }
    }
    line.push('\n');
    line
}

/// Writes the data output to `--out PATH` or standard output.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            std::io::stdout()
                .flush()
                .map_err(|e| format!("cannot write to stdout: {e}"))
        }
    }
}

/// Timing footer on standard error, so the data stream stays byte-identical
/// across runs.
pub fn emit_timing(elapsed: Duration, suppressed: bool) {
    if !suppressed {
        eprintln!("elapsed: {:.3}s", elapsed.as_secs_f64());
    }
}

/// Exact rational as "numerator/denominator" (integers without the slash).
pub fn rat_str(x: &Rat) -> String {
    x.to_string()
}

/// Shortest round-trip decimal for a float.
pub fn f64_str(x: f64) -> String {
    format!("{x}")
}

/// Scientific notation for error figures.
pub fn bound_str(x: f64) -> String {
    format!("{x:e}")
}

/// Complex value as "a", "a+bi", or "a-bi" in shortest round-trip decimals.
pub fn complex_str(z: &C64) -> String {
    if z.im == 0.0 {
        f64_str(z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", f64_str(z.re), f64_str(-z.im))
    } else {
        format!("{}+{}i", f64_str(z.re), f64_str(z.im))
    }
}
