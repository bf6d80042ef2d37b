//! Table writers. CSV floats carry 17 significant digits; infinities are
//! written as `inf` in CSV and `null` in JSON.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

use super::config::OutputFormat;

/// Formats a float losslessly with 17 significant digits.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// A row that can be written as CSV (fixed header) or JSON (serde).
pub trait TableRow: Serialize {
    fn header() -> &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

/// Opens `path` for writing, or standard output for `None` / `-`.
pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    match path {
        None => Ok(Box::new(io::stdout().lock())),
        Some(p) if p.as_os_str() == "-" => Ok(Box::new(io::stdout().lock())),
        Some(p) => {
            let file = File::create(p).map_err(|source| Error::Io {
                path: p.to_path_buf(),
                source,
            })?;
            Ok(Box::new(BufWriter::new(file)))
        }
    }
}

pub fn write_rows<R: TableRow, W: Write>(rows: &[R], format: OutputFormat, out: W) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(rows, out),
        OutputFormat::Json => write_json(rows, out),
    }
}

pub fn write_csv<R: TableRow, W: Write>(rows: &[R], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(R::header())?;
    for row in rows {
        writer.write_record(row.fields())?;
    }
    writer.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

pub fn write_json<R: TableRow, W: Write>(rows: &[R], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out).map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

/// Writes rows to the destination named by `path`, mapping I/O failures to
/// errors that carry the path.
pub fn write_to<R: TableRow>(rows: &[R], format: OutputFormat, path: Option<&Path>) -> Result<()> {
    let out = open_output(path)?;
    write_rows(rows, format, out).map_err(|e| match (e, path) {
        (Error::Csv(inner), Some(p)) => Error::Io {
            path: p.to_path_buf(),
            source: io::Error::other(inner.to_string()),
        },
        (e, _) => e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(f64::INFINITY), "inf");
        assert_eq!(format_float(0.5), "5.0000000000000000e-1");
        let x = std::f64::consts::LN_2;
        assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        let y = 0.1 + 0.2;
        assert_eq!(format_float(y).parse::<f64>().unwrap(), y);
    }
}
