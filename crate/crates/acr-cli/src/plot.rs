//! Gnuplot script generation for series CSVs.
//!
//! The script draws three panels — rate `R_t`, one-step ratio
//! `e_t/e_{t-1}` and `log10 e_t` — referencing columns by header name,
//! with one curve per input file (legend = file stem).

use crate::report::SERIES_HEADER;
use crate::CliError;
use std::fs;
use std::path::{Path, PathBuf};

/// Validate a series CSV document. Returns the number of data rows.
pub fn validate_series(path: &Path, document: &str) -> Result<usize, CliError> {
    let mut lines = document.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == SERIES_HEADER => {}
        Some((_, header)) => {
            return Err(CliError::Config(format!(
                "{}:1: expected header {SERIES_HEADER:?}, found {header:?}",
                path.display()
            )))
        }
        None => {
            return Err(CliError::Config(format!(
                "{}:1: empty document",
                path.display()
            )))
        }
    }
    let mut rows = 0usize;
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(CliError::Config(format!(
                "{}:{lineno}: expected 5 fields, found {}",
                path.display(),
                fields.len()
            )));
        }
        if fields[0].parse::<usize>().is_err() {
            return Err(CliError::Config(format!(
                "{}:{lineno}: t must be a non-negative integer, found {:?}",
                path.display(),
                fields[0]
            )));
        }
        for (name, value) in ["e_t", "R_t", "ratio", "log10_e"].iter().zip(&fields[1..]) {
            if !value.is_empty() && value.parse::<f64>().is_err() {
                return Err(CliError::Config(format!(
                    "{}:{lineno}: {name} must be a float or empty, found {value:?}",
                    path.display()
                )));
            }
        }
        rows += 1;
    }
    if rows == 0 {
        return Err(CliError::Config(format!(
            "{}: series has no data rows",
            path.display()
        )));
    }
    Ok(rows)
}

/// Build the gnuplot script text for the given (validated) series files.
pub fn plot_script(series: &[PathBuf]) -> String {
    let mut s = String::new();
    s.push_str("# gnuplot script; render with: gnuplot <this file>\n");
    s.push_str("set datafile separator comma\n");
    s.push_str("set datafile missing \"\"\n");
    s.push_str("set key autotitle columnhead\n");
    s.push_str("set terminal pngcairo size 900,1200\n");
    s.push_str("set output \"series.png\"\n");
    s.push_str("set multiplot layout 3,1\n");

    let curve = |column: &str, path: &Path| {
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        format!(
            "\"{}\" using (column(\"t\")):(column(\"{column}\")) with lines title \"{stem}\"",
            path.display()
        )
    };

    for (column, ylabel) in [
        ("R_t", "rate"),
        ("ratio", "one-step ratio"),
        ("log10_e", "log10 error"),
    ] {
        s.push_str(&format!("set ylabel \"{ylabel}\"\nset xlabel \"t\"\n"));
        let curves: Vec<String> = series.iter().map(|p| curve(column, p)).collect();
        s.push_str(&format!("plot {}\n", curves.join(", \\\n     ")));
    }
    s.push_str("unset multiplot\n");
    s
}

/// Validate every input series and write the script. Nothing is written
/// when validation fails.
pub fn emit_plot_script(series: &[PathBuf], out: &Path) -> Result<(), CliError> {
    if series.is_empty() {
        return Err(CliError::Config("no series files given".into()));
    }
    for path in series {
        let document = fs::read_to_string(path)
            .map_err(|e| CliError::io(&format!("reading {}", path.display()), e))?;
        validate_series(path, &document)?;
    }
    let script = plot_script(series);
    fs::write(out, script).map_err(|e| CliError::io(&format!("writing {}", out.display()), e))
}
