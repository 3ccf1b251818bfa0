//! CSV rendering with lossless float formatting.
//!
//! Floats are written in scientific notation with 17 significant digits
//! and a lowercase exponent, which round-trips every finite f64 exactly.
//! Undefined entries render as empty fields.

use acr::metrics::{log_error_series, ratio_series, AcrSeries, ErrorSeries};

pub const SERIES_HEADER: &str = "t,e_t,R_t,ratio,log10_e";
pub const VERIFY_HEADER: &str = "check_id,status,value,bound,ci";

/// 17-significant-digit scientific rendering.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_float).unwrap_or_default()
}

/// One row of the series table.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub t: usize,
    pub e_t: f64,
    pub r_t: Option<f64>,
    pub ratio: Option<f64>,
    pub log10_e: Option<f64>,
}

/// Assemble per-generation rows from the computed series. Row 0 carries
/// `e_0` with empty rate and ratio fields.
pub fn series_rows(
    errors: &ErrorSeries,
    acr: &AcrSeries,
) -> Vec<ReportRow> {
    let ratios = ratio_series(errors);
    let logs = log_error_series(errors);
    errors
        .values()
        .iter()
        .enumerate()
        .map(|(t, &e_t)| ReportRow {
            t,
            e_t,
            r_t: if t == 0 { None } else { Some(acr.at(t)) },
            ratio: if t == 0 { None } else { ratios[t - 1] },
            log10_e: logs[t],
        })
        .collect()
}

/// Render the series CSV.
pub fn render_series_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from(SERIES_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.t,
            fmt_float(row.e_t),
            fmt_opt(row.r_t),
            fmt_opt(row.ratio),
            fmt_opt(row.log10_e),
        ));
    }
    out
}

/// Render the checkpoint CSV: one row per (objective, strategy) with the
/// rate at each checkpoint.
pub fn render_checkpoint_csv(
    objective: &str,
    strategy: &str,
    checkpoints: &[usize],
    acr: &AcrSeries,
) -> String {
    let mut header = String::from("objective,strategy");
    for t in checkpoints {
        header.push_str(&format!(",t{t}"));
    }
    let mut row = format!("{objective},{strategy}");
    for &t in checkpoints {
        row.push(',');
        row.push_str(&fmt_float(acr.at(t)));
    }
    format!("{header}\n{row}\n")
}

/// One verification-report row.
#[derive(Debug, Clone)]
pub struct CheckRow {
    pub check_id: &'static str,
    pub pass: bool,
    pub value: f64,
    pub bound: f64,
    pub ci: Option<f64>,
}

/// Render the verification CSV.
pub fn render_verify_csv(rows: &[CheckRow]) -> String {
    let mut out = String::from(VERIFY_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.check_id,
            if row.pass { "PASS" } else { "FAIL" },
            fmt_float(row.value),
            fmt_float(row.bound),
            fmt_opt(row.ci),
        ));
    }
    out
}
