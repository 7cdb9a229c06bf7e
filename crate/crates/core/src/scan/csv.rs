use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::{ScanError, ScanRecord};

pub const CSV_COLUMNS: [&str; 22] = [
    "m_ttbar",
    "theta",
    "w_gg",
    "beta",
    "qmi",
    "rec",
    "cond_entropy",
    "entropy_b",
    "pred_joint",
    "pred_a",
    "coh_a",
    "ccr_sum",
    "s_q_given_b",
    "s_r_given_b",
    "eur_lhs",
    "eur_rhs",
    "intrinsic_lhs",
    "intrinsic_rhs",
    "qmi_closed",
    "rec_closed",
    "closed_form_status",
    "min_eigenvalue",
];

/// 17 significant digits, round-trip exact.
pub(super) fn number(x: f64) -> String {
    format!("{x:.16e}")
}

fn optional(x: Option<f64>) -> String {
    x.map_or_else(|| "nan".to_string(), number)
}

fn row(r: &ScanRecord) -> String {
    let mut cells: Vec<String> = [r.m_ttbar, r.theta, r.w_gg, r.beta]
        .into_iter()
        .map(number)
        .collect();
    cells.extend(r.report.fields().iter().map(|(_, v)| number(*v)));
    cells.push(optional(r.qmi_closed));
    cells.push(optional(r.rec_closed));
    cells.push(r.closed_form_status.as_str().to_string());
    cells.push(number(r.min_eigenvalue));
    cells.join(",")
}

pub fn write_csv_to<W: Write>(records: &[ScanRecord], out: W) -> Result<(), ScanError> {
    if records.is_empty() {
        return Err(ScanError::Empty);
    }
    let mut out = BufWriter::new(out);
    writeln!(out, "{}", CSV_COLUMNS.join(","))?;
    for r in records {
        writeln!(out, "{}", row(r))?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_csv(records: &[ScanRecord], path: &Path) -> Result<(), ScanError> {
    write_csv_to(records, File::create(path)?)
}
