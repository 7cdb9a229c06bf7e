//! Grid scans over `(M_tt, Θ, W_gg)`, CSV export, per-figure data and the
//! audit summary.

mod config;
mod csv;
mod figures;
mod run;
mod summary;

use thiserror::Error;

pub use config::{load_config, GridSpec, ScanConfig, Tolerances};
pub use csv::{write_csv, write_csv_to, CSV_COLUMNS};
pub use figures::{figure_data, write_figure, FigureData, FigureId, ALL_FIGURES};
pub use run::{
    evaluate_point, fixed_mass_profile, fixed_mass_profiles, run_scan, ScanOutput, ScanRecord,
    PROFILE_MASSES,
};
pub use summary::{summarize_audits, AuditSummary, TrendChecks};

#[derive(Error, Debug)]
pub enum ConfigError {
    #[error("malformed configuration: {0}")]
    Parse(String),
    #[error("invalid value for `{field}`: {message}")]
    Validation { field: String, message: String },
    #[error("cannot read configuration: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Error, Debug)]
pub enum ScanError {
    #[error("evaluation failed at M = {m_ttbar} GeV, theta = {theta}, w_gg = {w_gg}: {source}")]
    Point {
        m_ttbar: f64,
        theta: f64,
        w_gg: f64,
        #[source]
        source: crate::Error,
    },
    #[error("no records to write")]
    Empty,
    #[error("unknown figure id `{0}`")]
    UnknownFigure(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
