//! Scan configuration: a TOML document with dotted keys.
//!
//! ```toml
//! m_top = 173.0
//! output_dir = "scan_output"
//! w_gg_list = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]
//! mass_grid.min = 346.001
//! mass_grid.max = 1000.0
//! mass_grid.count = 128
//! theta_grid.min = 0.001
//! theta_grid.max = 1.5707963267948966
//! theta_grid.count = 128
//! axes.q = "k"            # or [k, r, n] components
//! axes.r = "r"
//! tolerances.ccr = 1e-10
//! ```
//!
//! Every key is optional; unknown keys are rejected.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::PathBuf;

use serde::Deserialize;

use super::ConfigError;
use crate::info_measures::ObservablePair;
use crate::qcd_production::DEFAULT_TOP_MASS;
use crate::spin_algebra::Axis;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl GridSpec {
    /// Evenly spaced points, both endpoints included.
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.max
                } else {
                    self.min + (self.max - self.min) * (i as f64) / last
                }
            })
            .collect()
    }
}

/// Thresholds applied by the audits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// `|ccr_sum − 1|`.
    pub ccr: f64,
    /// Largest accepted `|pred_a|` and `|coh_a|`.
    pub marginal: f64,
    /// Allowed negative slack of the uncertainty and intrinsic inequalities.
    pub inequality: f64,
    /// Most negative eigenvalue accepted.
    pub eigenvalue: f64,
    /// Closed-form vs spectral agreement.
    pub closed_form: f64,
    /// Allowed step against the expected direction in monotonicity checks.
    pub trend: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            ccr: 1e-10,
            marginal: 1e-12,
            inequality: 1e-10,
            eigenvalue: 1e-10,
            closed_form: 1e-8,
            trend: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub m_top: f64,
    pub mass_grid: GridSpec,
    pub theta_grid: GridSpec,
    pub w_gg_list: Vec<f64>,
    pub axes: ObservablePair,
    pub output_dir: PathBuf,
    pub tolerances: Tolerances,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            m_top: DEFAULT_TOP_MASS,
            mass_grid: GridSpec {
                min: 346.001,
                max: 1000.0,
                count: 128,
            },
            theta_grid: GridSpec {
                min: 0.001,
                max: FRAC_PI_2,
                count: 128,
            },
            w_gg_list: vec![0.0, 0.2, 0.4, 0.6, 0.8, 1.0],
            axes: ObservablePair::default(),
            output_dir: PathBuf::from("scan_output"),
            tolerances: Tolerances::default(),
        }
    }
}

impl ScanConfig {
    pub fn point_count(&self) -> usize {
        self.mass_grid.count * self.theta_grid.count * self.w_gg_list.len()
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    m_top: Option<f64>,
    mass_grid: Option<RawGrid>,
    theta_grid: Option<RawGrid>,
    w_gg_list: Option<Vec<f64>>,
    axes: Option<RawAxes>,
    output_dir: Option<PathBuf>,
    tolerances: Option<RawTolerances>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    min: Option<f64>,
    max: Option<f64>,
    count: Option<i64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAxes {
    q: Option<RawAxis>,
    r: Option<RawAxis>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawAxis {
    Named(String),
    Components([f64; 3]),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTolerances {
    ccr: Option<f64>,
    marginal: Option<f64>,
    inequality: Option<f64>,
    eigenvalue: Option<f64>,
    closed_form: Option<f64>,
    trend: Option<f64>,
}

fn invalid(field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Validation {
        field: field.to_string(),
        message: message.into(),
    }
}

fn grid(raw: Option<RawGrid>, default: GridSpec, name: &str) -> Result<GridSpec, ConfigError> {
    let raw = raw.unwrap_or_default();
    let min = raw.min.unwrap_or(default.min);
    let max = raw.max.unwrap_or(default.max);
    let count = match raw.count {
        None => default.count,
        Some(c) if c >= 1 => c as usize,
        Some(c) => {
            return Err(invalid(
                &format!("{name}.count"),
                format!("{c} must be at least 1"),
            ))
        }
    };
    if !min.is_finite() {
        return Err(invalid(&format!("{name}.min"), "must be finite"));
    }
    if !max.is_finite() {
        return Err(invalid(&format!("{name}.max"), "must be finite"));
    }
    if max < min {
        return Err(invalid(
            &format!("{name}.max"),
            format!("{max} is below min {min}"),
        ));
    }
    Ok(GridSpec { min, max, count })
}

fn axis(raw: Option<RawAxis>, default: Axis, field: &str) -> Result<Axis, ConfigError> {
    match raw {
        None => Ok(default),
        Some(RawAxis::Named(name)) => match name.as_str() {
            "k" => Ok(Axis::K),
            "r" => Ok(Axis::R),
            "n" => Ok(Axis::N),
            other => Err(invalid(
                field,
                format!("unknown axis name {other:?}; use k, r, n or [k, r, n]"),
            )),
        },
        Some(RawAxis::Components([k, r, n])) => Ok(Axis::new(k, r, n)),
    }
}

fn positive(value: Option<f64>, default: f64, field: &str) -> Result<f64, ConfigError> {
    let v = value.unwrap_or(default);
    if !(v > 0.0) || !v.is_finite() {
        return Err(invalid(field, format!("{v} must be positive")));
    }
    Ok(v)
}

/// Parses and validates a configuration document, filling defaults.
pub fn load_config(source: &str) -> Result<ScanConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(source).map_err(|e| ConfigError::Parse(e.to_string()))?;
    let defaults = ScanConfig::default();

    let m_top = positive(raw.m_top, defaults.m_top, "m_top")?;
    let mass_grid = grid(raw.mass_grid, defaults.mass_grid, "mass_grid")?;
    if mass_grid.min < 2.0 * m_top {
        return Err(invalid(
            "mass_grid.min",
            format!(
                "{} GeV is below the pair threshold {} GeV",
                mass_grid.min,
                2.0 * m_top
            ),
        ));
    }
    let theta_grid = grid(raw.theta_grid, defaults.theta_grid, "theta_grid")?;
    if theta_grid.min < 0.0 {
        return Err(invalid("theta_grid.min", "must be at least 0"));
    }
    if theta_grid.max > PI {
        return Err(invalid("theta_grid.max", "must be at most pi"));
    }

    let w_gg_list = raw.w_gg_list.unwrap_or(defaults.w_gg_list);
    if w_gg_list.is_empty() {
        return Err(invalid("w_gg_list", "must not be empty"));
    }
    if let Some(bad) = w_gg_list.iter().find(|w| !(0.0..=1.0).contains(*w)) {
        return Err(invalid("w_gg_list", format!("weight {bad} outside [0, 1]")));
    }

    let raw_axes = raw.axes.unwrap_or_default();
    let q = axis(raw_axes.q, Axis::K, "axes.q")?;
    let r = axis(raw_axes.r, Axis::R, "axes.r")?;
    let axes = ObservablePair::new(q, r)
        .map_err(|_| invalid("axes", "measurement axes must be nonzero"))?;

    let t = raw.tolerances.unwrap_or_default();
    let d = Tolerances::default();
    let tolerances = Tolerances {
        ccr: positive(t.ccr, d.ccr, "tolerances.ccr")?,
        marginal: positive(t.marginal, d.marginal, "tolerances.marginal")?,
        inequality: positive(t.inequality, d.inequality, "tolerances.inequality")?,
        eigenvalue: positive(t.eigenvalue, d.eigenvalue, "tolerances.eigenvalue")?,
        closed_form: positive(t.closed_form, d.closed_form, "tolerances.closed_form")?,
        trend: positive(t.trend, d.trend, "tolerances.trend")?,
    };

    Ok(ScanConfig {
        m_top,
        mass_grid,
        theta_grid,
        w_gg_list,
        axes,
        output_dir: raw.output_dir.unwrap_or(defaults.output_dir),
        tolerances,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_defaults() {
        assert_eq!(load_config("").unwrap(), ScanConfig::default());
    }

    #[test]
    fn mass_below_threshold_names_field() {
        let err = load_config("m_top = 173\nmass_grid.min = 300").unwrap_err();
        match err {
            ConfigError::Validation { field, .. } => assert_eq!(field, "mass_grid.min"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn figure_panel_weights() {
        let cfg = load_config("w_gg_list = [0.2, 0.4, 0.6, 0.8]").unwrap();
        assert_eq!(cfg.w_gg_list, vec![0.2, 0.4, 0.6, 0.8]);
        assert_eq!(cfg.mass_grid, ScanConfig::default().mass_grid);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(matches!(
            load_config("mass_grid.step = 3"),
            Err(ConfigError::Parse(_))
        ));
        assert!(matches!(
            load_config("colour = 1"),
            Err(ConfigError::Parse(_))
        ));
    }

    #[test]
    fn malformed_document() {
        assert!(matches!(
            load_config("m_top = = 1"),
            Err(ConfigError::Parse(_))
        ));
    }

    #[test]
    fn dotted_and_table_forms_agree() {
        let a = load_config("theta_grid.count = 7\ntheta_grid.max = 3.0").unwrap();
        let b = load_config("[theta_grid]\ncount = 7\nmax = 3.0").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.theta_grid.points().len(), 7);
        assert_eq!(*a.theta_grid.points().last().unwrap(), 3.0);
    }

    #[test]
    fn axes_by_name_or_components() {
        let cfg = load_config("axes.q = \"n\"\naxes.r = [1.0, 1.0, 0.0]").unwrap();
        assert_eq!(cfg.axes.q_axis(), Axis::N);
        assert_eq!(cfg.axes.c_overlap(), 0.5);
        assert!(load_config("axes.q = \"x\"").is_err());
        assert!(load_config("axes.q = [0.0, 0.0, 0.0]").is_err());
    }

    #[test]
    fn validation_errors() {
        for (doc, field) in [
            ("w_gg_list = [0.5, 1.5]", "w_gg_list"),
            ("w_gg_list = []", "w_gg_list"),
            ("theta_grid.max = 4.0", "theta_grid.max"),
            ("mass_grid.count = 0", "mass_grid.count"),
            (
                "mass_grid.max = 400.0\nmass_grid.min = 500.0",
                "mass_grid.max",
            ),
            ("tolerances.ccr = -1.0", "tolerances.ccr"),
            ("m_top = 0", "m_top"),
        ] {
            match load_config(doc) {
                Err(ConfigError::Validation { field: f, .. }) => assert_eq!(f, field, "{doc}"),
                other => panic!("{doc}: {other:?}"),
            }
        }
    }

    #[test]
    fn grid_points_are_inclusive() {
        let g = GridSpec {
            min: 1.0,
            max: 2.0,
            count: 5,
        };
        assert_eq!(g.points(), vec![1.0, 1.25, 1.5, 1.75, 2.0]);
        assert_eq!(
            GridSpec {
                min: 3.0,
                max: 9.0,
                count: 1
            }
            .points(),
            vec![3.0]
        );
    }
}
