use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::csv::number;
use super::run::{evaluate_grid, fixed_mass_profile};
use super::{ScanConfig, ScanError, ScanRecord, PROFILE_MASSES};

/// Every exportable figure panel.
pub const ALL_FIGURES: [&str; 26] = [
    "1a", "1b", "2a", "2b", "2c", "2d", "3a", "3b", "4a", "4b", "4c", "4d", "5a", "5b", "5c", "5d",
    "6a", "6b", "7a", "7b", "7c", "7d", "8", "9a", "9b", "9c",
];

const PANEL_WEIGHTS: [f64; 4] = [0.2, 0.4, 0.6, 0.8];
const CCR_PROFILE_MASS: f64 = 500.0;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Quantity {
    Qmi,
    Rec,
    IntrinsicLhs,
    ConditionalSum,
    PredJoint,
}

impl Quantity {
    fn name(self) -> &'static str {
        match self {
            Quantity::Qmi => "qmi",
            Quantity::Rec => "rec",
            Quantity::IntrinsicLhs => "intrinsic_lhs",
            Quantity::ConditionalSum => "s_q_plus_s_r",
            Quantity::PredJoint => "pred_joint",
        }
    }

    fn of(self, r: &ScanRecord) -> f64 {
        match self {
            Quantity::Qmi => r.report.qmi,
            Quantity::Rec => r.report.rec,
            Quantity::IntrinsicLhs => r.report.intrinsic_lhs,
            Quantity::ConditionalSum => r.report.s_q_given_b + r.report.s_r_given_b,
            Quantity::PredJoint => r.report.pred_joint,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Layout {
    /// `(m_ttbar, theta, value)` over the configured grids.
    Surface { w_gg: f64, quantity: Quantity },
    /// QMI, conditional entropy and their CCR sum along Θ at 500 GeV.
    CcrProfile { w_gg: f64 },
    /// One gluon-fusion column per profile mass along Θ.
    MassProfiles { quantity: Quantity },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FigureId(&'static str);

impl FigureId {
    pub fn as_str(&self) -> &'static str {
        self.0
    }

    fn layout(&self) -> Layout {
        let id = self.0;
        let panel = |c: char| PANEL_WEIGHTS[(c as u8 - b'a') as usize];
        let last = id.chars().last().unwrap_or('a');
        match id {
            "1a" => Layout::Surface {
                w_gg: 1.0,
                quantity: Quantity::Qmi,
            },
            "1b" => Layout::Surface {
                w_gg: 0.0,
                quantity: Quantity::Qmi,
            },
            "3a" => Layout::Surface {
                w_gg: 1.0,
                quantity: Quantity::Rec,
            },
            "3b" => Layout::Surface {
                w_gg: 0.0,
                quantity: Quantity::Rec,
            },
            "6a" => Layout::Surface {
                w_gg: 1.0,
                quantity: Quantity::IntrinsicLhs,
            },
            "6b" => Layout::Surface {
                w_gg: 0.0,
                quantity: Quantity::IntrinsicLhs,
            },
            "8" => Layout::MassProfiles {
                quantity: Quantity::IntrinsicLhs,
            },
            "9a" => Layout::MassProfiles {
                quantity: Quantity::ConditionalSum,
            },
            "9b" => Layout::MassProfiles {
                quantity: Quantity::PredJoint,
            },
            "9c" => Layout::MassProfiles {
                quantity: Quantity::Rec,
            },
            _ => match &id[..1] {
                "2" => Layout::Surface {
                    w_gg: panel(last),
                    quantity: Quantity::Qmi,
                },
                "4" => Layout::Surface {
                    w_gg: panel(last),
                    quantity: Quantity::Rec,
                },
                "5" => Layout::CcrProfile { w_gg: panel(last) },
                _ => Layout::Surface {
                    w_gg: panel(last),
                    quantity: Quantity::IntrinsicLhs,
                },
            },
        }
    }
}

impl FromStr for FigureId {
    type Err = ScanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_FIGURES
            .iter()
            .find(|id| **id == s)
            .map(|id| FigureId(id))
            .ok_or_else(|| ScanError::UnknownFigure(s.to_string()))
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// A table of figure data with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureData {
    pub id: FigureId,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl FigureData {
    pub fn file_name(&self) -> String {
        format!("fig_{}.csv", self.id)
    }
}

pub fn figure_data(config: &ScanConfig, id: FigureId) -> Result<FigureData, ScanError> {
    let (columns, rows) = match id.layout() {
        Layout::Surface { w_gg, quantity } => {
            let records = evaluate_grid(
                config,
                &config.mass_grid.points(),
                &config.theta_grid.points(),
                &[w_gg],
            )?;
            let rows = records
                .iter()
                .map(|r| vec![r.m_ttbar, r.theta, quantity.of(r)])
                .collect();
            (
                vec!["m_ttbar".into(), "theta".into(), quantity.name().into()],
                rows,
            )
        }
        Layout::CcrProfile { w_gg } => {
            let records = fixed_mass_profile(config, CCR_PROFILE_MASS, w_gg)?;
            let rows = records
                .iter()
                .map(|r| {
                    vec![
                        r.theta,
                        r.report.qmi,
                        r.report.cond_entropy_a_given_b,
                        r.report.ccr_sum,
                    ]
                })
                .collect();
            (
                vec![
                    "theta".into(),
                    "qmi".into(),
                    "cond_entropy".into(),
                    "ccr".into(),
                ],
                rows,
            )
        }
        Layout::MassProfiles { quantity } => {
            let thetas = config.theta_grid.points();
            let mut columns = vec!["theta".to_string()];
            let mut rows: Vec<Vec<f64>> = thetas.iter().map(|&t| vec![t]).collect();
            for m in PROFILE_MASSES
                .into_iter()
                .filter(|&m| m > 2.0 * config.m_top)
            {
                let profile = fixed_mass_profile(config, m, 1.0)?;
                columns.push(format!("{}_m{}", quantity.name(), m));
                for (row, rec) in rows.iter_mut().zip(&profile) {
                    row.push(quantity.of(rec));
                }
            }
            (columns, rows)
        }
    };
    Ok(FigureData { id, columns, rows })
}

/// Writes `fig_<id>.csv` into `dir` and returns its path.
pub fn write_figure(data: &FigureData, dir: &Path) -> Result<PathBuf, ScanError> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(data.file_name());
    let mut out = BufWriter::new(File::create(&path)?);
    writeln!(out, "{}", data.columns.join(","))?;
    for row in &data.rows {
        let cells: Vec<String> = row.iter().copied().map(number).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    out.flush()?;
    Ok(path)
}
