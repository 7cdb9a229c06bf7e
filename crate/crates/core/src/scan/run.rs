use rayon::prelude::*;

use super::{summarize_audits, AuditSummary, ScanConfig, ScanError, Tolerances};
use crate::closed_forms::{cross_check, ChannelPairInput, ClosedFormStatus};
use crate::info_measures::{MeasureReport, ObservablePair};
use crate::qcd_production::{mixed_state, Kinematics, MixtureWeights};

/// Fixed invariant masses (GeV) of the gluon-fusion Θ profiles.
pub const PROFILE_MASSES: [f64; 3] = [400.0, 500.0, 700.0];

/// One evaluated grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRecord {
    pub m_ttbar: f64,
    pub theta: f64,
    pub w_gg: f64,
    pub beta: f64,
    pub report: MeasureReport,
    pub qmi_closed: Option<f64>,
    pub rec_closed: Option<f64>,
    pub closed_form_status: ClosedFormStatus,
    /// Largest closed-form vs spectral difference, when both expressions evaluate.
    pub closed_form_deviation: Option<f64>,
    pub min_eigenvalue: f64,
}

impl ScanRecord {
    pub fn is_pure_channel(&self) -> bool {
        self.w_gg == 0.0 || self.w_gg == 1.0
    }

    /// Names of the per-point invariants this record breaks.
    pub fn violations(&self, tol: &Tolerances) -> Vec<&'static str> {
        let r = &self.report;
        let mut out = Vec::new();
        if (r.ccr_sum - 1.0).abs() > tol.ccr {
            out.push("ccr_sum");
        }
        if r.pred_a.abs() > tol.marginal || r.coh_a.abs() > tol.marginal {
            out.push("marginal");
        }
        if r.intrinsic_slack() < -tol.inequality {
            out.push("intrinsic");
        }
        if r.eur_slack() < -tol.inequality {
            out.push("eur");
        }
        if self.min_eigenvalue < -tol.eigenvalue {
            out.push("min_eigenvalue");
        }
        if self.is_pure_channel() && self.closed_form_status != ClosedFormStatus::Ok {
            out.push("closed_form");
        }
        out
    }
}

/// Evaluates every measure and the closed-form check at one point.
pub fn evaluate_point(
    m_ttbar: f64,
    theta: f64,
    w_gg: f64,
    m_top: f64,
    axes: &ObservablePair,
    tol: &Tolerances,
) -> Result<ScanRecord, ScanError> {
    let wrap = |source| ScanError::Point {
        m_ttbar,
        theta,
        w_gg,
        source,
    };
    let kin = Kinematics::with_top_mass(m_ttbar, theta, m_top).map_err(wrap)?;
    let weights = MixtureWeights::new(w_gg).map_err(wrap)?;
    let rho = mixed_state(&kin, weights).map_err(wrap)?;
    let report = MeasureReport::evaluate(&rho, axes).map_err(wrap)?;
    let check = cross_check(
        &ChannelPairInput::new(&kin, weights),
        report.qmi,
        report.rec,
        tol.closed_form,
    );
    Ok(ScanRecord {
        m_ttbar,
        theta,
        w_gg,
        beta: kin.beta(),
        report,
        qmi_closed: check.qmi_closed,
        rec_closed: check.rec_closed,
        closed_form_status: check.status,
        closed_form_deviation: check.deviation,
        min_eigenvalue: rho.min_eigenvalue(),
    })
}

fn coordinate_order(a: &ScanRecord, b: &ScanRecord) -> std::cmp::Ordering {
    a.m_ttbar
        .total_cmp(&b.m_ttbar)
        .then(a.theta.total_cmp(&b.theta))
        .then(a.w_gg.total_cmp(&b.w_gg))
}

pub(super) fn evaluate_grid(
    config: &ScanConfig,
    masses: &[f64],
    thetas: &[f64],
    weights: &[f64],
) -> Result<Vec<ScanRecord>, ScanError> {
    let points: Vec<(f64, f64, f64)> = masses
        .iter()
        .flat_map(|&m| {
            thetas
                .iter()
                .flat_map(move |&t| weights.iter().map(move |&w| (m, t, w)))
        })
        .collect();
    let mut records = points
        .into_par_iter()
        .map(|(m, t, w)| evaluate_point(m, t, w, config.m_top, &config.axes, &config.tolerances))
        .collect::<Result<Vec<_>, _>>()?;
    records.sort_by(coordinate_order);
    Ok(records)
}

/// Gluon-fusion records along the configured Θ grid at a fixed mass.
pub fn fixed_mass_profile(
    config: &ScanConfig,
    m_ttbar: f64,
    w_gg: f64,
) -> Result<Vec<ScanRecord>, ScanError> {
    evaluate_grid(config, &[m_ttbar], &config.theta_grid.points(), &[w_gg])
}

/// Pure gluon-fusion profiles at [`PROFILE_MASSES`] above the pair threshold.
pub fn fixed_mass_profiles(config: &ScanConfig) -> Result<Vec<(f64, Vec<ScanRecord>)>, ScanError> {
    PROFILE_MASSES
        .iter()
        .filter(|&&m| m > 2.0 * config.m_top)
        .map(|&m| Ok((m, fixed_mass_profile(config, m, 1.0)?)))
        .collect()
}

#[derive(Debug, Clone)]
pub struct ScanOutput {
    /// Sorted by `(m_ttbar, theta, w_gg)`.
    pub records: Vec<ScanRecord>,
    pub summary: AuditSummary,
}

/// Runs the full grid in parallel and summarizes it.
pub fn run_scan(config: &ScanConfig) -> Result<ScanOutput, ScanError> {
    let records = evaluate_grid(
        config,
        &config.mass_grid.points(),
        &config.theta_grid.points(),
        &config.w_gg_list,
    )?;
    let mut summary = summarize_audits(&records, &config.tolerances);
    summary.apply_profiles(&fixed_mass_profiles(config)?, config.tolerances.trend);
    Ok(ScanOutput { records, summary })
}
