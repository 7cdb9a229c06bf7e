use std::collections::BTreeMap;
use std::fmt;

use super::{ScanRecord, Tolerances};
use crate::closed_forms::ClosedFormStatus;

/// Qualitative trend checks. `None` means the scan lacks the data for a check
/// (for example the channel's weight is absent from the weight list).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TrendChecks {
    /// Per-weight maximum of the intrinsic LHS is nondecreasing in `W_gg`.
    pub intrinsic_max_rises_with_wgg: Option<bool>,
    /// Gluon-fusion REC is nonincreasing in Θ along the smallest-mass row.
    pub gg_rec_falls_near_threshold: Option<bool>,
    /// Quark-annihilation REC is nondecreasing in Θ on every mass row.
    pub qqbar_rec_rises_with_theta: Option<bool>,
    /// Gluon-fusion intrinsic LHS is nondecreasing in Θ at each profile mass.
    pub gg_intrinsic_rises_at_fixed_mass: Option<bool>,
    /// Gluon-fusion intrinsic LHS at 700 GeV lies below 500 GeV at every Θ.
    pub intrinsic_lower_at_700_than_500: Option<bool>,
    /// `qmi + cond_entropy = 1` at every record.
    pub qmi_plus_cond_is_one: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditSummary {
    pub record_count: usize,
    pub max_ccr_deviation: f64,
    /// `max(|pred_a|, |coh_a|)`.
    pub max_marginal_term: f64,
    pub min_intrinsic_slack: f64,
    pub min_eur_slack: f64,
    pub min_eigenvalue: f64,
    /// `(w_gg, max intrinsic_lhs)`, ascending in `w_gg`.
    pub intrinsic_max_by_wgg: Vec<(f64, f64)>,
    /// `(w_gg, m_ttbar, theta, qmi)` at each weight's QMI maximum.
    pub qmi_argmax_by_wgg: Vec<(f64, f64, f64, f64)>,
    pub trends: TrendChecks,
    pub closed_form_ok: usize,
    pub closed_form_discrepancy: usize,
    pub closed_form_domain_error: usize,
    /// Largest closed-form deviation over pure-channel records.
    pub max_pure_channel_deviation: Option<f64>,
    /// Explanation of closed-form disagreement at mixed weights, if any.
    pub closed_form_diagnostic: Option<String>,
    /// Per-point invariant names with the number of records breaking them.
    pub violations: BTreeMap<&'static str, usize>,
}

impl AuditSummary {
    pub fn has_violations(&self) -> bool {
        !self.violations.is_empty()
    }

    /// Fills the fixed-mass trend checks from gluon-fusion Θ profiles.
    pub fn apply_profiles(&mut self, profiles: &[(f64, Vec<ScanRecord>)], slack: f64) {
        let lhs = |recs: &[ScanRecord]| {
            recs.iter()
                .map(|r| r.report.intrinsic_lhs)
                .collect::<Vec<_>>()
        };
        if !profiles.is_empty() {
            self.trends.gg_intrinsic_rises_at_fixed_mass = Some(
                profiles
                    .iter()
                    .all(|(_, recs)| nondecreasing(&lhs(recs), slack)),
            );
        }
        let find = |m: f64| {
            profiles
                .iter()
                .find(|(pm, _)| *pm == m)
                .map(|(_, r)| lhs(r))
        };
        if let (Some(at500), Some(at700)) = (find(500.0), find(700.0)) {
            self.trends.intrinsic_lower_at_700_than_500 =
                Some(at500.iter().zip(&at700).all(|(lo, hi)| hi < lo));
        }
    }

    /// `key=value` lines in a fixed order.
    pub fn key_values(&self) -> Vec<(String, String)> {
        let opt_bool = |b: Option<bool>| b.map_or("n/a".to_string(), |v| v.to_string());
        let mut kv = vec![
            ("records".into(), self.record_count.to_string()),
            (
                "max_ccr_deviation".into(),
                format!("{:e}", self.max_ccr_deviation),
            ),
            (
                "max_marginal_term".into(),
                format!("{:e}", self.max_marginal_term),
            ),
            (
                "min_intrinsic_slack".into(),
                format!("{:e}", self.min_intrinsic_slack),
            ),
            ("min_eur_slack".into(), format!("{:e}", self.min_eur_slack)),
            (
                "min_eigenvalue".into(),
                format!("{:e}", self.min_eigenvalue),
            ),
        ];
        for (w, max) in &self.intrinsic_max_by_wgg {
            kv.push((format!("intrinsic_max[w_gg={w}]"), format!("{max:.12}")));
        }
        for (w, m, theta, qmi) in &self.qmi_argmax_by_wgg {
            kv.push((
                format!("qmi_argmax[w_gg={w}]"),
                format!("m_ttbar={m} theta={theta} qmi={qmi:.12}"),
            ));
        }
        let t = &self.trends;
        kv.extend([
            (
                "trend.intrinsic_max_rises_with_wgg".into(),
                opt_bool(t.intrinsic_max_rises_with_wgg),
            ),
            (
                "trend.gg_rec_falls_near_threshold".into(),
                opt_bool(t.gg_rec_falls_near_threshold),
            ),
            (
                "trend.qqbar_rec_rises_with_theta".into(),
                opt_bool(t.qqbar_rec_rises_with_theta),
            ),
            (
                "trend.gg_intrinsic_rises_at_fixed_mass".into(),
                opt_bool(t.gg_intrinsic_rises_at_fixed_mass),
            ),
            (
                "trend.intrinsic_lower_at_700_than_500".into(),
                opt_bool(t.intrinsic_lower_at_700_than_500),
            ),
            (
                "trend.qmi_plus_cond_is_one".into(),
                t.qmi_plus_cond_is_one.to_string(),
            ),
            ("closed_form.ok".into(), self.closed_form_ok.to_string()),
            (
                "closed_form.discrepancy".into(),
                self.closed_form_discrepancy.to_string(),
            ),
            (
                "closed_form.domain_error".into(),
                self.closed_form_domain_error.to_string(),
            ),
            (
                "closed_form.max_pure_channel_deviation".into(),
                self.max_pure_channel_deviation
                    .map_or("n/a".into(), |d| format!("{d:e}")),
            ),
        ]);
        if let Some(diag) = &self.closed_form_diagnostic {
            kv.push(("closed_form.diagnostic".into(), diag.clone()));
        }
        let violations = if self.violations.is_empty() {
            "none".to_string()
        } else {
            self.violations
                .iter()
                .map(|(k, n)| format!("{k}:{n}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        kv.push(("violations".into(), violations));
        kv
    }
}

impl fmt::Display for AuditSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.key_values() {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

fn nondecreasing(values: &[f64], slack: f64) -> bool {
    values.windows(2).all(|w| w[1] >= w[0] - slack)
}

fn nonincreasing(values: &[f64], slack: f64) -> bool {
    values.windows(2).all(|w| w[1] <= w[0] + slack)
}

/// Θ-ordered records of one weight, grouped by mass row.
fn rows_for_weight(records: &[ScanRecord], w_gg: f64) -> BTreeMap<u64, Vec<&ScanRecord>> {
    let mut rows: BTreeMap<u64, Vec<&ScanRecord>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.w_gg == w_gg) {
        // Masses are positive, so the IEEE bit pattern orders like the value.
        rows.entry(r.m_ttbar.to_bits()).or_default().push(r);
    }
    for row in rows.values_mut() {
        row.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    }
    rows
}

/// Folds records from one scan into the summary. Fixed-mass trends stay
/// `None` until [`AuditSummary::apply_profiles`] is called.
pub fn summarize_audits(records: &[ScanRecord], tol: &Tolerances) -> AuditSummary {
    let mut s = AuditSummary {
        record_count: records.len(),
        max_ccr_deviation: 0.0,
        max_marginal_term: 0.0,
        min_intrinsic_slack: f64::INFINITY,
        min_eur_slack: f64::INFINITY,
        min_eigenvalue: f64::INFINITY,
        intrinsic_max_by_wgg: Vec::new(),
        qmi_argmax_by_wgg: Vec::new(),
        trends: TrendChecks {
            qmi_plus_cond_is_one: true,
            ..TrendChecks::default()
        },
        closed_form_ok: 0,
        closed_form_discrepancy: 0,
        closed_form_domain_error: 0,
        max_pure_channel_deviation: None,
        closed_form_diagnostic: None,
        violations: BTreeMap::new(),
    };

    let mut by_weight: BTreeMap<u64, (f64, f64, f64, f64, f64)> = BTreeMap::new();
    let mut mixed_bad = 0usize;
    let mut mixed_total = 0usize;

    for r in records {
        let rep = &r.report;
        s.max_ccr_deviation = s.max_ccr_deviation.max((rep.ccr_sum - 1.0).abs());
        s.max_marginal_term = s
            .max_marginal_term
            .max(rep.pred_a.abs())
            .max(rep.coh_a.abs());
        s.min_intrinsic_slack = s.min_intrinsic_slack.min(rep.intrinsic_slack());
        s.min_eur_slack = s.min_eur_slack.min(rep.eur_slack());
        s.min_eigenvalue = s.min_eigenvalue.min(r.min_eigenvalue);
        if (rep.qmi + rep.cond_entropy_a_given_b - 1.0).abs() > tol.ccr {
            s.trends.qmi_plus_cond_is_one = false;
        }

        match r.closed_form_status {
            ClosedFormStatus::Ok => s.closed_form_ok += 1,
            ClosedFormStatus::Discrepancy => s.closed_form_discrepancy += 1,
            ClosedFormStatus::DomainError => s.closed_form_domain_error += 1,
        }
        if r.is_pure_channel() {
            if let Some(d) = r.closed_form_deviation {
                s.max_pure_channel_deviation =
                    Some(s.max_pure_channel_deviation.map_or(d, |m| m.max(d)));
            }
        } else {
            mixed_total += 1;
            if r.closed_form_status != ClosedFormStatus::Ok {
                mixed_bad += 1;
            }
        }

        for name in r.violations(tol) {
            *s.violations.entry(name).or_default() += 1;
        }

        // (w, max intrinsic, argmax m, argmax θ, max qmi); weights lie in [0, 1]
        // so their bit patterns sort like their values.
        let entry = by_weight.entry(r.w_gg.to_bits()).or_insert((
            r.w_gg,
            f64::NEG_INFINITY,
            r.m_ttbar,
            r.theta,
            f64::NEG_INFINITY,
        ));
        entry.1 = entry.1.max(rep.intrinsic_lhs);
        if rep.qmi > entry.4 {
            entry.2 = r.m_ttbar;
            entry.3 = r.theta;
            entry.4 = rep.qmi;
        }
    }

    for (w, lhs_max, m, theta, qmi) in by_weight.values().copied() {
        s.intrinsic_max_by_wgg.push((w, lhs_max));
        s.qmi_argmax_by_wgg.push((w, m, theta, qmi));
    }
    if s.intrinsic_max_by_wgg.len() >= 2 {
        let maxima: Vec<f64> = s.intrinsic_max_by_wgg.iter().map(|p| p.1).collect();
        s.trends.intrinsic_max_rises_with_wgg = Some(nondecreasing(&maxima, tol.trend));
    }

    let rec = |row: &Vec<&ScanRecord>| row.iter().map(|r| r.report.rec).collect::<Vec<_>>();
    let gg_rows = rows_for_weight(records, 1.0);
    if let Some(first) = gg_rows.values().next() {
        s.trends.gg_rec_falls_near_threshold = Some(nonincreasing(&rec(first), tol.trend));
    }
    let qq_rows = rows_for_weight(records, 0.0);
    if !qq_rows.is_empty() {
        s.trends.qqbar_rec_rises_with_theta = Some(
            qq_rows
                .values()
                .all(|row| nondecreasing(&rec(row), tol.trend)),
        );
    }

    if mixed_bad > 0 {
        s.closed_form_diagnostic = Some(format!(
            "{mixed_bad} of {mixed_total} mixed-weight points disagree with the closed form \
             (discrepancy or domain error); its first logarithm takes \
             W_gg*x_gg/(4A_gg) - W_qq*x_qq/(4A_qq) while the matching prefactor and the \
             spectral eigenvalue carry the sum, so the minus sign is the suspected cause; \
             the expression is evaluated as written"
        ));
    }

    if records.is_empty() {
        s.min_intrinsic_slack = 0.0;
        s.min_eur_slack = 0.0;
        s.min_eigenvalue = 0.0;
    }
    s
}
