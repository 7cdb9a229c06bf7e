//! Analytic expressions for the mutual information and the relative entropy
//! of coherence of the channel mixture, used as a validation layer against
//! the spectral route in [`crate::info_measures`].
//!
//! The expressions are evaluated term by term as written, including the
//! first eigenvalue term, whose logarithm takes `W_gg·x_gg − W_qq̄·x_qq̄`
//! while the prefactor (and the spectral eigenvalue it represents) carries
//! `W_gg·x_gg + W_qq̄·x_qq̄`. When one weight is exactly zero the absent
//! channel's term is dropped together with its operator, which is the
//! single-channel form of the same expression. For genuine mixtures the
//! difference survives and shows up as a domain error or a discrepancy
//! against the spectral value; it is reported, never corrected.

use std::f64::consts::LN_2;

use thiserror::Error;

use crate::qcd_production::{
    gg_coefficients, qqbar_coefficients, Kinematics, MixtureWeights, ProductionCoefficients,
};

/// Agreement required between closed-form and spectral values.
pub const AGREEMENT_TOL: f64 = 1e-8;

/// Eigenvalue terms smaller than this (relative to `4 Ã^gg Ã^qq̄`) are taken
/// as `x log x → 0`.
const NEGLIGIBLE_TERM: f64 = 1e-14;

/// Relative size of a negative radicand still treated as roundoff.
const RADICAND_TOL: f64 = 1e-12;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum ClosedFormError {
    #[error("radicand of Q is negative: {radicand:e}")]
    NegativeRadicand { radicand: f64 },
    #[error("logarithm argument of term `{term}` is not positive: {argument:e}")]
    DomainError { term: &'static str, argument: f64 },
}

/// Both channels' coefficients at one phase-space point plus the weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelPairInput {
    coeffs_gg: ProductionCoefficients,
    coeffs_qq: ProductionCoefficients,
    w_gg: f64,
    w_qq: f64,
}

impl ChannelPairInput {
    pub fn new(kin: &Kinematics, weights: MixtureWeights) -> Self {
        Self {
            coeffs_gg: gg_coefficients(kin),
            coeffs_qq: qqbar_coefficients(kin),
            w_gg: weights.gg(),
            w_qq: weights.qqbar(),
        }
    }

    pub fn coeffs_gg(&self) -> &ProductionCoefficients {
        &self.coeffs_gg
    }

    pub fn coeffs_qq(&self) -> &ProductionCoefficients {
        &self.coeffs_qq
    }

    /// `(W_gg, W_qq̄)`.
    pub fn weights(&self) -> (f64, f64) {
        (self.w_gg, self.w_qq)
    }

    /// The same mixture with the two channel slots relabelled.
    pub fn swapped(&self) -> Self {
        Self {
            coeffs_gg: self.coeffs_qq,
            coeffs_qq: self.coeffs_gg,
            w_gg: self.w_qq,
            w_qq: self.w_gg,
        }
    }

    #[cfg(test)]
    fn with_raw_weights(mut self, w_gg: f64, w_qq: f64) -> Self {
        self.w_gg = w_gg;
        self.w_qq = w_qq;
        self
    }

    fn norm(&self) -> f64 {
        4.0 * self.coeffs_gg.a_tilde * self.coeffs_qq.a_tilde
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discriminant {
    pub f1_gg: f64,
    pub f1_qq: f64,
    /// `Q`, the square root of the (clamped) radicand.
    pub q_value: f64,
    pub radicand: f64,
}

fn transverse_split(c: &ProductionCoefficients) -> f64 {
    4.0 * c.c_rk * c.c_rk + (c.c_rr - c.c_kk).powi(2)
}

pub fn discriminant(input: &ChannelPairInput) -> Result<Discriminant, ClosedFormError> {
    let (g, q) = (&input.coeffs_gg, &input.coeffs_qq);
    let (wg, wq) = (input.w_gg, input.w_qq);
    let f1_gg = wg * wg * q.a_tilde * q.a_tilde * transverse_split(g);
    let f1_qq = wq * wq * g.a_tilde * g.a_tilde * transverse_split(q);
    let cross = 2.0
        * wg
        * wq
        * g.a_tilde
        * q.a_tilde
        * (4.0 * g.c_rk * q.c_rk + (q.c_rr - q.c_kk) * (g.c_rr - g.c_kk));
    let radicand = f1_gg + f1_qq + cross;
    let q_value = checked_sqrt(radicand, (g.a_tilde * q.a_tilde).powi(2))?;
    Ok(Discriminant {
        f1_gg,
        f1_qq,
        q_value,
        radicand,
    })
}

// The radicand is |W_gg Ã^qq̄ v_gg + W_qq̄ Ã^gg v_qq̄|² with v = (2C̃_rk, C̃_rr − C̃_kk),
// so only roundoff can push it below zero.
fn checked_sqrt(radicand: f64, scale: f64) -> Result<f64, ClosedFormError> {
    if radicand < -RADICAND_TOL * scale {
        return Err(ClosedFormError::NegativeRadicand { radicand });
    }
    Ok(radicand.max(0.0).sqrt())
}

/// Prefactors and logarithm arguments of the four eigenvalue terms shared by
/// both expressions.
struct EigenTerms {
    prefactors: [f64; 4],
    arguments: [f64; 4],
}

const TERM_NAMES: [&str; 4] = [
    "anti-singlet",
    "singlet",
    "transverse-minus",
    "transverse-plus",
];

fn eigen_terms(input: &ChannelPairInput) -> Result<EigenTerms, ClosedFormError> {
    let (g, q) = (&input.coeffs_gg, &input.coeffs_qq);
    let (wg, wq) = (input.w_gg, input.w_qq);
    let (ag, aq) = (g.a_tilde, q.a_tilde);
    let norm = input.norm();

    let x_gg = ag + g.c_rr - g.c_nn + g.c_kk;
    let x_qq = aq + q.c_rr - q.c_nn + q.c_kk;
    let p1 = wg * aq * x_gg + wq * ag * x_qq;
    let gg_part = wg * x_gg / (4.0 * ag);
    let qq_part = wq * x_qq / (4.0 * aq);
    let arg1 = if wq == 0.0 {
        gg_part
    } else if wg == 0.0 {
        qq_part
    } else {
        gg_part - qq_part
    };

    let sum_gg = g.c_rr + g.c_nn + g.c_kk;
    let sum_qq = q.c_rr + q.c_nn + q.c_kk;
    let p2 = ag * aq - wg * aq * sum_gg - wq * ag * sum_qq;
    let arg2 = 0.25 - wg * sum_gg / (4.0 * ag) - wq * sum_qq / (4.0 * aq);

    let base = wq * ag * (aq + q.c_nn) + wg * aq * (ag + g.c_nn);
    let q_value = discriminant(input)?.q_value;
    let p3 = base - q_value;
    let p4 = base + q_value;

    Ok(EigenTerms {
        prefactors: [p1, p2, p3, p4],
        arguments: [arg1, arg2, p3 / norm, p4 / norm],
    })
}

/// `prefactor · ln(argument)`, with negligible prefactors contributing zero.
fn xlogx_term(
    term: &'static str,
    prefactor: f64,
    argument: f64,
    norm: f64,
) -> Result<f64, ClosedFormError> {
    if prefactor.abs() <= NEGLIGIBLE_TERM * norm {
        return Ok(0.0);
    }
    if !(argument > 0.0) {
        return Err(ClosedFormError::DomainError { term, argument });
    }
    Ok(prefactor * argument.ln())
}

fn eigen_sum(input: &ChannelPairInput) -> Result<f64, ClosedFormError> {
    let terms = eigen_terms(input)?;
    let norm = input.norm();
    let mut acc = 0.0;
    for i in 0..4 {
        acc += xlogx_term(TERM_NAMES[i], terms.prefactors[i], terms.arguments[i], norm)?;
    }
    Ok(acc)
}

/// Closed-form quantum mutual information in bits.
pub fn qmi_closed(input: &ChannelPairInput) -> Result<f64, ClosedFormError> {
    Ok(2.0 + eigen_sum(input)? / (input.norm() * LN_2))
}

/// Closed-form relative entropy of coherence in bits.
pub fn rec_closed(input: &ChannelPairInput) -> Result<f64, ClosedFormError> {
    let (g, q) = (&input.coeffs_gg, &input.coeffs_qq);
    let (wg, wq) = (input.w_gg, input.w_qq);
    let (ag, aq) = (g.a_tilde, q.a_tilde);
    let norm = input.norm();
    let kk = wg * g.c_kk / ag + wq * q.c_kk / aq;

    let minus_pref = 2.0 * (wg * aq * g.c_kk + wq * ag * q.c_kk - ag * aq);
    let plus_pref = -2.0 * (wg * aq * (ag + g.c_kk) + wq * ag * (aq + q.c_kk));
    let diag = norm * 4f64.ln()
        + xlogx_term("diagonal-minus", minus_pref, 1.0 - kk, norm)?
        + xlogx_term("diagonal-plus", plus_pref, 1.0 + kk, norm)?;
    Ok((diag + eigen_sum(input)?) / (norm * LN_2))
}

/// The four eigenvalues represented by the closed-form prefactors, in the
/// order anti-singlet, singlet, transverse-minus, transverse-plus.
pub fn closed_form_eigenvalues(input: &ChannelPairInput) -> Result<[f64; 4], ClosedFormError> {
    let terms = eigen_terms(input)?;
    let norm = input.norm();
    Ok(terms.prefactors.map(|p| p / norm))
}

/// Difference between the first logarithm argument as evaluated and the
/// eigenvalue its prefactor represents. Zero for pure channels.
pub fn first_term_mismatch(input: &ChannelPairInput) -> Result<f64, ClosedFormError> {
    let terms = eigen_terms(input)?;
    Ok(terms.arguments[0] - terms.prefactors[0] / input.norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedFormStatus {
    Ok,
    DomainError,
    Discrepancy,
}

impl ClosedFormStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClosedFormStatus::Ok => "ok",
            ClosedFormStatus::DomainError => "domain_error",
            ClosedFormStatus::Discrepancy => "discrepancy",
        }
    }
}

impl std::fmt::Display for ClosedFormStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Closed-form values paired with the spectral values they are checked against.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormCheck {
    pub qmi_closed: Option<f64>,
    pub rec_closed: Option<f64>,
    pub status: ClosedFormStatus,
    /// `max(|qmi_closed − qmi|, |rec_closed − rec|)` when both evaluate.
    pub deviation: Option<f64>,
    pub error: Option<ClosedFormError>,
}

/// Evaluates both expressions and classifies the point; `tolerance` is
/// normally [`AGREEMENT_TOL`].
pub fn cross_check(
    input: &ChannelPairInput,
    spectral_qmi: f64,
    spectral_rec: f64,
    tolerance: f64,
) -> ClosedFormCheck {
    match (qmi_closed(input), rec_closed(input)) {
        (Ok(qmi), Ok(rec)) => {
            let deviation = (qmi - spectral_qmi).abs().max((rec - spectral_rec).abs());
            let status = if deviation <= tolerance {
                ClosedFormStatus::Ok
            } else {
                ClosedFormStatus::Discrepancy
            };
            ClosedFormCheck {
                qmi_closed: Some(qmi),
                rec_closed: Some(rec),
                status,
                deviation: Some(deviation),
                error: None,
            }
        }
        (qmi, rec) => {
            let error = qmi.as_ref().err().or(rec.as_ref().err()).cloned();
            ClosedFormCheck {
                qmi_closed: qmi.ok(),
                rec_closed: rec.ok(),
                status: ClosedFormStatus::DomainError,
                deviation: None,
                error,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info_measures::{mutual_information, rel_entropy_coherence};
    use crate::qcd_production::mixed_state;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn input(m: f64, theta: f64, w: f64) -> ChannelPairInput {
        ChannelPairInput::new(
            &Kinematics::new(m, theta).unwrap(),
            MixtureWeights::new(w).unwrap(),
        )
    }

    fn threshold_input(theta: f64, w: f64) -> ChannelPairInput {
        ChannelPairInput::new(
            &Kinematics::from_beta(0.0, theta, 173.0).unwrap(),
            MixtureWeights::new(w).unwrap(),
        )
    }

    #[test]
    fn discriminant_pure_gluon_reduces_to_f1() {
        let inp = input(612.0, 0.9, 1.0);
        let d = discriminant(&inp).unwrap();
        let g = inp.coeffs_gg();
        let aq = inp.coeffs_qq().a_tilde;
        let want = aq * (4.0 * g.c_rk * g.c_rk + (g.c_rr - g.c_kk).powi(2)).sqrt();
        assert_eq!(d.f1_qq, 0.0);
        assert_close(d.q_value, want, 1e-12 * want);
        assert_close(d.q_value * d.q_value, d.radicand, 1e-10 * d.radicand);
    }

    #[test]
    fn discriminant_vanishes_at_gluon_threshold() {
        let d = discriminant(&threshold_input(1.2, 1.0)).unwrap();
        assert_eq!(d.f1_gg, 0.0);
        assert_eq!(d.q_value, 0.0);
    }

    #[test]
    fn discriminant_empty_mixture() {
        let inp = input(480.0, 0.5, 0.3).with_raw_weights(0.0, 0.0);
        assert_eq!(discriminant(&inp).unwrap().q_value, 0.0);
    }

    #[test]
    fn radicand_clamping() {
        assert_eq!(checked_sqrt(-1e-30, 1.0).unwrap(), 0.0);
        assert_eq!(checked_sqrt(4.0, 1.0).unwrap(), 2.0);
        assert!(matches!(
            checked_sqrt(-1e-9, 1.0),
            Err(ClosedFormError::NegativeRadicand { .. })
        ));
        // Negative weights still give a squared norm.
        let inp = input(480.0, 0.5, 0.3).with_raw_weights(1.0, -1.0);
        assert!(discriminant(&inp).unwrap().radicand >= 0.0);
    }

    #[test]
    fn pure_gluon_threshold() {
        let inp = threshold_input(0.8, 1.0);
        assert_close(qmi_closed(&inp).unwrap(), 2.0, 1e-12);
        assert_close(rec_closed(&inp).unwrap(), 1.0, 1e-12);
    }

    #[test]
    fn pure_quark_forward_is_classical_copy() {
        for beta in [0.0, 0.3, 0.9] {
            let kin = Kinematics::from_beta(beta, 0.0, 173.0).unwrap();
            let inp = ChannelPairInput::new(&kin, MixtureWeights::QUARK_ONLY);
            assert_close(qmi_closed(&inp).unwrap(), 1.0, 1e-12);
            assert_close(rec_closed(&inp).unwrap(), 0.0, 1e-12);
        }
    }

    #[test]
    fn pure_channels_match_spectral_route() {
        for (m, theta) in [
            (500.0, PI / 3.0),
            (700.0, FRAC_PI_4),
            (380.0, 1.4),
            (950.0, FRAC_PI_2),
        ] {
            for w in [0.0, 1.0] {
                let kin = Kinematics::new(m, theta).unwrap();
                let weights = MixtureWeights::new(w).unwrap();
                let rho = mixed_state(&kin, weights).unwrap();
                let inp = ChannelPairInput::new(&kin, weights);
                assert_close(qmi_closed(&inp).unwrap(), mutual_information(&rho), 1e-10);
                assert_close(
                    rec_closed(&inp).unwrap(),
                    rel_entropy_coherence(&rho),
                    1e-10,
                );
            }
        }
    }

    #[test]
    fn eigenvalue_prefactors_reproduce_spectrum() {
        for (m, theta, w) in [
            (500.0, PI / 3.0, 0.5),
            (700.0, FRAC_PI_4, 0.2),
            (420.0, 1.1, 0.9),
        ] {
            let kin = Kinematics::new(m, theta).unwrap();
            let weights = MixtureWeights::new(w).unwrap();
            let rho = mixed_state(&kin, weights).unwrap();
            let mut closed =
                closed_form_eigenvalues(&ChannelPairInput::new(&kin, weights)).unwrap();
            closed.sort_by(|a, b| b.total_cmp(a));
            for (c, s) in closed.iter().zip(rho.spectrum()) {
                assert_close(*c, *s, 1e-10);
            }
        }
    }

    #[test]
    fn mixed_weights_are_classified_not_silent() {
        let inp = input(500.0, PI / 3.0, 0.5);
        let kin = Kinematics::new(500.0, PI / 3.0).unwrap();
        let rho = mixed_state(&kin, MixtureWeights::new(0.5).unwrap()).unwrap();
        let check = cross_check(
            &inp,
            mutual_information(&rho),
            rel_entropy_coherence(&rho),
            AGREEMENT_TOL,
        );
        assert_ne!(check.status, ClosedFormStatus::Ok);
        assert!(first_term_mismatch(&inp).unwrap().abs() > 1e-3);
        if let Some(q) = check.qmi_closed {
            assert!(q.is_finite());
        }
        match check.status {
            ClosedFormStatus::DomainError => assert!(check.error.is_some()),
            ClosedFormStatus::Discrepancy => assert!(check.deviation.unwrap() > AGREEMENT_TOL),
            ClosedFormStatus::Ok => unreachable!(),
        }
    }

    #[test]
    fn pure_channel_relabelling_symmetry() {
        for w in [0.0, 1.0] {
            let inp = input(733.0, 0.6, w);
            let a = qmi_closed(&inp).unwrap();
            let b = qmi_closed(&inp.swapped()).unwrap();
            assert_close(a, b, 1e-10);
        }
        let inp = input(733.0, 0.6, 0.35);
        let d1 = discriminant(&inp).unwrap().q_value;
        let d2 = discriminant(&inp.swapped()).unwrap().q_value;
        assert_close(d1, d2, 1e-12 * d1);
    }

    #[test]
    fn status_strings() {
        assert_eq!(ClosedFormStatus::Ok.to_string(), "ok");
        assert_eq!(ClosedFormStatus::DomainError.as_str(), "domain_error");
        assert_eq!(ClosedFormStatus::Discrepancy.as_str(), "discrepancy");
    }
}
