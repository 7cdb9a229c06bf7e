//! Leading-order QCD spin density matrices for `qq̄ → tt̄` and `gg → tt̄`.
//!
//! Coefficients are kept un-normalized (`Ã`, `C̃_ij`) so the analytic
//! expressions in [`crate::closed_forms`] can consume them directly. The
//! normalized correlations are `C_ij = C̃_ij / Ã` and the state is
//! `ρ = (I⊗I + Σ C_ij σ_i⊗σ_j) / 4`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spin_algebra::{
    kron, zeros, CMatrix, DensityMatrix, HermitianMatrix4, SpinDensityMatrix, PAULI,
};

/// Top-quark mass in GeV.
pub const DEFAULT_TOP_MASS: f64 = 173.0;

/// `F_q` of the quark-annihilation channel.
pub const QQBAR_PREFACTOR: f64 = 1.0 / 18.0;

/// Pair velocity `β = sqrt(1 − 4 m_t² / M²)`.
pub fn beta_of_mass(m_ttbar: f64, m_top: f64) -> Result<f64> {
    if !(m_top > 0.0) || !m_top.is_finite() {
        return Err(Error::InvalidKinematics(format!(
            "top mass {m_top} must be positive"
        )));
    }
    let threshold = 2.0 * m_top;
    if !(m_ttbar >= threshold) || !m_ttbar.is_finite() {
        return Err(Error::BelowThreshold { m_ttbar, threshold });
    }
    Ok((1.0 - threshold * threshold / (m_ttbar * m_ttbar))
        .max(0.0)
        .sqrt())
}

/// One phase-space point: invariant mass and production angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    m_top: f64,
    m_ttbar: f64,
    theta: f64,
    beta: f64,
}

impl Kinematics {
    pub fn new(m_ttbar: f64, theta: f64) -> Result<Self> {
        Self::with_top_mass(m_ttbar, theta, DEFAULT_TOP_MASS)
    }

    pub fn with_top_mass(m_ttbar: f64, theta: f64, m_top: f64) -> Result<Self> {
        check_theta(theta)?;
        let beta = beta_of_mass(m_ttbar, m_top)?;
        Ok(Self {
            m_top,
            m_ttbar,
            theta,
            beta,
        })
    }

    /// Kinematics from the velocity directly; `M` is reconstructed as
    /// `2 m_t / sqrt(1 − β²)`.
    pub fn from_beta(beta: f64, theta: f64, m_top: f64) -> Result<Self> {
        check_theta(theta)?;
        if !(0.0..1.0).contains(&beta) {
            return Err(Error::InvalidKinematics(format!(
                "beta {beta} outside [0, 1)"
            )));
        }
        if !(m_top > 0.0) {
            return Err(Error::InvalidKinematics(format!(
                "top mass {m_top} must be positive"
            )));
        }
        let m_ttbar = 2.0 * m_top / (1.0 - beta * beta).sqrt();
        Ok(Self {
            m_top,
            m_ttbar,
            theta,
            beta,
        })
    }

    pub fn m_top(&self) -> f64 {
        self.m_top
    }

    pub fn m_ttbar(&self) -> f64 {
        self.m_ttbar
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::InvalidKinematics(format!(
            "theta {theta} outside [0, pi]"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    QuarkAntiquark,
    GluonGluon,
}

/// Un-normalized spin-density coefficients of one channel at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductionCoefficients {
    pub channel: Channel,
    pub a_tilde: f64,
    pub c_rr: f64,
    pub c_nn: f64,
    pub c_kk: f64,
    /// Equal to `C̃_kr` at leading order.
    pub c_rk: f64,
    /// Single-spin polarizations, zero at leading order.
    pub b_plus: [f64; 3],
    pub b_minus: [f64; 3],
    /// `F_q` or `F_g`.
    pub f_prefactor: f64,
}

impl ProductionCoefficients {
    /// Correlations `C_ij = C̃_ij / Ã` as `(rr, nn, kk, rk)`.
    pub fn normalized(&self) -> [f64; 4] {
        let a = self.a_tilde;
        [self.c_rr / a, self.c_nn / a, self.c_kk / a, self.c_rk / a]
    }

    /// Normalized correlation matrix indexed in `(k, r, n)` order.
    pub fn correlation_matrix(&self) -> [[f64; 3]; 3] {
        let [rr, nn, kk, rk] = self.normalized();
        [[kk, rk, 0.0], [rk, rr, 0.0], [0.0, 0.0, nn]]
    }
}

/// Quark–antiquark annihilation coefficients.
pub fn qqbar_coefficients(kin: &Kinematics) -> ProductionCoefficients {
    let b2 = kin.beta * kin.beta;
    let (s, c) = kin.theta.sin_cos();
    let s2 = s * s;
    let f = QQBAR_PREFACTOR;
    ProductionCoefficients {
        channel: Channel::QuarkAntiquark,
        a_tilde: f * (2.0 - b2 * s2),
        c_rr: f * (2.0 - b2) * s2,
        c_nn: -f * b2 * s2,
        c_kk: f * (2.0 - (2.0 - b2) * s2),
        c_rk: f * (1.0 - b2).sqrt() * 2.0 * s * c,
        b_plus: [0.0; 3],
        b_minus: [0.0; 3],
        f_prefactor: f,
    }
}

/// Gluon-fusion coefficients.
pub fn gg_coefficients(kin: &Kinematics) -> ProductionCoefficients {
    let b2 = kin.beta * kin.beta;
    let b4 = b2 * b2;
    let (s, c) = kin.theta.sin_cos();
    let s2 = s * s;
    let s4 = s2 * s2;
    let c2 = c * c;
    let sin_2theta = 2.0 * s * c;
    let denom = 1.0 - b2 * c2;
    let f = (7.0 + 9.0 * b2 * c2) / (192.0 * denom * denom);
    ProductionCoefficients {
        channel: Channel::GluonGluon,
        a_tilde: f * (1.0 + 2.0 * b2 * s2 - b4 * (1.0 + s4)),
        c_rr: -f * (1.0 - b2 * (2.0 - b2) * (1.0 + s4)),
        c_nn: -f * (1.0 - 2.0 * b2 + b4 * (1.0 + s4)),
        c_kk: -f * (1.0 - b2 * sin_2theta * sin_2theta / 2.0 - b4 * (1.0 + s4)),
        c_rk: f * (1.0 - b2).sqrt() * b2 * sin_2theta * s2,
        b_plus: [0.0; 3],
        b_minus: [0.0; 3],
        f_prefactor: f,
    }
}

pub fn channel_coefficients(channel: Channel, kin: &Kinematics) -> ProductionCoefficients {
    match channel {
        Channel::QuarkAntiquark => qqbar_coefficients(kin),
        Channel::GluonGluon => gg_coefficients(kin),
    }
}

/// Literal helicity-basis matrix, divided by `4Ã`.
pub fn literal_matrix(coeffs: &ProductionCoefficients) -> HermitianMatrix4 {
    let ProductionCoefficients {
        a_tilde: a,
        c_rr: rr,
        c_nn: nn,
        c_kk: kk,
        c_rk: rk,
        ..
    } = *coeffs;
    let kr = rk;
    let rows = [
        [a + kk, kr, rk, rr - nn],
        [kr, a - kk, rr + nn, -rk],
        [rk, rr + nn, a - kk, -kr],
        [rr - nn, -rk, -kr, a + kk],
    ];
    let norm = 4.0 * a;
    let entries: CMatrix<4> =
        std::array::from_fn(|i| std::array::from_fn(|j| Complex64::new(rows[i][j] / norm, 0.0)));
    HermitianMatrix4::new(entries).expect("real symmetric by construction")
}

/// The same state from the Pauli expansion
/// `(I⊗I + Σ B⁺_i σ_i⊗I + Σ B⁻_i I⊗σ_i + Σ C_ij σ_i⊗σ_j) / 4`.
pub fn pauli_expansion(coeffs: &ProductionCoefficients) -> HermitianMatrix4 {
    let sigmas = PAULI.sigmas();
    let corr = coeffs.correlation_matrix();
    let a = coeffs.a_tilde;
    let mut acc = kron(&PAULI.identity2, &PAULI.identity2);
    let mut add = |m: &CMatrix<4>, w: f64| {
        if w != 0.0 {
            for i in 0..4 {
                for j in 0..4 {
                    acc[i][j] += m[i][j] * w;
                }
            }
        }
    };
    for (i, si) in sigmas.iter().enumerate() {
        add(&kron(si, &PAULI.identity2), coeffs.b_plus[i] / a);
        add(&kron(&PAULI.identity2, si), coeffs.b_minus[i] / a);
        for (j, sj) in sigmas.iter().enumerate() {
            add(&kron(si, sj), corr[i][j]);
        }
    }
    let mut out = zeros::<4>();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = acc[i][j] * 0.25;
        }
    }
    HermitianMatrix4::new(out).expect("Pauli sum with real coefficients is Hermitian")
}

/// Normalized two-qubit state of a single channel.
pub fn assemble_density(coeffs: &ProductionCoefficients) -> Result<SpinDensityMatrix> {
    if !(coeffs.a_tilde > 0.0) {
        return Err(Error::InvalidKinematics(format!(
            "cross-section coefficient {} must be positive",
            coeffs.a_tilde
        )));
    }
    DensityMatrix::new_psd_checked(literal_matrix(coeffs))
}

/// Channel weights `(W_gg, W_qq̄ = 1 − W_gg)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureWeights {
    w_gg: f64,
}

impl MixtureWeights {
    pub fn new(w_gg: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&w_gg) {
            return Err(Error::InvalidWeight(w_gg));
        }
        Ok(Self { w_gg })
    }

    pub const GLUON_ONLY: MixtureWeights = MixtureWeights { w_gg: 1.0 };
    pub const QUARK_ONLY: MixtureWeights = MixtureWeights { w_gg: 0.0 };

    pub fn gg(&self) -> f64 {
        self.w_gg
    }

    pub fn qqbar(&self) -> f64 {
        1.0 - self.w_gg
    }
}

/// `W_gg ρ^gg + W_qq̄ ρ^qq̄`, each channel normalized by its own `4Ã` first.
pub fn mixed_state(kin: &Kinematics, w: MixtureWeights) -> Result<SpinDensityMatrix> {
    let gg = assemble_density(&gg_coefficients(kin))?;
    if w.gg() == 1.0 {
        return Ok(gg);
    }
    let qq = assemble_density(&qqbar_coefficients(kin))?;
    if w.gg() == 0.0 {
        return Ok(qq);
    }
    let mixed = gg.matrix().combine(w.gg(), qq.matrix(), w.qqbar());
    DensityMatrix::new_psd_checked(mixed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin_algebra::{partial_trace, DensityMatrix, Subsystem};
    use std::f64::consts::FRAC_PI_2;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn tuple(c: &ProductionCoefficients) -> [f64; 5] {
        [c.a_tilde, c.c_rr, c.c_nn, c.c_kk, c.c_rk]
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta_of_mass(346.0, 173.0).unwrap(), 0.0);
        // M = 2m/sqrt(1 - 0.36) = 346/0.8
        assert_close(beta_of_mass(432.5, 173.0).unwrap(), 0.6, 1e-15);
        assert!(matches!(
            beta_of_mass(300.0, 173.0),
            Err(Error::BelowThreshold { .. })
        ));
        assert!(beta_of_mass(400.0, 0.0).is_err());
    }

    #[test]
    fn kinematics_validation() {
        assert!(Kinematics::new(500.0, -0.1).is_err());
        assert!(Kinematics::new(500.0, PI + 1e-9).is_err());
        assert!(Kinematics::new(500.0, PI).is_ok());
        assert!(Kinematics::from_beta(1.0, 0.3, 173.0).is_err());
        let k = Kinematics::from_beta(0.6, 0.3, 173.0).unwrap();
        assert_close(k.m_ttbar(), 432.5, 1e-12);
    }

    #[test]
    fn qqbar_forward_direction() {
        let k = Kinematics::from_beta(0.6, 0.0, 173.0).unwrap();
        let c = qqbar_coefficients(&k);
        let f = QQBAR_PREFACTOR;
        assert_eq!(c.channel, Channel::QuarkAntiquark);
        assert_close(c.a_tilde, 1.0 / 9.0, 1e-16);
        assert_eq!([c.c_rr, c.c_nn, c.c_rk], [0.0, 0.0, 0.0]);
        assert_close(c.c_kk, 2.0 * f, 1e-16);
    }

    #[test]
    fn qqbar_threshold_transverse() {
        let k = Kinematics::from_beta(0.0, FRAC_PI_2, 173.0).unwrap();
        let c = qqbar_coefficients(&k);
        let f = QQBAR_PREFACTOR;
        let want = [2.0 * f, 2.0 * f, 0.0, 0.0, 0.0];
        for (g, w) in tuple(&c).iter().zip(want) {
            assert_close(*g, w, 1e-16);
        }
    }

    #[test]
    fn high_energy_limits() {
        let k = Kinematics::from_beta(1.0 - 1e-12, FRAC_PI_2, 173.0).unwrap();
        let q = qqbar_coefficients(&k);
        let g = gg_coefficients(&k);
        for c in [q, g] {
            let f = c.f_prefactor;
            let want = [1.0, 1.0, -1.0, 1.0, 0.0].map(|x| x * f);
            for (got, w) in tuple(&c).iter().zip(want) {
                assert_close(*got, w, 1e-9 * f);
            }
        }
    }

    #[test]
    fn gg_threshold_is_singlet_shaped() {
        for theta in [0.0, 0.4, FRAC_PI_2, 2.5, PI] {
            let k = Kinematics::from_beta(0.0, theta, 173.0).unwrap();
            let c = gg_coefficients(&k);
            let f = 7.0 / 192.0;
            assert_close(c.f_prefactor, f, 1e-17);
            let want = [1.0, -1.0, -1.0, -1.0, 0.0].map(|x| x * f);
            for (got, w) in tuple(&c).iter().zip(want) {
                assert_close(*got, w, 1e-17);
            }
        }
    }

    #[test]
    fn gg_forward_has_no_rk_and_equal_transverse() {
        let k = Kinematics::from_beta(0.9, 0.0, 173.0).unwrap();
        let c = gg_coefficients(&k);
        assert_eq!(c.c_rk, 0.0);
        assert_close(c.c_rr, c.c_nn, 1e-16);
    }

    #[test]
    fn polarizations_vanish() {
        let k = Kinematics::new(613.0, 1.1).unwrap();
        for c in [qqbar_coefficients(&k), gg_coefficients(&k)] {
            assert_eq!(c.b_plus, [0.0; 3]);
            assert_eq!(c.b_minus, [0.0; 3]);
            for x in [c.c_rr, c.c_nn, c.c_kk, c.c_rk] {
                assert!(x.abs() <= c.a_tilde);
            }
        }
    }

    #[test]
    fn assemble_singlet_and_classical_copy() {
        let f = 7.0 / 192.0;
        let singlet_coeffs = ProductionCoefficients {
            channel: Channel::GluonGluon,
            a_tilde: f,
            c_rr: -f,
            c_nn: -f,
            c_kk: -f,
            c_rk: 0.0,
            b_plus: [0.0; 3],
            b_minus: [0.0; 3],
            f_prefactor: f,
        };
        let rho = assemble_density(&singlet_coeffs).unwrap();
        assert!(
            rho.matrix()
                .max_abs_diff(SpinDensityMatrix::singlet().matrix())
                < 1e-15
        );

        let fq = 2.0 * QQBAR_PREFACTOR;
        let copy_coeffs = ProductionCoefficients {
            channel: Channel::QuarkAntiquark,
            a_tilde: fq,
            c_rr: 0.0,
            c_nn: 0.0,
            c_kk: fq,
            c_rk: 0.0,
            b_plus: [0.0; 3],
            b_minus: [0.0; 3],
            f_prefactor: QQBAR_PREFACTOR,
        };
        let rho = assemble_density(&copy_coeffs).unwrap();
        let want = DensityMatrix::from_diagonal([0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!(rho.matrix().max_abs_diff(want.matrix()) < 1e-15);
    }

    #[test]
    fn assemble_rejects_inconsistent_coefficients() {
        let bad = ProductionCoefficients {
            channel: Channel::GluonGluon,
            a_tilde: 1.0,
            c_rr: 1.0,
            c_nn: 1.0,
            c_kk: 1.0,
            c_rk: 0.0,
            b_plus: [0.0; 3],
            b_minus: [0.0; 3],
            f_prefactor: 1.0,
        };
        assert!(matches!(assemble_density(&bad), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn literal_and_pauli_routes_agree_at_reference_point() {
        let k = Kinematics::new(500.0, PI / 3.0).unwrap();
        for c in [gg_coefficients(&k), qqbar_coefficients(&k)] {
            assert!(literal_matrix(&c).max_abs_diff(&pauli_expansion(&c)) < 1e-12);
        }
    }

    #[test]
    fn gg_reference_point_diagonal() {
        // Direct substitution at M = 500 GeV, Θ = π/3.
        let b2 = 1.0 - (346.0f64 / 500.0).powi(2);
        let s2 = 0.75;
        let c2 = 0.25;
        let sin2t_sq = 0.75;
        let f = (7.0 + 9.0 * b2 * c2) / (192.0 * (1.0 - b2 * c2).powi(2));
        let a = f * (1.0 + 2.0 * b2 * s2 - b2 * b2 * (1.0 + s2 * s2));
        let kk = -f * (1.0 - b2 * sin2t_sq / 2.0 - b2 * b2 * (1.0 + s2 * s2));
        let k = Kinematics::new(500.0, PI / 3.0).unwrap();
        let rho = assemble_density(&gg_coefficients(&k)).unwrap();
        let d = crate::spin_algebra::dephase_diagonal(&rho)
            .matrix()
            .diagonal();
        let want = [a + kk, a - kk, a - kk, a + kk].map(|x| x / (4.0 * a));
        for (g, w) in d.iter().zip(want) {
            assert_close(*g, w, 1e-14);
        }
    }

    #[test]
    fn mixture_endpoints_and_threshold_mix() {
        let k = Kinematics::new(640.0, 0.7).unwrap();
        let gg = assemble_density(&gg_coefficients(&k)).unwrap();
        let qq = assemble_density(&qqbar_coefficients(&k)).unwrap();
        assert_eq!(mixed_state(&k, MixtureWeights::GLUON_ONLY).unwrap(), gg);
        assert_eq!(mixed_state(&k, MixtureWeights::QUARK_ONLY).unwrap(), qq);

        // 0.5·singlet + 0.5·(I + σ_r⊗σ_r)/4 has spectrum {1/2, 1/4, 1/4, 0}.
        let k = Kinematics::from_beta(0.0, FRAC_PI_2, 173.0).unwrap();
        let rho = mixed_state(&k, MixtureWeights::new(0.5).unwrap()).unwrap();
        assert_close(rho.matrix().trace(), 1.0, 1e-15);
        for (g, w) in rho.spectrum().iter().zip([0.5, 0.25, 0.25, 0.0]) {
            assert_close(*g, w, 1e-14);
        }
    }

    #[test]
    fn weights_validated() {
        assert!(MixtureWeights::new(1.2).is_err());
        assert!(MixtureWeights::new(f64::NAN).is_err());
        let w = MixtureWeights::new(0.3).unwrap();
        assert_eq!(w.gg() + w.qqbar(), 1.0);
    }

    #[test]
    fn marginals_are_maximally_mixed() {
        let half = DensityMatrix::<2>::maximally_mixed();
        for (m, t, w) in [(350.0, 0.2, 0.0), (700.0, 1.3, 0.35), (2000.0, 2.9, 1.0)] {
            let k = Kinematics::new(m, t).unwrap();
            let rho = mixed_state(&k, MixtureWeights::new(w).unwrap()).unwrap();
            for keep in [Subsystem::A, Subsystem::B] {
                assert!(
                    partial_trace(&rho, keep)
                        .matrix()
                        .max_abs_diff(half.matrix())
                        < 1e-12
                );
            }
        }
    }
}
