//! Entropic information measures of a two-qubit state, all in bits.
//!
//! Subsystem A is the top quark (first tensor slot), B the antitop.

use crate::error::Result;
use crate::spin_algebra::{
    dephase_diagonal, local_dephase, partial_trace, von_neumann_entropy, Axis, DensityMatrix,
    SpinDensityMatrix, Subsystem,
};

/// Two single-qubit observables measured on A, with their eigenbasis overlap
/// `c = max_ij |⟨q_i|r_j⟩|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservablePair {
    q_axis: Axis,
    r_axis: Axis,
    c_overlap: f64,
}

impl ObservablePair {
    /// Normalizes both axes; for qubits `c = (1 + |q̂·r̂|)/2`.
    pub fn new(q: Axis, r: Axis) -> Result<Self> {
        let q_axis = q.unit()?;
        let r_axis = r.unit()?;
        let c_overlap = ((1.0 + q_axis.dot(&r_axis).abs()) / 2.0).clamp(0.5, 1.0);
        Ok(Self {
            q_axis,
            r_axis,
            c_overlap,
        })
    }

    pub fn q_axis(&self) -> Axis {
        self.q_axis
    }

    pub fn r_axis(&self) -> Axis {
        self.r_axis
    }

    pub fn c_overlap(&self) -> f64 {
        self.c_overlap
    }

    /// `log₂(1/c)`.
    pub fn overlap_bound(&self) -> f64 {
        -self.c_overlap.log2()
    }
}

impl Default for ObservablePair {
    /// Spin along `k` and along `r`: mutually unbiased, `c = 1/2`.
    fn default() -> Self {
        Self {
            q_axis: Axis::K,
            r_axis: Axis::R,
            c_overlap: 0.5,
        }
    }
}

/// `c` computed directly from the eigenvectors of `σ·q̂` and `σ·r̂`.
pub fn overlap_from_eigenstates(q: Axis, r: Axis) -> Result<f64> {
    let eig = |axis: Axis| -> Result<_> {
        let op = crate::spin_algebra::HermitianMatrix2::new(axis.spin_operator()?)?;
        Ok(op.eigensystem().eigenvectors)
    };
    let qv = eig(q)?;
    let rv = eig(r)?;
    let mut best = 0.0f64;
    for a in &qv {
        for b in &rv {
            let inner: num_complex::Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
            best = best.max(inner.norm_sqr());
        }
    }
    Ok(best)
}

/// `S(ρ_A) + S(ρ_B) − S(ρ_AB)`.
pub fn mutual_information(rho: &SpinDensityMatrix) -> f64 {
    let s_a = von_neumann_entropy(&partial_trace(rho, Subsystem::A));
    let s_b = von_neumann_entropy(&partial_trace(rho, Subsystem::B));
    s_a + s_b - von_neumann_entropy(rho)
}

/// Relative entropy of coherence in the helicity product basis.
pub fn rel_entropy_coherence(rho: &SpinDensityMatrix) -> f64 {
    von_neumann_entropy(&dephase_diagonal(rho)) - von_neumann_entropy(rho)
}

/// `S(A|B) = S(ρ_AB) − S(ρ_B)`.
pub fn conditional_entropy(rho: &SpinDensityMatrix) -> f64 {
    von_neumann_entropy(rho) - von_neumann_entropy(&partial_trace(rho, Subsystem::B))
}

/// `log₂(d_A d_B) − S(ρ_diag)`.
pub fn predictability_joint(rho: &SpinDensityMatrix) -> f64 {
    2.0 - von_neumann_entropy(&dephase_diagonal(rho))
}

/// Terms of the complete complementarity relation for subsystem A.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CcrAudit {
    pub qmi: f64,
    pub cond_entropy: f64,
    pub pred_a: f64,
    pub coh_a: f64,
    /// Must equal `log₂ d_A = 1`.
    pub ccr_sum: f64,
}

pub fn ccr_audit(rho: &SpinDensityMatrix) -> CcrAudit {
    let s_ab = von_neumann_entropy(rho);
    let rho_a = partial_trace(rho, Subsystem::A);
    let rho_b = partial_trace(rho, Subsystem::B);
    ccr_from_parts(s_ab, &rho_a, &rho_b)
}

fn ccr_from_parts(s_ab: f64, rho_a: &DensityMatrix<2>, rho_b: &DensityMatrix<2>) -> CcrAudit {
    let s_a = von_neumann_entropy(rho_a);
    let s_b = von_neumann_entropy(rho_b);
    let s_a_diag = von_neumann_entropy(&dephase_diagonal(rho_a));
    let qmi = s_a + s_b - s_ab;
    let cond_entropy = s_ab - s_b;
    let pred_a = 1.0 - s_a_diag;
    let coh_a = s_a_diag - s_a;
    CcrAudit {
        qmi,
        cond_entropy,
        pred_a,
        coh_a,
        ccr_sum: qmi + cond_entropy + pred_a + coh_a,
    }
}

/// `S(X|B)` of the post-measurement state after measuring `σ·x̂` on A.
pub fn measured_conditional_entropy(rho: &SpinDensityMatrix, axis: Axis) -> Result<f64> {
    let post = local_dephase(rho, axis)?;
    Ok(von_neumann_entropy(&post) - von_neumann_entropy(&partial_trace(rho, Subsystem::B)))
}

/// `S(Q|B) + S(R|B) ≥ log₂(1/c) + S(A|B)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyAudit {
    pub lhs: f64,
    pub rhs: f64,
}

impl UncertaintyAudit {
    pub fn slack(&self) -> f64 {
        self.lhs - self.rhs
    }
}

pub fn uncertainty_audit(
    rho: &SpinDensityMatrix,
    obs: &ObservablePair,
) -> Result<UncertaintyAudit> {
    let s_q = measured_conditional_entropy(rho, obs.q_axis)?;
    let s_r = measured_conditional_entropy(rho, obs.r_axis)?;
    Ok(UncertaintyAudit {
        lhs: s_q + s_r,
        rhs: obs.overlap_bound() + conditional_entropy(rho),
    })
}

/// `S(Q|B) + S(R|B) + S(ρ_B) + P_vn(ρ_AB) + C_re(ρ_AB) ≥ log₂(1/c) + log₂(d_A d_B)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntrinsicAudit {
    pub lhs: f64,
    pub rhs: f64,
}

impl IntrinsicAudit {
    pub fn slack(&self) -> f64 {
        self.lhs - self.rhs
    }
}

pub fn intrinsic_audit(rho: &SpinDensityMatrix, obs: &ObservablePair) -> Result<IntrinsicAudit> {
    let s_q = measured_conditional_entropy(rho, obs.q_axis)?;
    let s_r = measured_conditional_entropy(rho, obs.r_axis)?;
    let s_b = von_neumann_entropy(&partial_trace(rho, Subsystem::B));
    let lhs = s_q + s_r + s_b + predictability_joint(rho) + rel_entropy_coherence(rho);
    Ok(IntrinsicAudit {
        lhs,
        rhs: obs.overlap_bound() + 2.0,
    })
}

/// Every scalar measure at one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureReport {
    pub qmi: f64,
    pub rec: f64,
    pub cond_entropy_a_given_b: f64,
    pub entropy_b: f64,
    pub pred_joint: f64,
    pub pred_a: f64,
    pub coh_a: f64,
    pub ccr_sum: f64,
    pub s_q_given_b: f64,
    pub s_r_given_b: f64,
    pub eur_lhs: f64,
    pub eur_rhs: f64,
    pub intrinsic_lhs: f64,
    pub intrinsic_rhs: f64,
}

impl MeasureReport {
    /// Computes all fields with one spectral decomposition per distinct
    /// matrix (ρ, ρ_A, ρ_B and the two measured states; the dephased state is
    /// diagonal).
    pub fn evaluate(rho: &SpinDensityMatrix, obs: &ObservablePair) -> Result<Self> {
        let s_ab = von_neumann_entropy(rho);
        let rho_a = partial_trace(rho, Subsystem::A);
        let rho_b = partial_trace(rho, Subsystem::B);
        let s_b = von_neumann_entropy(&rho_b);
        let s_diag = von_neumann_entropy(&dephase_diagonal(rho));
        let ccr = ccr_from_parts(s_ab, &rho_a, &rho_b);

        let s_q = von_neumann_entropy(&local_dephase(rho, obs.q_axis)?) - s_b;
        let s_r = von_neumann_entropy(&local_dephase(rho, obs.r_axis)?) - s_b;

        let rec = s_diag - s_ab;
        let pred_joint = 2.0 - s_diag;
        let bound = obs.overlap_bound();
        Ok(Self {
            qmi: ccr.qmi,
            rec,
            cond_entropy_a_given_b: ccr.cond_entropy,
            entropy_b: s_b,
            pred_joint,
            pred_a: ccr.pred_a,
            coh_a: ccr.coh_a,
            ccr_sum: ccr.ccr_sum,
            s_q_given_b: s_q,
            s_r_given_b: s_r,
            eur_lhs: s_q + s_r,
            eur_rhs: bound + ccr.cond_entropy,
            intrinsic_lhs: s_q + s_r + s_b + pred_joint + rec,
            intrinsic_rhs: bound + 2.0,
        })
    }

    pub fn eur_slack(&self) -> f64 {
        self.eur_lhs - self.eur_rhs
    }

    pub fn intrinsic_slack(&self) -> f64 {
        self.intrinsic_lhs - self.intrinsic_rhs
    }

    /// `(name, value)` pairs in a fixed order.
    pub fn fields(&self) -> [(&'static str, f64); 14] {
        [
            ("qmi", self.qmi),
            ("rec", self.rec),
            ("cond_entropy", self.cond_entropy_a_given_b),
            ("entropy_b", self.entropy_b),
            ("pred_joint", self.pred_joint),
            ("pred_a", self.pred_a),
            ("coh_a", self.coh_a),
            ("ccr_sum", self.ccr_sum),
            ("s_q_given_b", self.s_q_given_b),
            ("s_r_given_b", self.s_r_given_b),
            ("eur_lhs", self.eur_lhs),
            ("eur_rhs", self.eur_rhs),
            ("intrinsic_lhs", self.intrinsic_lhs),
            ("intrinsic_rhs", self.intrinsic_rhs),
        ]
    }
}
